"""Radical-square-zero algebras and their bipartite quiver settings.

An algebra ``A`` with ``rad(A)^2 = 0`` is described by its Wedderburn block
sizes ``n_1..n_l`` and the bimodule ranks ``r[i][j]`` of ``e_i rad(A) e_j``.
The associated setting has vertices ``0_i`` and ``1_i`` of weight ``n_i``
and ``r[i][j]`` arrows ``1_j -> 0_i``; ``A`` has finitely many
``U(A) x U(A)``-orbits exactly when that setting is representation finite.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from .classifier import classify
from .core import DimVector, Quiver, QuiverSetting
from .errors import QuiverError
from .tits import Verdict


@dataclass(frozen=True)
class AlgebraSpec:
    block_sizes: tuple[int, ...]
    ranks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.block_sizes)
        ranks = tuple(tuple(int(r) for r in row) for row in self.ranks)
        object.__setattr__(self, "block_sizes", sizes)
        object.__setattr__(self, "ranks", ranks)
        if not sizes:
            raise QuiverError("an algebra needs at least one Wedderburn block")
        if any(n < 1 for n in sizes):
            raise QuiverError(f"block sizes must be positive: {sizes}")
        if len(ranks) != len(sizes) or any(len(row) != len(sizes) for row in ranks):
            raise QuiverError(f"rank matrix must be {len(sizes)}x{len(sizes)}")
        if any(r < 0 for row in ranks for r in row):
            raise QuiverError("ranks must be non-negative")

    @property
    def l(self) -> int:
        return len(self.block_sizes)


@dataclass(frozen=True)
class BipartiteSetting:
    """A setting split as targets ``Δ'`` and sources ``Δ''`` with a weight-preserving
    bijection ``delta: Δ'' -> Δ'``; every arrow runs from a source to a target."""

    setting: QuiverSetting
    delta: Mapping[str, str]

    def __post_init__(self):
        delta = dict(self.delta)
        object.__setattr__(self, "delta", delta)
        verts = set(self.setting.quiver.vertices)
        sources, targets = set(delta), set(delta.values())
        if len(targets) != len(delta):
            raise QuiverError("delta is not injective")
        if sources & targets or sources | targets != verts:
            raise QuiverError("delta must pair the vertex set into sources and targets")
        for s, t in self.setting.quiver.arrows:
            if s not in sources or t not in targets:
                raise QuiverError(f"arrow {s}->{t} does not run from a source to a target")
        w = self.setting.dim
        for y, x in delta.items():
            if w[x] != w[y]:
                raise QuiverError(f"weights of {y} and delta({y}) = {x} differ")

    def __hash__(self):
        return hash((self.setting, frozenset(self.delta.items())))

    @property
    def targets(self) -> tuple[str, ...]:
        tgt = set(self.delta.values())
        return tuple(v for v in self.setting.quiver.vertices if v in tgt)

    @property
    def sources(self) -> tuple[str, ...]:
        return tuple(v for v in self.setting.quiver.vertices if v in self.delta)


def algebra_to_setting(spec: AlgebraSpec) -> BipartiteSetting:
    l = spec.l
    targets = [f"0_{i + 1}" for i in range(l)]
    sources = [f"1_{i + 1}" for i in range(l)]
    arrows = []
    for i in range(l):
        for j in range(l):
            arrows += [(sources[j], targets[i])] * spec.ranks[i][j]
    quiver = Quiver(tuple(targets + sources), tuple(arrows))
    dim = DimVector(list(zip(targets, spec.block_sizes)) + list(zip(sources, spec.block_sizes)))
    return BipartiteSetting(QuiverSetting(quiver, dim), dict(zip(sources, targets)))


def spec_of_bipartite(bs: BipartiteSetting) -> AlgebraSpec:
    """Block sizes from target weights, ranks from arrow multiplicities."""
    targets = bs.targets
    pos = {x: i for i, x in enumerate(targets)}
    ranks = [[0] * len(targets) for _ in targets]
    for y, x in bs.setting.quiver.arrows:
        ranks[pos[x]][pos[bs.delta[y]]] += 1
    return AlgebraSpec(tuple(bs.setting.dim[x] for x in targets), tuple(map(tuple, ranks)))


def canonical_form(spec: AlgebraSpec) -> tuple:
    """Lexicographically least ``(sizes, ranks)`` over simultaneous block permutations."""
    l = spec.l
    best = None
    for perm in itertools.permutations(range(l)):
        key = (tuple(spec.block_sizes[p] for p in perm),
               tuple(tuple(spec.ranks[p][q] for q in perm) for p in perm))
        if best is None or key < best:
            best = key
    return best


def same_up_to_relabeling(a: BipartiteSetting, b: BipartiteSetting) -> bool:
    return canonical_form(spec_of_bipartite(a)) == canonical_form(spec_of_bipartite(b))


@dataclass(frozen=True)
class MultTable:
    """Structure constants ``table[i, j, k]`` of ``b_i * b_j = sum_k table[i, j, k] b_k``.

    ``radical`` lists the radical sub-basis, ``idempotents`` the block
    identities (as coefficient vectors), in target order.
    """

    labels: tuple[tuple, ...]
    table: np.ndarray = field(repr=False)
    radical: tuple[int, ...]
    idempotents: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def identity(self) -> np.ndarray:
        return sum(self.idempotents, np.zeros(self.dim, dtype=np.int64))

    def multiply(self, a, b) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(a), np.asarray(b), self.table)

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of ``x -> a * x`` acting on coefficient column vectors."""
        return np.einsum("i,ijk->kj", np.asarray(a), self.table)

    def right_matrix(self, a) -> np.ndarray:
        return np.einsum("j,ijk->ki", np.asarray(a), self.table)


def setting_to_algebra(bs: BipartiteSetting) -> MultTable:
    """The algebra ``prod M_w(x) x prod (M_{w(x) x w(y)})^{r_xy}`` with product

    ``(M, M_rad)(N, N_rad) = (M_x N_x, M_x N_{x,y,i} + M_{x,y,i} N_{delta(y)})``.
    """
    quiver, w = bs.setting.quiver, bs.setting.dim
    labels, lookup = [], {}
    for x in bs.targets:
        for a, b in itertools.product(range(w[x]), repeat=2):
            lookup["E", x, a, b] = len(labels)
            labels.append(("E", x, a, b))
    radical_start = len(labels)
    for k, (y, x) in enumerate(quiver.arrows):
        for a in range(w[x]):
            for b in range(w[y]):
                lookup["F", k, a, b] = len(labels)
                labels.append(("F", k, a, b))
    dim = len(labels)
    table = np.zeros((dim, dim, dim), dtype=np.int64)
    for x in bs.targets:
        n = w[x]
        for a, b, c in itertools.product(range(n), repeat=3):
            table[lookup["E", x, a, b], lookup["E", x, b, c], lookup["E", x, a, c]] = 1
    for k, (y, x) in enumerate(quiver.arrows):
        right = bs.delta[y]
        for a in range(w[x]):
            for c in range(w[y]):
                out = lookup["F", k, a, c]
                # M_x N_{x,y,k}
                for b in range(w[x]):
                    table[lookup["E", x, a, b], lookup["F", k, b, c], out] = 1
                # M_{x,y,k} N_{delta(y)}
                for b in range(w[y]):
                    table[lookup["F", k, a, b], lookup["E", right, b, c], out] = 1
    table.setflags(write=False)
    idempotents = []
    for x in bs.targets:
        e = np.zeros(dim, dtype=np.int64)
        for a in range(w[x]):
            e[lookup["E", x, a, a]] = 1
        idempotents.append(e)
    return MultTable(tuple(labels), table, tuple(range(radical_start, dim)), tuple(idempotents))


def _monomial_products(table):
    """``prod[i, j] = k`` when ``b_i b_j = b_k``, ``-1`` when zero; None if not monomial."""
    nonzero = table != 0
    counts = nonzero.sum(axis=2)
    if counts.max(initial=0) > 1 or np.any(table[nonzero] != 1):
        return None
    prod = np.where(counts == 1, nonzero.argmax(axis=2), -1)
    return prod


def is_associative(mt: MultTable) -> bool:
    """``(b_i b_j) b_k = b_i (b_j b_k)`` on every basis triple."""
    d = mt.dim
    prod = _monomial_products(mt.table)
    if prod is not None:
        # Index d stands for the zero product.
        ext = np.full((d + 1, d + 1), d, dtype=np.int64)
        ext[:d, :d] = np.where(prod < 0, d, prod)
        idx = np.arange(d + 1)
        left = ext[ext[:, :, None], idx[None, None, :]]
        right = ext[idx[:, None, None], ext[None, :, :]]
        return bool(np.array_equal(left, right))
    t = mt.table
    left = np.tensordot(t, t, axes=([2], [0]))            # (ij)k -> [i, j, k, n]
    right = np.einsum("jkm,imn->ijkn", t, t)               # i(jk)
    return bool(np.array_equal(left, right))


def radical_squares_to_zero(mt: MultTable) -> bool:
    rad = list(mt.radical)
    return not np.any(mt.table[np.ix_(rad, rad)])


def has_identity(mt: MultTable) -> bool:
    one = mt.identity
    eye = np.eye(mt.dim, dtype=np.int64)
    return (np.array_equal(np.einsum("i,ijk->jk", one, mt.table), eye)
            and np.array_equal(np.einsum("j,ijk->ik", one, mt.table), eye))


def _rank(matrix) -> int:
    if matrix.size == 0 or not np.any(matrix):
        return 0
    return int(np.linalg.matrix_rank(matrix.astype(float)))


def recover_spec(mt: MultTable) -> AlgebraSpec:
    """Read block sizes and bimodule ranks back off the multiplication table.

    ``n_i^2 = dim(e_i S e_i)`` for the semisimple sub-basis ``S`` and
    ``r_ij = dim(e_i rad e_j) / (n_i n_j)``.
    """
    es = mt.idempotents
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            expect = e if i == j else np.zeros_like(e)
            if not np.array_equal(mt.multiply(e, f), expect):
                raise QuiverError("block idempotents are not orthogonal idempotents")
    rad = list(mt.radical)
    semisimple = [k for k in range(mt.dim) if k not in set(rad)]
    left = [mt.left_matrix(e) for e in es]
    right = [mt.right_matrix(e) for e in es]
    sizes = []
    for i in range(len(es)):
        square = _rank((right[i] @ left[i])[:, semisimple])
        n = int(round(square ** 0.5))
        if n * n != square or n < 1:
            raise QuiverError(f"block of dimension {square} is not a full matrix algebra")
        sizes.append(n)
    ranks = []
    for i in range(len(es)):
        row = []
        for j in range(len(es)):
            span = _rank((right[j] @ left[i])[:, rad])
            r, rem = divmod(span, sizes[i] * sizes[j])
            if rem:
                raise QuiverError(f"e_{i} rad e_{j} has dimension {span}, not a multiple of "
                                  f"{sizes[i] * sizes[j]}")
            row.append(r)
        ranks.append(tuple(row))
    return AlgebraSpec(tuple(sizes), tuple(ranks))


def finitely_many_orbits(spec: AlgebraSpec, checked: bool = False) -> Verdict:
    return classify(algebra_to_setting(spec).setting, checked=checked)


def is_distributive(spec: AlgebraSpec) -> bool:
    """Ideal lattice distributive, i.e. every bimodule rank is at most one."""
    return all(r <= 1 for row in spec.ranks for r in row)


@dataclass(frozen=True)
class ConditionResult:
    passed: bool
    locations: tuple = ()


@dataclass(frozen=True)
class ConditionReport:
    c1: ConditionResult
    c2: ConditionResult
    c3: ConditionResult

    def failing(self) -> tuple[str, ...]:
        return tuple(name for name in ("c1", "c2", "c3") if not getattr(self, name).passed)

    def lines(self):
        for name in ("c1", "c2", "c3"):
            res = getattr(self, name)
            yield f"{name} {'PASS' if res.passed else 'FAIL'}"
            for loc in res.locations:
                yield f"  {name} at {loc}"


def _cycles(quiver: Quiver) -> list[str]:
    """Loops, parallel pairs, and one fundamental cycle per extra simple edge."""
    names = quiver.vertices
    found = [f"loop {names[i]}" for i, c in enumerate(quiver.loops) if c]
    found += [f"parallel {names[i]}-{names[j]}"
              for (i, j), arrows in sorted(quiver.edge_arrows.items()) if len(arrows) > 1]
    parent = list(range(len(quiver)))
    tree = {i: [] for i in range(len(quiver))}

    def find(i):
        while parent[i] != i:
            i = parent[i]
        return i

    for i, j in sorted(quiver.edge_arrows):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            tree[i].append(j)
            tree[j].append(i)
            continue
        prev, stack = {i: None}, [i]
        while stack:
            u = stack.pop()
            for w in tree[u]:
                if w not in prev:
                    prev[w] = u
                    stack.append(w)
        path = [j]
        while path[-1] != i:
            path.append(prev[path[-1]])
        found.append("cycle " + "-".join(names[v] for v in path))
    return found


def check_or_conditions(bs: BipartiteSetting | QuiverSetting) -> ConditionReport:
    """Evaluate the three sufficient conditions for finitely many orbits, literally.

    c1: no cycles in the underlying graph, where a loop or a pair of parallel
    arrows counts as a cycle.  c2: a vertex of weight >= 2 has at most three
    outgoing and at most three incoming arrows.  c3: for an arrow with both
    endpoint weights >= 2, arrows out of its source plus arrows into its
    target number at most 4.
    """
    setting = bs.setting if isinstance(bs, BipartiteSetting) else bs
    quiver, w = setting.quiver, setting.dim
    out = dict.fromkeys(quiver.vertices, 0)
    inc = dict.fromkeys(quiver.vertices, 0)
    for s, t in quiver.arrows:
        out[s] += 1
        inc[t] += 1
    cycles = _cycles(quiver)
    c2 = tuple(v for v in quiver.vertices if w[v] >= 2 and (out[v] > 3 or inc[v] > 3))
    c3 = tuple(f"arrow {k} {s}->{t}" for k, (s, t) in enumerate(quiver.arrows)
               if w[s] >= 2 and w[t] >= 2 and out[s] + inc[t] > 4)
    return ConditionReport(ConditionResult(not cycles, tuple(cycles)),
                    ConditionResult(not c2, c2), ConditionResult(not c3, c3))

"""Quivers, dimension vectors, settings and embeddings, plus the Tits form.

Vertices are opaque string tokens kept in declaration order; that order is
the canonical one everywhere (witness preference, enumeration, output).
Arrows are an ordered multiset of ``(source, target)`` pairs, so loops and
parallel arrows are just repeated entries.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionLimitError, QuiverError

DIM_LIMIT = 10**6


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        vertices = tuple(self.vertices)
        arrows = tuple((s, t) for s, t in self.arrows)
        if len(set(vertices)) != len(vertices):
            raise QuiverError(f"duplicate vertex identifiers in {vertices}")
        known = set(vertices)
        for s, t in arrows:
            if s not in known or t not in known:
                raise QuiverError(f"arrow {s}->{t} uses an undeclared vertex")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "arrows", arrows)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_pairs(self) -> tuple[tuple[int, int], ...]:
        """Arrows as ``(source index, target index)``."""
        idx = self.index
        return tuple((idx[s], idx[t]) for s, t in self.arrows)

    @cached_property
    def loops(self) -> tuple[int, ...]:
        """Number of loops at each vertex, by index."""
        counts = [0] * len(self.vertices)
        for s, t in self.arrow_pairs:
            if s == t:
                counts[s] += 1
        return tuple(counts)

    @cached_property
    def edge_arrows(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Non-loop arrows grouped by unordered endpoint pair ``(i, j)``, ``i < j``."""
        groups: dict[tuple[int, int], list[int]] = {}
        for k, (s, t) in enumerate(self.arrow_pairs):
            if s != t:
                groups.setdefault((min(s, t), max(s, t)), []).append(k)
        return {key: tuple(val) for key, val in groups.items()}

    @cached_property
    def neighbours(self) -> tuple[tuple[int, ...], ...]:
        """Distinct neighbours of each vertex in the underlying graph, loops excluded."""
        nbrs: list[set[int]] = [set() for _ in self.vertices]
        for i, j in self.edge_arrows:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return tuple(tuple(sorted(n)) for n in nbrs)

    @cached_property
    def bilinear_matrix(self) -> np.ndarray:
        """Integer Gram matrix ``B`` with ``(a, b) = a @ B @ b``."""
        n = len(self.vertices)
        gram = 2 * np.eye(n, dtype=np.int64)
        for s, t in self.arrow_pairs:
            gram[s, t] -= 1
            gram[t, s] -= 1
        gram.setflags(write=False)
        return gram

    def __len__(self):
        return len(self.vertices)

    def reverse_arrow(self, k: int) -> Quiver:
        arrows = list(self.arrows)
        s, t = arrows[k]
        arrows[k] = (t, s)
        return Quiver(self.vertices, tuple(arrows))

    def delete_arrow(self, k: int) -> Quiver:
        return Quiver(self.vertices, self.arrows[:k] + self.arrows[k + 1:])

    def relabel(self, mapping: Mapping[str, str]) -> Quiver:
        return Quiver(
            tuple(mapping[v] for v in self.vertices),
            tuple((mapping[s], mapping[t]) for s, t in self.arrows),
        )


class DimVector(Mapping):
    """Natural-number weight per vertex, immutable.

    Entries are bounded by ``limit`` (default :data:`DIM_LIMIT`) and an
    explicit :class:`DimensionLimitError` is raised instead of accepting
    a larger value.
    """

    __slots__ = ("_keys", "_vals", "_pos")

    def __init__(self, entries: Mapping[str, int] | Iterable[tuple[str, int]] = (),
                 limit: int | None = None):
        items = entries.items() if isinstance(entries, Mapping) else entries
        keys, vals = [], []
        bound = DIM_LIMIT if limit is None else limit
        for k, v in items:
            if isinstance(v, bool) or int(v) != v:
                raise QuiverError(f"dimension of {k!r} is not an integer: {v!r}")
            v = int(v)
            if v < 0:
                raise QuiverError(f"dimension of {k!r} is negative: {v}")
            if v > bound:
                raise DimensionLimitError(f"dimension of {k!r} is {v} > limit {bound}")
            keys.append(k)
            vals.append(v)
        self._keys = tuple(keys)
        self._vals = tuple(vals)
        self._pos = {k: i for i, k in enumerate(self._keys)}
        if len(self._pos) != len(self._keys):
            raise QuiverError("duplicate vertex in dimension vector")

    @classmethod
    def _trusted(cls, keys: tuple[str, ...], vals: tuple[int, ...],
                 pos: dict[str, int] | None = None) -> DimVector:
        """Skip validation; callers guarantee naturals within the limit."""
        self = object.__new__(cls)
        self._keys = keys
        self._vals = vals
        self._pos = pos if pos is not None else {k: i for i, k in enumerate(keys)}
        return self

    @classmethod
    def zero(cls, vertices: Iterable[str]) -> DimVector:
        return cls((v, 0) for v in vertices)

    @classmethod
    def constant(cls, vertices: Iterable[str], c: int) -> DimVector:
        return cls((v, c) for v in vertices)

    @classmethod
    def basis(cls, vertices: Iterable[str], x: str) -> DimVector:
        """The standard basis vector ``e_x``."""
        vec = cls((v, int(v == x)) for v in vertices)
        if x not in vec:
            raise QuiverError(f"unknown vertex {x!r}")
        return vec

    def __getitem__(self, key):
        return self._vals[self._pos[key]]

    def __iter__(self):
        return iter(self._keys)

    def __len__(self):
        return len(self._keys)

    def __hash__(self):
        return hash(frozenset(zip(self._keys, self._vals)))

    def __repr__(self):
        body = " ".join(f"{k}={v}" for k, v in zip(self._keys, self._vals))
        return f"DimVector({body})"

    @property
    def values_tuple(self) -> tuple[int, ...]:
        return self._vals

    def _check_same(self, other: Mapping[str, int]):
        if set(self._keys) != set(other):
            raise QuiverError("dimension vectors live on different vertex sets")

    def __le__(self, other):
        self._check_same(other)
        return all(v <= other[k] for k, v in zip(self._keys, self._vals))

    def __ge__(self, other):
        self._check_same(other)
        return all(v >= other[k] for k, v in zip(self._keys, self._vals))

    def __add__(self, other):
        self._check_same(other)
        return DimVector((k, v + other[k]) for k, v in zip(self._keys, self._vals))

    def __sub__(self, other):
        self._check_same(other)
        return DimVector((k, v - other[k]) for k, v in zip(self._keys, self._vals))

    def scale(self, m: int) -> DimVector:
        return DimVector((k, m * v) for k, v in zip(self._keys, self._vals))

    def is_zero(self) -> bool:
        return not any(self._vals)

    def is_sincere(self) -> bool:
        return all(self._vals)

    def support(self) -> tuple[str, ...]:
        return tuple(k for k, v in zip(self._keys, self._vals) if v)

    def reordered(self, order: Iterable[str]) -> DimVector:
        order = tuple(order)
        return DimVector._trusted(order, tuple(self[k] for k in order))


@dataclass(frozen=True)
class QuiverSetting:
    quiver: Quiver
    dim: DimVector

    def __post_init__(self):
        dim = self.dim if isinstance(self.dim, DimVector) else DimVector(self.dim)
        if dim._keys == self.quiver.vertices:
            return
        if set(dim) != set(self.quiver.vertices) or len(dim) != len(self.quiver):
            raise QuiverError("dimension vector must be defined on exactly the quiver's vertices")
        object.__setattr__(self, "dim", dim.reordered(self.quiver.vertices))

    @property
    def values(self) -> tuple[int, ...]:
        """Dimension entries in vertex declaration order."""
        return self.dim.values_tuple


@dataclass(frozen=True)
class Embedding:
    """Injective quiver morphism ``source -> target``.

    ``arrow_map[k]`` is the index in ``target.arrows`` of the image of
    ``source.arrows[k]``.
    """

    source: Quiver
    target: Quiver
    vertex_map: Mapping[str, str]
    arrow_map: tuple[int, ...]

    def __post_init__(self):
        vmap = dict(self.vertex_map)
        amap = tuple(self.arrow_map)
        object.__setattr__(self, "vertex_map", vmap)
        object.__setattr__(self, "arrow_map", amap)
        if set(vmap) != set(self.source.vertices):
            raise QuiverError("vertex map must be total on the source")
        if not set(vmap.values()) <= set(self.target.vertices):
            raise QuiverError("vertex map leaves the target")
        if len(set(vmap.values())) != len(vmap):
            raise QuiverError("vertex map is not injective")
        if len(amap) != len(self.source.arrows):
            raise QuiverError("arrow map must be total on the source")
        if len(set(amap)) != len(amap):
            raise QuiverError("arrow map is not injective")
        for (s, t), k in zip(self.source.arrows, amap):
            if not 0 <= k < len(self.target.arrows):
                raise QuiverError(f"arrow index {k} out of range")
            if self.target.arrows[k] != (vmap[s], vmap[t]):
                raise QuiverError(f"arrow {s}->{t} is not mapped compatibly")

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.vertex_map.items()), self.arrow_map))

    @classmethod
    def identity(cls, quiver: Quiver) -> Embedding:
        return cls(quiver, quiver, {v: v for v in quiver.vertices},
                   tuple(range(len(quiver.arrows))))


def _check_vector(quiver: Quiver, vec: Mapping[str, int]):
    if len(vec) != len(quiver) or set(vec) != set(quiver.vertices):
        raise QuiverError("vector is not defined on the quiver's vertex set")


def quadratic_form(quiver: Quiver, vec: Mapping[str, int]) -> int:
    """Tits form of an arbitrary integer vector (entries may be negative)."""
    _check_vector(quiver, vec)
    total = sum(int(vec[v]) ** 2 for v in quiver.vertices)
    for s, t in quiver.arrows:
        total -= int(vec[s]) * int(vec[t])
    return total


def tits_form(setting: QuiverSetting) -> int:
    """``q(d) = sum_x d(x)^2 - sum_arrows d(s)d(t)``."""
    return quadratic_form(setting.quiver, setting.dim)


def bilinear_form(quiver: Quiver, a: Mapping[str, int], b: Mapping[str, int]) -> int:
    """Symmetric form with ``(a, a) = 2 q(a)``."""
    _check_vector(quiver, a)
    _check_vector(quiver, b)
    total = 2 * sum(int(a[v]) * int(b[v]) for v in quiver.vertices)
    for s, t in quiver.arrows:
        total -= int(a[s]) * int(b[t]) + int(a[t]) * int(b[s])
    return total


def pairing_with_basis(quiver: Quiver, values, x: int) -> int:
    """``(d, e_x)`` for a value tuple ``d`` in declaration order; ``x`` is an index."""
    total = 2 * values[x]
    for s, t in quiver.arrow_pairs:
        if s == x:
            total -= values[t]
        if t == x:
            total -= values[s]
    return total


def quadratic_values(quiver: Quiver, values) -> int:
    """Tits form of a value tuple in declaration order."""
    total = sum(v * v for v in values)
    for s, t in quiver.arrow_pairs:
        total -= values[s] * values[t]
    return total


def restrict(setting: QuiverSetting, keep: Iterable[str]) -> QuiverSetting:
    """Induced subsetting on ``keep``; vertex order follows the original quiver."""
    keep = set(keep)
    quiver = setting.quiver
    if not keep <= set(quiver.vertices):
        raise QuiverError(f"cannot keep unknown vertices {sorted(keep - set(quiver.vertices))}")
    vertices = tuple(v for v in quiver.vertices if v in keep)
    arrows = tuple((s, t) for s, t in quiver.arrows if s in keep and t in keep)
    return QuiverSetting(Quiver(vertices, arrows),
                         DimVector((v, setting.dim[v]) for v in vertices))


def induced_arrow_indices(quiver: Quiver, keep: Iterable[str]) -> tuple[int, ...]:
    keep = set(keep)
    return tuple(k for k, (s, t) in enumerate(quiver.arrows) if s in keep and t in keep)


def index_components(quiver: Quiver, keep=None) -> list[list[int]]:
    """Components of the subquiver induced on the index set ``keep`` (default: all)."""
    n = len(quiver)
    inside = [True] * n if keep is None else [False] * n
    if keep is not None:
        for i in keep:
            inside[i] = True
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s, t in quiver.arrow_pairs:
        if inside[s] and inside[t]:
            rs, rt = find(s), find(t)
            if rs != rt:
                parent[max(rs, rt)] = min(rs, rt)
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        if inside[i]:
            blocks.setdefault(find(i), []).append(i)
    return list(blocks.values())


def components(quiver: Quiver) -> list[tuple[str, ...]]:
    """Connected components (arrow direction ignored), in declaration order."""
    names = quiver.vertices
    return [tuple(names[i] for i in block) for block in index_components(quiver)]


def is_connected(quiver: Quiver) -> bool:
    return len(components(quiver)) == 1


def normalize(setting: QuiverSetting) -> QuiverSetting:
    """Drop vertices of dimension 0 together with their arrows."""
    return restrict(setting, setting.dim.support())


def pushforward(emb: Embedding, d: Mapping[str, int]) -> DimVector:
    _check_vector(emb.source, d)
    out = dict.fromkeys(emb.target.vertices, 0)
    for x, y in emb.vertex_map.items():
        out[y] += d[x]
    return DimVector(out)


def pullback(emb: Embedding, d: Mapping[str, int]) -> DimVector:
    _check_vector(emb.target, d)
    return DimVector((x, d[emb.vertex_map[x]]) for x in emb.source.vertices)

"""Euclidean (extended Dynkin) diagrams, radical vectors and witness search."""

from __future__ import annotations

import itertools
import math
from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache

from .core import (DimVector, Embedding, Quiver, QuiverSetting, bilinear_form, is_connected,
                   pullback, pushforward, quadratic_form)
from .errors import Counter, QuiverError, resolve_budget

DEFAULT_BUDGET = 10**7

# E-type radical vectors: center value, then arm values outward from the
# center, arms sorted by length.
E_TABLE = {
    6: (3, ((2, 1), (2, 1), (2, 1))),
    7: (4, ((2,), (3, 2, 1), (3, 2, 1))),
    8: (6, ((3,), (4, 2), (5, 4, 3, 2, 1))),
}
_E_BY_ARMS = {tuple(len(a) for a in arms): n for n, (_, arms) in E_TABLE.items()}
_FAMILY_RANK = {"A": 0, "D": 1, "E": 2}


@dataclass(frozen=True, order=True)
class EuclideanType:
    family: str
    n: int

    def __post_init__(self):
        if self.family == "A":
            ok = self.n >= 0
        elif self.family == "D":
            ok = self.n >= 4
        elif self.family == "E":
            ok = self.n in (6, 7, 8)
        else:
            ok = False
        if not ok:
            raise QuiverError(f"no Euclidean type {self.family}~{self.n}")

    def __str__(self):
        return f"{self.family}~{self.n}"

    @classmethod
    def parse(cls, text: str) -> EuclideanType:
        family, sep, n = text.partition("~")
        if not sep or not n.isdigit():
            raise QuiverError(f"bad Euclidean type {text!r}")
        return cls(family, int(n))

    @property
    def num_vertices(self) -> int:
        return self.n + 1

    @property
    def rank(self) -> tuple[int, int]:
        return (_FAMILY_RANK[self.family], self.n)


def position_value(t: EuclideanType, position: str) -> int:
    """Radical-vector entry at a named pattern position."""
    if t.family == "A":
        return 1
    if t.family == "D":
        return 1 if position.startswith("l") else 2
    center, arms = E_TABLE[t.n]
    if position == "c":
        return center
    arm, _, step = position[1:].partition("_")
    return arms[int(arm) - 1][int(step) - 1]


def euclidean_layout(quiver: Quiver) -> tuple[EuclideanType, dict[str, str]] | None:
    """Recognize the underlying graph and name every vertex by its pattern position.

    Positions: ``c0..cn`` around an A-cycle; ``s1..sk`` on the D-spine with
    leaves ``l1, l2`` at ``s1`` and ``l3, l4`` at ``sk``; ``c`` and
    ``a<arm>_<step>`` for E-types, arms sorted by length.
    """
    n = len(quiver)
    if n == 0 or not is_connected(quiver):
        return None
    names = quiver.vertices
    loops = quiver.loops
    if n == 1:
        if len(quiver.arrows) == 1 and loops[0] == 1:
            return EuclideanType("A", 0), {names[0]: "c0"}
        return None
    if any(loops):
        return None
    if n == 2:
        if len(quiver.arrows) == 2:
            return EuclideanType("A", 1), {names[0]: "c0", names[1]: "c1"}
        return None
    edges = quiver.edge_arrows
    if any(len(a) > 1 for a in edges.values()):
        return None
    nbrs = quiver.neighbours
    deg = [len(x) for x in nbrs]
    if len(edges) == n:
        if any(d != 2 for d in deg):
            return None
        cycle = [0, min(nbrs[0])]
        while len(cycle) < n:
            prev, cur = cycle[-2], cycle[-1]
            cycle.append(next(x for x in nbrs[cur] if x != prev))
        return EuclideanType("A", n - 1), {names[v]: f"c{k}" for k, v in enumerate(cycle)}
    if len(edges) != n - 1 or max(deg) > 4:
        return None
    branch = [i for i in range(n) if deg[i] >= 3]
    if len(branch) == 1 and deg[branch[0]] == 4:
        if n != 5:
            return None
        c = branch[0]
        pos = {names[c]: "s1"}
        pos.update({names[x]: f"l{k + 1}" for k, x in enumerate(nbrs[c])})
        return EuclideanType("D", 4), pos
    if len(branch) == 2:
        ends = []
        for b in branch:
            leaves = [x for x in nbrs[b] if deg[x] == 1]
            if len(leaves) != 2:
                return None
            ends.append(leaves)
        first, last = branch
        spine = _tree_path(nbrs, first, last)
        pos = {names[v]: f"s{k + 1}" for k, v in enumerate(spine)}
        for k, x in enumerate(ends[0] + ends[1]):
            pos[names[x]] = f"l{k + 1}"
        return EuclideanType("D", n - 1), pos
    if len(branch) == 1:
        c = branch[0]
        arms = []
        for start in nbrs[c]:
            arm, prev = [start], c
            while deg[arm[-1]] == 2:
                nxt = next(x for x in nbrs[arm[-1]] if x != prev)
                prev = arm[-1]
                arm.append(nxt)
            arms.append(arm)
        arms.sort(key=lambda a: (len(a), a[0]))
        e = _E_BY_ARMS.get(tuple(len(a) for a in arms))
        if e is None:
            return None
        pos = {names[c]: "c"}
        for k, arm in enumerate(arms):
            for j, v in enumerate(arm):
                pos[names[v]] = f"a{k + 1}_{j + 1}"
        return EuclideanType("E", e), pos
    return None


def _tree_path(nbrs, a, b):
    prev = {a: None}
    queue = deque([a])
    while queue:
        u = queue.popleft()
        for w in nbrs[u]:
            if w not in prev:
                prev[w] = u
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return path[::-1]


def recognize_euclidean(quiver: Quiver) -> EuclideanType | None:
    """Type of ``quiver`` if its whole underlying multigraph is Euclidean."""
    layout = euclidean_layout(quiver)
    return None if layout is None else layout[0]


def radical_vector(t: EuclideanType, shape: Quiver) -> DimVector:
    layout = euclidean_layout(shape)
    if layout is None or layout[0] != t:
        found = "not Euclidean" if layout is None else str(layout[0])
        raise QuiverError(f"quiver is {found}, expected {t}")
    pos = layout[1]
    return DimVector((v, position_value(t, pos[v])) for v in shape.vertices)


@dataclass(frozen=True)
class EuclideanWitness:
    """An embedded Euclidean subquiver whose radical vector fits under ``d``.

    ``multiplier`` is a positive integer ``m`` with ``m * radical`` still
    below the ambient dimension vector.
    """

    type: EuclideanType
    embedding: Embedding
    radical: DimVector
    positions: Mapping[str, str] = field(compare=False)
    multiplier: int = 1

    kind = "euclidean"

    @property
    def subquiver(self) -> Quiver:
        return self.embedding.source

    def __hash__(self):
        return hash((self.type, self.embedding, self.radical, self.multiplier))


@dataclass(frozen=True)
class SubrootWitness:
    vector: DimVector
    q: int

    kind = "subroot"


def verify_witness(setting: QuiverSetting, witness) -> list[str]:
    """Re-check a witness against raw setting data; returns the list of failures."""
    problems = []
    if isinstance(witness, SubrootWitness):
        vec = witness.vector
        if set(vec) != set(setting.quiver.vertices):
            return ["subroot is not defined on the ambient vertices"]
        if vec.is_zero():
            problems.append("subroot is zero")
        if not vec <= setting.dim:
            problems.append("subroot exceeds the dimension vector")
        q = quadratic_form(setting.quiver, vec)
        if q != witness.q:
            problems.append(f"recorded q={witness.q} but q={q}")
        if q > 0:
            problems.append(f"q={q} > 0")
        return problems
    emb = witness.embedding
    if emb.target != setting.quiver:
        return ["embedding does not land in the ambient quiver"]
    sub = emb.source
    h = witness.radical
    if set(h) != set(sub.vertices):
        return ["radical is not defined on the subquiver"]
    if recognize_euclidean(sub) != witness.type:
        problems.append(f"subquiver is not of type {witness.type}")
    if quadratic_form(sub, h) != 0:
        problems.append("q(radical) != 0")
    if any(bilinear_form(sub, h, DimVector.basis(sub.vertices, x)) for x in sub.vertices):
        problems.append("radical is not in the radical of the form")
    if not h.is_sincere() or math.gcd(*h.values()) != 1:
        problems.append("radical is not a primitive sincere vector")
    if witness.multiplier < 1:
        problems.append("multiplier must be positive")
    if not pushforward(emb, h.scale(witness.multiplier)) <= setting.dim:
        problems.append("multiplier * radical exceeds the dimension vector")
    if not h <= pullback(emb, setting.dim):
        problems.append("radical exceeds the pulled-back dimension vector")
    for v, pos in (witness.positions or {}).items():
        try:
            expected = position_value(witness.type, pos)
        except (KeyError, ValueError, IndexError):
            expected = None
        if v not in h or expected != h[v]:
            problems.append(f"position {pos!r} of {v} does not carry h={h.get(v)}")
    return problems


@lru_cache(maxsize=4096)
def _embedded_shape(amb: Quiver, vertex_idx: tuple[int, ...], arrow_idx: tuple[int, ...]):
    names = tuple(amb.vertices[i] for i in vertex_idx)
    sub = Quiver(names, tuple(amb.arrows[k] for k in arrow_idx))
    layout = euclidean_layout(sub)
    if layout is None:
        return None
    t, pos = layout
    radical = DimVector((v, position_value(t, pos[v])) for v in names)
    emb = Embedding(sub, amb, {v: v for v in names}, arrow_idx)
    return t, emb, radical, pos


def build_witness(setting: QuiverSetting, vertex_idx, arrow_idx,
                  expected: EuclideanType | None = None, multiplier: int | None = None
                  ) -> EuclideanWitness:
    """Witness for the subquiver of ``setting`` on the given vertex and arrow indices."""
    shape = _embedded_shape(setting.quiver, tuple(sorted(vertex_idx)), tuple(sorted(arrow_idx)))
    if shape is None or (expected is not None and shape[0] != expected):
        raise AssertionError(f"witness candidate {vertex_idx} is not of type {expected}")
    t, emb, radical, pos = shape
    if multiplier is None:
        multiplier = min(setting.dim[v] // radical[v] for v in radical)
    return EuclideanWitness(t, emb, radical, dict(pos), multiplier)


class _Search:
    """Index-level view of a setting used by the witness search."""

    def __init__(self, setting, budget):
        q = setting.quiver
        self.setting = setting
        self.vals = setting.values
        self.ticks = Counter("euclidean witness search", budget)
        self.edges = q.edge_arrows
        self.s1 = [i for i, v in enumerate(self.vals) if v >= 1]
        in1 = set(self.s1)
        self.adj1 = {i: [j for j in q.neighbours[i] if j in in1] for i in self.s1}

    def edge(self, i, j):
        return self.edges[(min(i, j), max(i, j))][0]

    def loop_witness(self):
        loops = self.setting.quiver.loops
        for i in self.s1:
            if loops[i]:
                k = next(k for k, (s, t) in enumerate(self.setting.quiver.arrow_pairs)
                         if s == t == i)
                return [i], [k], EuclideanType("A", 0)
        return None

    def double_witness(self):
        vals = self.vals
        for (i, j), arrows in sorted(self.edges.items()):
            if len(arrows) >= 2 and vals[i] >= 1 and vals[j] >= 1:
                return [i, j], list(arrows[:2]), EuclideanType("A", 1)
        return None

    def girth(self):
        best = None
        for root in self.s1:
            dist, parent = {root: 0}, {root: None}
            queue = deque([root])
            while queue:
                u = queue.popleft()
                self.ticks.tick()
                for w in self.adj1[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        queue.append(w)
                    elif parent[u] != w:
                        length = dist[u] + dist[w] + 1
                        if best is None or length < best:
                            best = length
        return best

    def cycle_witness(self):
        g = self.girth()
        if g is None:
            return None
        best = None
        for root in self.s1:
            path = [root]

            def extend():
                nonlocal best
                self.ticks.tick()
                u = path[-1]
                for w in self.adj1[u]:
                    if w == root and len(path) == g and path[1] < path[-1]:
                        key = (tuple(sorted(path)), tuple(path))
                        if best is None or key < best:
                            best = key
                    elif w > root and w not in path and len(path) < g:
                        path.append(w)
                        extend()
                        path.pop()

            extend()
        if best is None:
            return None
        cycle = list(best[1])
        arrows = [self.edge(cycle[k], cycle[(k + 1) % g]) for k in range(g)]
        return cycle, arrows, EuclideanType("A", g - 1)

    def simple_paths(self, allowed, k):
        """Simple paths on ``k`` vertices inside ``allowed``, each reported once."""
        for start in sorted(allowed):
            path = [start]

            def walk():
                self.ticks.tick()
                if len(path) == k:
                    if k == 1 or path[0] < path[-1]:
                        yield list(path)
                    return
                for w in self.adj1[path[-1]]:
                    if w in allowed and w not in path:
                        path.append(w)
                        yield from walk()
                        path.pop()

            yield from walk()

    def d_witness(self):
        s2 = {i for i in self.s1 if self.vals[i] >= 2}
        for k in range(1, len(s2) + 1):
            best = None
            for spine in self.simple_paths(s2, k):
                on_spine = set(spine)
                head = [x for x in self.adj1[spine[0]] if x not in on_spine]
                tail = [x for x in self.adj1[spine[-1]] if x not in on_spine]
                if k == 1:
                    choices = ((c, ()) for c in itertools.combinations(head, 4))
                else:
                    choices = ((a, b) for a in itertools.combinations(head, 2)
                               for b in itertools.combinations(tail, 2)
                               if not set(a) & set(b))
                for a, b in choices:
                    self.ticks.tick()
                    verts = spine + list(a) + list(b)
                    key = (tuple(sorted(verts)), tuple(spine), a, b)
                    if best is None or key < best:
                        best = key
            if best is not None:
                _, spine, a, b = best
                spine = list(spine)
                arrows = [self.edge(spine[j], spine[j + 1]) for j in range(len(spine) - 1)]
                arrows += [self.edge(spine[0], x) for x in a]
                arrows += [self.edge(spine[-1], x) for x in b]
                return spine + list(a) + list(b), arrows, EuclideanType("D", k + 3)
        return None

    def e_witness(self, n):
        center_need, arms = E_TABLE[n]
        vals = self.vals
        best = None
        for c in self.s1:
            if vals[c] < center_need or len(self.adj1[c]) < 3:
                continue
            used = {c}
            chosen = []

            def arm_paths(start_from, need):
                """Paths leaving ``start_from`` meeting the lower bounds ``need``."""
                path = []

                def walk(u):
                    self.ticks.tick()
                    if len(path) == len(need):
                        yield list(path)
                        return
                    for w in self.adj1[u]:
                        if w not in used and w not in path and vals[w] >= need[len(path)]:
                            path.append(w)
                            yield from walk(w)
                            path.pop()

                yield from walk(start_from)

            def assign(a):
                nonlocal best
                if a == len(arms):
                    verts = [c] + [v for arm in chosen for v in arm]
                    key = (tuple(sorted(verts)), c, tuple(map(tuple, chosen)))
                    if best is None or key < best[0]:
                        best = (key, c, [list(x) for x in chosen])
                    return
                for p in arm_paths(c, arms[a]):
                    used.update(p)
                    chosen.append(p)
                    assign(a + 1)
                    chosen.pop()
                    used.difference_update(p)

            assign(0)
        if best is None:
            return None
        _, c, chosen = best
        verts, arrows = [c], []
        for arm in chosen:
            prev = c
            for v in arm:
                verts.append(v)
                arrows.append(self.edge(prev, v))
                prev = v
        return verts, arrows, EuclideanType("E", n)


def find_euclidean_witness(setting: QuiverSetting, budget: int | None = None
                           ) -> EuclideanWitness | None:
    """Embedded Euclidean subquiver ``Q'`` with ``h_{Q'} <= d`` on its vertices, if any.

    Subquivers need not be induced. Preference: A before D before E, then
    smaller types, then the lexicographically smallest sorted vertex list.
    """
    search = _Search(setting, resolve_budget(budget, DEFAULT_BUDGET))
    stages = (search.loop_witness, search.double_witness, search.cycle_witness,
              search.d_witness, lambda: search.e_witness(6),
              lambda: search.e_witness(7), lambda: search.e_witness(8))
    for stage in stages:
        found = stage()
        if found is not None:
            verts, arrows, t = found
            return build_witness(setting, verts, arrows, expected=t)
    return None

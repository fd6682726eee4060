"""Subroot search for the Tits form and reduction of a subroot to a radical vector.

A subroot of ``(Q, d)`` is a nonzero ``d' <= d`` with ``q(d') <= 0``; one
exists exactly when the setting is representation infinite.  Because every
radical vector of a Euclidean diagram has entries at most 6, searching
``d' <= min(d, 6)`` loses nothing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

import numpy as np

from .core import (DimVector, QuiverSetting, index_components, pairing_with_basis,
                   quadratic_values, restrict)
from .euclid import EuclideanWitness, SubrootWitness, build_witness, euclidean_layout
from .errors import Counter, QuiverError, resolve_budget

SUBROOT_CAP = 6
DEFAULT_BUDGET = 10**8

# Largest trailing block of coordinates evaluated as one numpy batch.
_BATCH_ROWS = 1 << 16


@dataclass(frozen=True)
class Verdict:
    """Outcome of a classification: finite, or infinite with a witness."""

    infinite: bool
    witness: EuclideanWitness | None = None
    subroot: SubrootWitness | None = None

    @property
    def finite(self) -> bool:
        return not self.infinite

    def __str__(self):
        return "INFINITE" if self.infinite else "FINITE"


FINITE = Verdict(False)


def _connected_subsets(quiver, allowed):
    """Connected vertex subsets of ``allowed`` by size, then lexicographically."""
    nbrs = quiver.neighbours
    allowed = sorted(allowed)
    for size in range(1, len(allowed) + 1):
        for combo in itertools.combinations(allowed, size):
            members = set(combo)
            seen, stack = {combo[0]}, [combo[0]]
            while stack:
                u = stack.pop()
                for w in nbrs[u]:
                    if w in members and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == size:
                yield combo


def _first_nonpositive(gram, ranges, ticks):
    """Lexicographically first sincere vector with entries ``1..ranges[i]`` and
    ``v @ gram @ v <= 0``, or None."""
    k = len(ranges)
    total = 1
    for r in ranges:
        total *= r
    if total <= 64:
        for vec in itertools.product(*(range(1, r + 1) for r in ranges)):
            ticks.tick()
            twice_q = 0
            for i in range(k):
                row = gram[i]
                acc = 0
                for j in range(k):
                    acc += row[j] * vec[j]
                twice_q += acc * vec[i]
            if twice_q <= 0:
                return vec
        return None
    # Split into a python-iterated prefix and a numpy-evaluated suffix.
    split, rows = k, 1
    while split > 0 and rows * ranges[split - 1] <= _BATCH_ROWS:
        split -= 1
        rows *= ranges[split]
    pre, suf = ranges[:split], ranges[split:]
    grid = np.indices(suf, dtype=np.int64).reshape(len(suf), -1).T + 1
    g = np.asarray(gram, dtype=np.int64)
    g_ss, g_ps = g[split:, split:], g[:split, split:]
    suf_part = np.einsum("ij,jk,ik->i", grid, g_ss, grid)
    for head in itertools.product(*(range(1, r + 1) for r in pre)):
        ticks.tick(len(grid))
        h = np.array(head, dtype=np.int64)
        head_q = int(h @ g[:split, :split] @ h) if split else 0
        vals = suf_part + 2 * (grid @ (h @ g_ps)) + head_q
        hits = np.flatnonzero(vals <= 0)
        if hits.size:
            return tuple(head) + tuple(int(x) for x in grid[hits[0]])
    return None


def find_subroot(setting: QuiverSetting, cap: int = SUBROOT_CAP, budget: int | None = None
                 ) -> DimVector | None:
    """Some nonzero ``d' <= min(d, cap)`` with ``q(d') <= 0``, or None if none exists.

    Candidates are sincere on a connected vertex subset; subsets are tried by
    size then lexicographically (declaration order), vectors lexicographically.
    """
    ticks = Counter("subroot search", resolve_budget(budget, DEFAULT_BUDGET))
    quiver = setting.quiver
    vals = setting.values
    gram = quiver.bilinear_matrix.tolist()
    support = [i for i, v in enumerate(vals) if v > 0]
    for subset in _connected_subsets(quiver, support):
        ticks.tick()
        sub_gram = [[gram[i][j] for j in subset] for i in subset]
        ranges = [min(vals[i], cap) for i in subset]
        hit = _first_nonpositive(sub_gram, ranges, ticks)
        if hit is not None:
            entries = [0] * len(vals)
            for i, v in zip(subset, hit):
                entries[i] = int(v)
            return DimVector._trusted(quiver.vertices, tuple(entries), quiver.index)
    return None


def _pick_component(quiver, values, support):
    """Index list of the nonpositive-q support component holding the earliest vertex."""
    for idx in index_components(quiver, support):
        members = set(idx)
        part = [values[i] if i in members else 0 for i in range(len(values))]
        if quadratic_values(quiver, part) <= 0:
            return idx
    raise AssertionError("no component with q <= 0; additivity of q violated")


def reduce_to_radical(setting: QuiverSetting, trace: list | None = None
                      ) -> tuple[EuclideanWitness, int]:
    """Shrink a subroot to ``m * h`` on an embedded Euclidean subquiver.

    Repeatedly subtracts ``e_x`` while ``(d, e_x) >= q(d) + 1``, which keeps
    ``q <= 0``.  At the fixed point ``d`` is sincere on a connected support
    with ``(d, e_x) = 0`` for all ``x``, so the support is Euclidean and
    ``d`` a multiple of its radical vector.  If ``trace`` is given, each
    intermediate value tuple is appended to it.
    """
    quiver = setting.quiver
    vals = list(setting.values)
    if not any(vals):
        raise QuiverError("reduction needs a nonzero dimension vector")
    if quadratic_values(quiver, vals) > 0:
        raise QuiverError("reduction needs q(d) <= 0")
    n = len(vals)
    comp = _pick_component(quiver, vals, [i for i in range(n) if vals[i]])
    vals = [vals[i] if i in comp else 0 for i in range(n)]

    loops = quiver.loops
    for i in comp:
        if loops[i]:
            k = next(k for k, (s, t) in enumerate(quiver.arrow_pairs) if s == t == i)
            witness = build_witness(setting, [i], [k])
            return witness, witness.multiplier
    members = set(comp)
    for (i, j), arrows in sorted(quiver.edge_arrows.items()):
        if len(arrows) >= 2 and i in members and j in members:
            witness = build_witness(setting, [i, j], arrows[:2])
            return witness, witness.multiplier

    if trace is not None:
        trace.append(tuple(vals))
    while True:
        q = quadratic_values(quiver, vals)
        assert q <= 0, f"loop invariant broken: q={q}"
        x = next((i for i in comp if pairing_with_basis(quiver, vals, i) >= q + 1), None)
        if x is None:
            break
        before = sum(vals)
        vals[x] -= 1
        assert 0 < sum(vals) < before
        if vals[x] == 0:
            comp = _pick_component(quiver, vals, [i for i in comp if vals[i]])
            vals = [vals[i] if i in comp else 0 for i in range(n)]
        if trace is not None:
            trace.append(tuple(vals))

    if quadratic_values(quiver, vals) != 0:
        raise AssertionError(f"reduction ended with q != 0 at {vals}")
    if any(pairing_with_basis(quiver, vals, i) for i in comp):
        raise AssertionError(f"reduction ended outside the radical at {vals}")
    final = set(comp)
    names = [quiver.vertices[i] for i in comp]
    induced = [k for k, (s, t) in enumerate(quiver.arrow_pairs) if s in final and t in final]
    layout = euclidean_layout(restrict(setting, names).quiver)
    if layout is None:
        raise AssertionError(f"support {names} of the reduced vector is not Euclidean")
    witness = build_witness(setting, comp, induced, expected=layout[0], multiplier=1)
    m = vals[comp[0]] // witness.radical[names[0]]
    if m < 1 or any(vals[quiver.index[v]] != m * witness.radical[v] for v in names):
        raise AssertionError(f"reduced vector {vals} is not a multiple of the radical vector")
    return replace(witness, multiplier=m), m


def decide_by_tits(setting: QuiverSetting, budget: int | None = None) -> Verdict:
    """Finite iff no subroot exists; otherwise reduce the subroot to a Euclidean witness."""
    sub = find_subroot(setting, budget=budget)
    if sub is None:
        return FINITE
    witness, _ = reduce_to_radical(QuiverSetting(setting.quiver, sub))
    q = quadratic_values(setting.quiver, sub.values_tuple)
    return Verdict(True, witness, SubrootWitness(sub, q))

"""Brute-force orbit counts of ``prod GL_d(x)(F_p)`` on representation spaces.

Points of ``rep_Q(d)`` over ``F_p`` are encoded as integers in base ``p``
(matrix entries of each arrow, row-major, arrows in order).  Each group
generator induces a permutation of all points; orbits are the connected
components of the union of those permutations.
"""

from __future__ import annotations

import enum

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import QuiverSetting
from .errors import QuiverError, SearchBudgetExceeded, resolve_budget

DEFAULT_BUDGET = 10**6
DEFAULT_PRIMES = (2, 3, 5)


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def primitive_root(p: int) -> int:
    factors = [f for f in range(2, p) if (p - 1) % f == 0 and is_prime(f)]
    for g in range(1, p):
        if all(pow(g, (p - 1) // f, p) != 1 for f in factors):
            return g
    raise QuiverError(f"no primitive root modulo {p}")


def gl_order(n: int, p: int) -> int:
    order = 1
    for i in range(n):
        order *= p**n - p**i
    return order


def gl_generators(n: int, p: int) -> list[np.ndarray]:
    """A generating set of ``GL_n(F_p)``: a primitive-root scaling, a transposition,
    an ``n``-cycle and one elementary transvection."""
    if n == 0:
        return []
    scale = np.eye(n, dtype=np.int64)
    scale[0, 0] = primitive_root(p)
    if n == 1:
        return [scale]
    swap = np.eye(n, dtype=np.int64)[[1, 0] + list(range(2, n))]
    cycle = np.roll(np.eye(n, dtype=np.int64), 1, axis=0)
    transvection = np.eye(n, dtype=np.int64)
    transvection[0, 1] = 1
    return [scale, swap, cycle, transvection]


def inverse_mod(m: np.ndarray, p: int) -> np.ndarray:
    """Gauss-Jordan inverse over ``F_p``."""
    n = len(m)
    aug = np.concatenate([m % p, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r, col] % p), None)
        if pivot is None:
            raise QuiverError("matrix is singular")
        aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), -1, p) % p
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, n:]


class _RepSpace:
    def __init__(self, setting: QuiverSetting, p: int):
        quiver = setting.quiver
        vals = setting.values
        self.p = p
        self.shapes = []  # (source, target, rows, cols, offset)
        offset = 0
        for s, t in quiver.arrow_pairs:
            rows, cols = vals[t], vals[s]
            self.shapes.append((s, t, rows, cols, offset))
            offset += rows * cols
        self.width = offset
        self.size = p**offset

    def decode(self) -> np.ndarray:
        idx = np.arange(self.size, dtype=np.int64)
        digits = np.empty((self.size, self.width), dtype=np.int64)
        for pos in range(self.width - 1, -1, -1):
            digits[:, pos] = idx % self.p
            idx //= self.p
        return digits

    def encode(self, digits: np.ndarray) -> np.ndarray:
        code = np.zeros(len(digits), dtype=np.int64)
        for pos in range(self.width):
            code = code * self.p + digits[:, pos]
        return code

    def act(self, digits, vertex, g, g_inv) -> np.ndarray:
        """Permutation of point codes induced by ``g`` at ``vertex``."""
        out = digits.copy()
        for s, t, rows, cols, off in self.shapes:
            if vertex not in (s, t) or rows * cols == 0:
                continue
            block = digits[:, off:off + rows * cols].reshape(-1, rows, cols)
            if t == vertex:
                block = np.einsum("ab,nbc->nac", g, block) % self.p
            if s == vertex:
                block = np.einsum("nab,bc->nac", block, g_inv) % self.p
            out[:, off:off + rows * cols] = block.reshape(len(digits), -1)
        return self.encode(out)


def orbit_sizes(setting: QuiverSetting, p: int, budget: int | None = None) -> np.ndarray:
    """Sizes of all ``GL(d)``-orbits on ``rep_Q(d)`` over ``F_p``, ascending."""
    if not is_prime(p):
        raise QuiverError(f"{p} is not prime")
    budget = resolve_budget(budget, DEFAULT_BUDGET)
    space = _RepSpace(setting, p)
    if space.size > budget:
        raise SearchBudgetExceeded(f"representation space of {space.size} points", budget)
    # Factors at vertices without arrows act trivially and are left out.
    acting = {v for s, t, r, c, _ in space.shapes if r * c for v in (s, t)}
    group = 1
    for v in acting:
        group *= gl_order(setting.values[v], p)
    if group > budget:
        raise SearchBudgetExceeded(f"group of order {group}", budget)
    digits = space.decode()
    sources, targets = [], []
    for vertex in sorted(acting):
        n = setting.values[vertex]
        for g in gl_generators(n, p):
            sources.append(np.arange(space.size, dtype=np.int64))
            targets.append(space.act(digits, vertex, g, inverse_mod(g, p)))
    if sources:
        rows, cols = np.concatenate(sources), np.concatenate(targets)
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                           shape=(space.size, space.size))
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = np.arange(space.size)
    sizes = np.sort(np.bincount(labels))
    sizes = sizes[sizes > 0]
    if int(sizes.sum()) != space.size:
        raise AssertionError("orbit sizes do not add up to the number of points")
    if any(group % int(s) for s in sizes):
        raise AssertionError("an orbit size does not divide the group order")
    return sizes


def count_orbits(setting: QuiverSetting, p: int, budget: int | None = None) -> int:
    return len(orbit_sizes(setting, p, budget))


class Growth(enum.Enum):
    CONSTANT = "ConstantAcrossFields"
    GROWING = "StrictlyGrowing"
    INCONCLUSIVE = "Inconclusive"


def growth_signal(setting: QuiverSetting, primes=DEFAULT_PRIMES, budget: int | None = None
                  ) -> tuple[Growth, tuple[int, ...]]:
    """Compare orbit counts across prime fields; returns the signal and the counts."""
    counts = tuple(count_orbits(setting, p, budget) for p in primes)
    if len(set(counts)) == 1:
        return Growth.CONSTANT, counts
    if all(a < b for a, b in zip(counts, counts[1:])):
        return Growth.GROWING, counts
    return Growth.INCONCLUSIVE, counts

"""Top-level classification, minimality, and the dual-path cross-check harness."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .core import DimVector, Quiver, QuiverSetting
from .euclid import find_euclidean_witness, verify_witness
from .errors import CrossCheckError
from .tits import FINITE, Verdict, decide_by_tits


def classify(setting: QuiverSetting, checked: bool = False, budget: int | None = None) -> Verdict:
    """Finite, or infinite with an embedded Euclidean witness.

    With ``checked`` the Tits-form path runs as well; any disagreement, or a
    witness that fails re-validation, raises :class:`CrossCheckError`.
    """
    witness = find_euclidean_witness(setting, budget=budget)
    verdict = Verdict(True, witness) if witness is not None else FINITE
    if not checked:
        return verdict
    other = decide_by_tits(setting, budget=budget)
    if other.infinite != verdict.infinite:
        raise CrossCheckError(
            f"decision paths disagree on {setting}:\n"
            f"  euclidean search: {verdict} {verdict.witness}\n"
            f"  tits search:      {other} subroot={other.subroot} witness={other.witness}")
    for w in (verdict.witness, other.witness, other.subroot):
        if w is not None:
            problems = verify_witness(setting, w)
            if problems:
                raise CrossCheckError(f"witness {w} failed re-validation: {problems}")
    return verdict


def one_step_smaller(setting: QuiverSetting):
    """Settings one generating move below ``setting``.

    Moves: lower one dimension entry by one (the vertex disappears at 0), or
    delete one arrow.
    """
    quiver, dim = setting.quiver, setting.dim
    for v in quiver.vertices:
        if dim[v] == 0:
            continue
        if dim[v] > 1:
            yield QuiverSetting(quiver, DimVector((u, dim[u] - (u == v)) for u in quiver.vertices))
        else:
            keep = tuple(u for u in quiver.vertices if u != v)
            arrows = tuple(a for a in quiver.arrows if v not in a)
            yield QuiverSetting(Quiver(keep, arrows), DimVector((u, dim[u]) for u in keep))
    for k in range(len(quiver.arrows)):
        yield QuiverSetting(quiver.delete_arrow(k), dim)


def is_minimal_infinite(setting: QuiverSetting, checked: bool = False) -> bool:
    if classify(setting, checked=checked).finite:
        return False
    return all(classify(s, checked=checked).finite for s in one_step_smaller(setting))


@dataclass(frozen=True)
class Bounds:
    """Enumeration limits for :func:`cross_check_suite`.

    ``max_multiplicity`` bounds arrows per ordered vertex pair, so up to
    twice that many arrows may join two vertices.
    """

    max_vertices: int = 0
    max_multiplicity: int = 2
    max_loops: int = 1
    max_dim: int = 3
    max_arrows: int | None = None


@dataclass
class SuiteReport:
    settings: int = 0
    infinite: int = 0
    finite: int = 0
    mismatches: list = field(default_factory=list)

    def merge(self, other: SuiteReport):
        self.settings += other.settings
        self.infinite += other.infinite
        self.finite += other.finite
        self.mismatches.extend(other.mismatches)

    def lines(self):
        yield f"settings {self.settings}"
        yield f"infinite {self.infinite}"
        yield f"finite {self.finite}"
        yield f"mismatches {len(self.mismatches)}"
        for m in self.mismatches:
            yield f"MISMATCH {m}"


def _pairs(n):
    return list(itertools.combinations(range(n), 2))


def _apply(perm, loops, mults, pairs, pair_pos):
    new_loops = [0] * len(loops)
    new_mults = [0] * len(mults)
    for i, v in enumerate(loops):
        new_loops[perm[i]] = v
    for k, (i, j) in enumerate(pairs):
        a, b = perm[i], perm[j]
        new_mults[pair_pos[(min(a, b), max(a, b))]] = mults[k]
    return tuple(new_loops), tuple(new_mults)


def enumerate_multigraphs(n: int, bounds: Bounds):
    """Connected loop/edge multiplicity patterns on ``n`` vertices, one per isomorphism class.

    Yields ``(loops, mults, automorphisms)``; the representative is the
    lexicographic maximum of its class.
    """
    pairs = _pairs(n)
    pair_pos = {p: k for k, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    top = 2 * bounds.max_multiplicity
    for loops in itertools.product(range(bounds.max_loops, -1, -1), repeat=n):
        if list(loops) != sorted(loops, reverse=True):
            continue
        stab = [p for p in perms if all(loops[p[i]] == loops[i] for i in range(n))]
        for mults in itertools.product(range(top, -1, -1), repeat=len(pairs)):
            if bounds.max_arrows is not None and sum(loops) + sum(mults) > bounds.max_arrows:
                continue
            if not _connected(n, pairs, mults):
                continue
            auts = []
            canonical = True
            for p in stab:
                image = _apply(p, loops, mults, pairs, pair_pos)[1]
                if image > mults:
                    canonical = False
                    break
                if image == mults:
                    auts.append(p)
            if canonical:
                yield loops, mults, auts


def _connected(n, pairs, mults):
    seen, stack = {0}, [0]
    while stack:
        u = stack.pop()
        for (i, j), m in zip(pairs, mults):
            if m and u in (i, j):
                w = j if u == i else i
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return len(seen) == n


def realize(n: int, loops, mults, max_multiplicity: int) -> Quiver:
    """Quiver on ``v0..`` with the given pattern; up to ``max_multiplicity`` arrows
    run forward along each pair and the rest backward."""
    names = tuple(f"v{i}" for i in range(n))
    arrows = []
    for i, c in enumerate(loops):
        arrows += [(names[i], names[i])] * c
    for (i, j), m in zip(_pairs(n), mults):
        fwd = min(m, max_multiplicity)
        arrows += [(names[i], names[j])] * fwd + [(names[j], names[i])] * (m - fwd)
    return Quiver(names, tuple(arrows))


def enumerate_settings(bounds: Bounds):
    """All connected settings within ``bounds``, one per isomorphism class."""
    for n in range(1, bounds.max_vertices + 1):
        for loops, mults, auts in enumerate_multigraphs(n, bounds):
            quiver = realize(n, loops, mults, bounds.max_multiplicity)
            for dims in itertools.product(range(bounds.max_dim + 1), repeat=n):
                if any(tuple(dims[p.index(i)] for i in range(n)) > dims for p in auts):
                    continue
                yield QuiverSetting(quiver, DimVector._trusted(quiver.vertices, dims, quiver.index))


def compare_paths(setting: QuiverSetting, report: SuiteReport):
    primary = find_euclidean_witness(setting)
    other = decide_by_tits(setting)
    report.settings += 1
    if (primary is not None) != other.infinite:
        report.mismatches.append(
            f"{setting.quiver.arrows} d={setting.values}: euclid={primary is not None} "
            f"tits={other.infinite}")
    elif other.infinite:
        report.infinite += 1
    else:
        report.finite += 1


def cross_check_suite(bounds: Bounds) -> SuiteReport:
    """Run both decision paths on every setting within ``bounds``."""
    report = SuiteReport()
    for setting in enumerate_settings(bounds):
        compare_paths(setting, report)
    return report


def random_setting(rng: random.Random, max_vertices: int = 7, max_dim: int = 6,
                   max_multiplicity: int = 2) -> QuiverSetting:
    """Random small setting, biased towards sparse trees where D/E witnesses live."""
    n = rng.randint(1, max_vertices)
    names = tuple(f"v{i}" for i in range(n))
    arrows = []
    for i in range(1, n):
        j = rng.randrange(i)
        arrows.append((names[i], names[j]) if rng.random() < 0.5 else (names[j], names[i]))
    extra = rng.choice((0, 0, 0, 1, 2))
    for _ in range(extra):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j and rng.random() < 0.7:
            continue
        if sum(1 for a in arrows if a == (names[i], names[j])) < max_multiplicity:
            arrows.append((names[i], names[j]))
    dims = [rng.choice((0, 1, 1, 2, 2, 3, 4, 5, 6)) if max_dim >= 6 else rng.randint(0, max_dim)
            for _ in range(n)]
    dims = [min(d, max_dim) for d in dims]
    return QuiverSetting(Quiver(names, tuple(arrows)), DimVector(zip(names, dims)))


def random_cross_check(count: int, seed: int = 0, max_vertices: int = 7, max_dim: int = 6
                       ) -> SuiteReport:
    rng = random.Random(seed)
    report = SuiteReport()
    for _ in range(count):
        compare_paths(random_setting(rng, max_vertices, max_dim), report)
    return report


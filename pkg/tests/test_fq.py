import itertools

import numpy as np
import pytest

from quiverfin.core import DimVector, Quiver, QuiverSetting
from quiverfin.errors import QuiverError, SearchBudgetExceeded
from quiverfin.fq import (Growth, count_orbits, gl_generators, gl_order, growth_signal, inverse_mod,
                          orbit_sizes, primitive_root)
from quiverfin.formats import parse_setting
from quiverfin.shapes import setting


def all_gl(n, p):
    for flat in itertools.product(range(p), repeat=n * n):
        m = np.array(flat, dtype=np.int64).reshape(n, n)
        if round(np.linalg.det(m)) % p:
            yield m


def naive_orbits(s, p):
    """Oracle: apply every group element to every unvisited point."""
    quiver, vals = s.quiver, s.values
    idx = quiver.index
    shapes = [(vals[idx[t]], vals[idx[sv]]) for sv, t in quiver.arrows]
    spaces = [list(itertools.product(range(p), repeat=r * c)) for r, c in shapes]
    points = [tuple(np.array(e, dtype=np.int64).reshape(r, c) for e, (r, c) in zip(pt, shapes))
              for pt in itertools.product(*spaces)]
    key = lambda pt: tuple(tuple(m.flatten()) for m in pt)
    groups = [list(all_gl(n, p)) if n else [np.zeros((0, 0), dtype=np.int64)] for n in vals]
    seen, orbits = set(), 0
    for pt in points:
        if key(pt) in seen:
            continue
        orbits += 1
        for g in itertools.product(*groups):
            image = tuple(g[idx[t]] @ m @ np.round(np.linalg.inv(g[idx[sv]]) * round(np.linalg.det(g[idx[sv]])))
                          .astype(np.int64) * pow(round(np.linalg.det(g[idx[sv]])) % p, -1, p) % p
                          if len(m) and m.size else m
                          for m, (sv, t) in zip(pt, quiver.arrows))
            seen.add(key(image))
    return orbits


class TestGroup:
    def test_primitive_roots(self):
        assert [primitive_root(p) for p in (2, 3, 5, 7)] == [1, 2, 2, 3]

    def test_orders(self):
        assert gl_order(1, 5) == 4
        assert gl_order(2, 2) == 6
        assert gl_order(2, 5) == 480
        assert gl_order(3, 2) == 168

    @pytest.mark.parametrize("n,p", [(1, 2), (1, 5), (2, 2), (2, 3), (2, 5), (3, 2), (3, 3)])
    def test_generators_generate(self, n, p):
        gens = gl_generators(n, p)
        eye = tuple(np.eye(n, dtype=np.int64).flatten())
        seen, frontier = {eye}, [np.eye(n, dtype=np.int64)]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    h = g @ m % p
                    k = tuple(h.flatten())
                    if k not in seen:
                        seen.add(k)
                        nxt.append(h)
            frontier = nxt
        assert len(seen) == gl_order(n, p)

    def test_inverse(self):
        g = np.array([[1, 2], [3, 4]])
        assert np.array_equal(g @ inverse_mod(g, 5) % 5, np.eye(2))
        with pytest.raises(QuiverError):
            inverse_mod(np.array([[1, 2], [2, 4]]), 5)


class TestCounts:
    def test_single_arrow(self):
        assert count_orbits(setting("ab", ["ab"], (1, 1)), 2) == 2

    def test_kronecker(self):
        s = setting("ab", ["ab", "ab"], (1, 1))
        assert [count_orbits(s, p) for p in (2, 3)] == [4, 5]

    def test_loop(self):
        assert count_orbits(setting("x", ["xx"], (1,)), 3) == 3

    def test_matrix_conjugacy_classes(self):
        # Conjugacy classes of 2x2 matrices over F_p number p^2 + p.
        s = setting("x", ["xx"], (2,))
        assert [count_orbits(s, p) for p in (2, 3, 5)] == [6, 12, 30]

    def test_rank_classes(self):
        # Orbits of GL_m x GL_n on m x n matrices are the ranks.
        assert count_orbits(setting("ab", ["ab"], (3, 2)), 2) == 3

    @pytest.mark.parametrize("s", [
        setting("ab", ["ab"], (2, 1)),
        setting("x", ["xx"], (2,)),
        setting("ab", ["ab", "ab"], (1, 2)),
        setting("abc", ["ab", "cb"], (1, 2, 1)),
        setting("ab", ["aa", "ab"], (1, 1)),
    ], ids=lambda s: repr(s.quiver.arrows))
    @pytest.mark.parametrize("p", [2, 3])
    def test_against_full_group_sweep(self, s, p):
        assert count_orbits(s, p) == naive_orbits(s, p)

    def test_sizes_partition_points(self):
        s = setting("cpqr", ["pc", "qc", "rc"], (2, 1, 1, 1))
        sizes = orbit_sizes(s, 3)
        assert sizes.sum() == 3**6
        assert all(gl_order(2, 3) * 2**3 % int(k) == 0 for k in sizes)

    def test_relabel_invariant(self):
        a = setting("abc", ["ab", "cb"], (1, 2, 1))
        b = setting("zyx", ["zy", "xy"], (1, 2, 1))
        assert count_orbits(a, 3) == count_orbits(b, 3)

    def test_no_arrows(self):
        assert count_orbits(setting("ab", [], (2, 3)), 5) == 1

    def test_not_prime(self):
        with pytest.raises(QuiverError):
            count_orbits(setting("ab", ["ab"], (1, 1)), 4)

    def test_budget(self):
        with pytest.raises(SearchBudgetExceeded):
            count_orbits(setting("ab", ["ab"], (3, 3)), 5, budget=1000)

    def test_group_budget(self):
        with pytest.raises(SearchBudgetExceeded):
            count_orbits(setting("ab", ["ab"], (3, 1)), 5)


class TestGrowth:
    def test_signals(self):
        assert growth_signal(setting("ab", ["ab"], (1, 1))) == (Growth.CONSTANT, (2, 2, 2))
        assert growth_signal(setting("ab", ["ab", "ab"], (1, 1))) == (Growth.GROWING, (4, 5, 7))
        assert growth_signal(setting("x", ["xx"], (1,)), primes=(2, 3)) == (Growth.GROWING, (2, 3))


def curated(corpus):
    for line in (corpus / "fq" / "curated.txt").read_text().splitlines():
        if line and not line.startswith("#"):
            name, verdict, *counts = line.split()
            yield name, verdict, tuple(map(int, counts))


class TestCurated:
    def test_manifest_covers_files(self, corpus):
        names = {n for n, _, _ in curated(corpus)}
        assert names == {p.stem for p in (corpus / "fq").glob("*.q")}

    @pytest.mark.parametrize("p", [2, 3])
    def test_reversal_duality(self, corpus, p):
        for name, _, counts in curated(corpus):
            s = parse_setting((corpus / "fq" / f"{name}.q").read_text())
            flipped = Quiver(s.quiver.vertices, tuple((t, u) for u, t in s.quiver.arrows))
            assert count_orbits(QuiverSetting(flipped, s.dim), p) == counts[(2, 3).index(p)], name

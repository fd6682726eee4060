"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import io
import itertools
import json
import os
import random
import subprocess
import sys
import time

import pytest

from quiverfin.algebra import (AlgebraSpec, algebra_to_setting, canonical_form, check_or_conditions,
                               has_identity, is_associative, radical_squares_to_zero, recover_spec,
                               setting_to_algebra)
from quiverfin.classifier import (Bounds, SuiteReport, classify, cross_check_suite, is_minimal_infinite,
                                  random_cross_check)
from quiverfin.cli import main
from quiverfin.core import DimVector, QuiverSetting, bilinear_form, quadratic_form
from quiverfin.euclid import find_euclidean_witness, radical_vector, recognize_euclidean
from quiverfin.formats import parse_setting
from quiverfin.fq import DEFAULT_PRIMES, count_orbits
from quiverfin.shapes import counterexample, euclidean_quiver, euclidean_types, reorient
from quiverfin.tits import decide_by_tits

from conftest import CORPUS


@pytest.fixture
def report(capsys):
    def _report(number, passed, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if passed else 'FAIL'} {detail}")
        assert passed, detail
    return _report


def test_1_radical_vector_nullity(report):
    start = time.perf_counter()
    rng = random.Random(1)
    checked, bad = 0, []
    for t in euclidean_types(9):
        base = euclidean_quiver(t)
        for quiver in [base] + [reorient(base, rng) for _ in range(3)]:
            assert recognize_euclidean(quiver) == t
            h = radical_vector(t, quiver)
            ok = quadratic_form(quiver, h) == 0 and all(
                bilinear_form(quiver, h, DimVector.basis(quiver.vertices, x)) == 0 for x in quiver.vertices)
            checked += 1
            if not ok:
                bad.append(f"{t}")
    elapsed = time.perf_counter() - start
    report(1, not bad and elapsed < 1.0,
           f"{checked} quivers, failures={bad}, {elapsed:.2f}s (limit 1s)")


def test_2_dual_path_equivalence(report):
    start = time.perf_counter()
    exhaustive = SuiteReport()
    for n in range(1, 5):
        exhaustive.merge(cross_check_suite(Bounds(n, max_multiplicity=2, max_loops=1, max_dim=3)))
    rand = random_cross_check(1000, seed=2024, max_vertices=7, max_dim=6)
    elapsed = time.perf_counter() - start
    mismatches = exhaustive.mismatches + rand.mismatches
    report(2, not mismatches and rand.settings == 1000 and elapsed < 300,
           f"exhaustive {exhaustive.settings} settings ({exhaustive.infinite} infinite), "
           f"random {rand.settings} ({rand.infinite} infinite), mismatches={len(mismatches)}, "
           f"{elapsed:.1f}s (limit 300s)")


def test_3_corollary_minimality(report):
    start = time.perf_counter()
    failures, shapes = [], 0
    for path in sorted((CORPUS / "euclidean").glob("*.q")):
        s = parse_setting(path.read_text())
        shapes += 1
        if not is_minimal_infinite(s, checked=True):
            failures.append(f"{path.stem} not minimal")
        for x in s.quiver.vertices:
            smaller = s.dim - DimVector.basis(s.quiver.vertices, x)
            if classify(QuiverSetting(s.quiver, smaller), checked=True).infinite:
                failures.append(f"{path.stem} h-e_{x}")
        for k in range(len(s.quiver.arrows)):
            if classify(QuiverSetting(s.quiver.delete_arrow(k), s.dim), checked=True).infinite:
                failures.append(f"{path.stem} minus arrow {k}")
    elapsed = time.perf_counter() - start
    report(3, shapes == 17 and not failures and elapsed < 60,
           f"{shapes} shapes, failures={failures}, {elapsed:.2f}s (limit 60s)")


def test_4_counterexample(report):
    s = counterexample()
    euclid_finite = find_euclidean_witness(s) is None
    tits_finite = decide_by_tits(s).finite
    or_report = check_or_conditions(s)
    # The arrow from the weight-2 source t1 to the weight-2 target b2.
    expected = ("arrow 1 t1->b2",)
    ok = (euclid_finite and tits_finite and or_report.failing() == ("c3",)
          and or_report.c3.locations == expected)
    report(4, ok, f"euclid finite={euclid_finite}, tits finite={tits_finite}, "
                  f"failing={or_report.failing()}, c3 at {or_report.c3.locations}")


def test_5_algebra_round_trip(report):
    start = time.perf_counter()
    seen, failures = set(), []
    for l in (1, 2, 3):
        for sizes in itertools.product((1, 2), repeat=l):
            for flat in itertools.product((0, 1, 2), repeat=l * l):
                spec = AlgebraSpec(sizes, tuple(tuple(flat[i * l:(i + 1) * l]) for i in range(l)))
                key = canonical_form(spec)
                if key in seen:
                    continue
                seen.add(key)
                mt = setting_to_algebra(algebra_to_setting(spec))
                if not (is_associative(mt) and radical_squares_to_zero(mt) and has_identity(mt)):
                    failures.append(spec)
                elif canonical_form(recover_spec(mt)) != key:
                    failures.append(spec)
    elapsed = time.perf_counter() - start
    report(5, not failures and elapsed < 60,
           f"{len(seen)} settings up to relabeling, failures={failures[:3]}, {elapsed:.1f}s (limit 60s)")


def test_6_finite_field_consistency(report):
    start = time.perf_counter()
    failures, entries = [], 0
    anchors = {"single_arrow": (2, 2, 2), "kronecker": (4, 5, 7), "loop": (2, 3, 5)}
    for line in (CORPUS / "fq" / "curated.txt").read_text().splitlines():
        if not line or line.startswith("#"):
            continue
        name, recorded_verdict, *recorded = line.split()
        entries += 1
        s = parse_setting((CORPUS / "fq" / f"{name}.q").read_text())
        counts = tuple(count_orbits(s, p) for p in DEFAULT_PRIMES)
        verdict = classify(s, checked=True)
        if str(verdict) != recorded_verdict or counts != tuple(map(int, recorded)):
            failures.append(f"{name}: {verdict} {counts}")
        if verdict.finite and len(set(counts)) != 1:
            failures.append(f"{name}: finite but counts {counts}")
        if verdict.infinite and not all(a < b for a, b in zip(counts, counts[1:])):
            failures.append(f"{name}: infinite but counts {counts}")
        if name in anchors and counts != anchors[name]:
            failures.append(f"{name}: anchor {anchors[name]} != {counts}")
    elapsed = time.perf_counter() - start
    report(6, entries >= 10 and not failures and elapsed < 120,
           f"{entries} curated instances, failures={failures}, {elapsed:.1f}s (limit 120s)")


def _run(argv):
    out = io.StringIO()
    code = main(argv, out=out)
    return out.getvalue(), code


def test_7_determinism(report):
    golden = CORPUS / "golden"
    codes = dict(line.split() for line in (golden / "classify_exit_codes.txt").read_text().splitlines())
    files = sorted(p for p in CORPUS.glob("*/*.q"))
    diffs = []
    for path in files:
        rel = path.relative_to(CORPUS).as_posix()
        for command in ("classify", "witness"):
            expected = (golden / command / rel).with_suffix(".out").read_text()
            first, code = _run([command, str(path)])
            second, _ = _run([command, str(path)])
            if not (first == second == expected):
                diffs.append(f"{command} {rel}")
            if command == "classify" and str(code) != codes[rel]:
                diffs.append(f"exit {rel}")
    # Fresh interpreters with different hash seeds must agree byte for byte as well.
    script = ("import io, json, sys\nfrom quiverfin.cli import main\nres = {}\n"
              "for p in sys.argv[1:]:\n    for c in ('classify', 'witness'):\n"
              "        o = io.StringIO(); main([c, p], out=o); res[c + ' ' + p] = o.getvalue()\n"
              "print(json.dumps(res))\n")
    for seed in ("1", "2"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        proc = subprocess.run([sys.executable, "-c", script, *map(str, files)],
                              capture_output=True, text=True, env=env, check=True)
        for key, text in json.loads(proc.stdout).items():
            command, path = key.split(" ", 1)
            rel = os.path.relpath(path, CORPUS)
            if text != (golden / command / rel).with_suffix(".out").read_text():
                diffs.append(f"seed {seed} {key}")
    report(7, len(files) == len(codes) and not diffs,
           f"{len(files)} files x 2 commands, 2 in-process runs + 2 hash seeds, differences={diffs}")

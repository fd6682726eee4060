"""Regenerate the in-repo corpus and its golden outputs.

    python3 tools/make_corpus.py            # rewrite corpus/
    python3 tools/make_corpus.py --check    # fail if anything would change
"""

import argparse
import io
import sys
from pathlib import Path

from quiverfin.cli import main as cli_main
from quiverfin.formats import serialize_algebra, serialize_setting
from quiverfin.algebra import AlgebraSpec
from quiverfin.fq import DEFAULT_PRIMES, count_orbits
from quiverfin.classifier import classify
from quiverfin.shapes import counterexample, euclidean_types, radical_setting, setting

ROOT = Path(__file__).resolve().parent.parent / "corpus"

SETTINGS = {
    "single_arrow": setting("ab", ["ab"], (1, 1)),
    "kronecker": setting("ab", ["ab", "ab"], (1, 1)),
    "loop": setting("x", ["xx"], (1,)),
    "a3_path": setting("abc", ["ab", "bc"], (9, 9, 9)),
    "zero_vector": setting("ab", ["ab", "ab"], (0, 0)),
    "d4_star": setting("cpqrs", ["pc", "qc", "rc", "sc"], (2, 1, 1, 1, 1)),
    "d4_star_doubled": setting("cpqrs", ["pc", "qc", "rc", "sc"], (4, 2, 2, 2, 2)),
    "d4_star_pendant": setting("cpqrsz", ["pc", "qc", "rc", "sc", "zp"], (2, 1, 1, 1, 1, 1)),
    "d4_star_plus": setting("cpqrsz", ["pc", "qc", "rc", "sc", "zc"], (2, 1, 1, 1, 1, 1)),
    "counterexample": counterexample(),
}

ALGEBRAS = {
    "kronecker": AlgebraSpec((1,), ((2,),)),
    "two_blocks": AlgebraSpec((2, 1), ((0, 1), (1, 0))),
    "counterexample": AlgebraSpec((2, 1, 1), ((1, 1, 1), (1, 0, 0), (0, 0, 0))),
    "semisimple": AlgebraSpec((3, 1), ((0, 0), (0, 0))),
    "triangular": AlgebraSpec((1, 1, 1), ((0, 1, 1), (0, 0, 1), (0, 0, 0))),
    "wild_star": AlgebraSpec((2, 1, 1, 1, 1), ((0, 1, 1, 1, 1), (0,) * 5, (0,) * 5, (0,) * 5, (0,) * 5)),
}

# Small enough for exhaustive orbit sweeps over F_2, F_3 and F_5.
FQ = {
    "point": setting("a", [], (1,)),
    "single_arrow": setting("ab", ["ab"], (1, 1)),
    "arrow_2_1": setting("ab", ["ab"], (2, 1)),
    "arrow_2_2": setting("ab", ["ab"], (2, 2)),
    "a3_linear": setting("abc", ["ab", "bc"], (1, 1, 1)),
    "a3_sink_121": setting("abc", ["ab", "cb"], (1, 2, 1)),
    "a4_zigzag": setting("abcd", ["ab", "cb", "cd"], (1, 1, 1, 1)),
    "d4_star_1111": setting("cpqr", ["pc", "qc", "rc"], (1, 1, 1, 1)),
    "three_subspace": setting("cpqr", ["pc", "qc", "rc"], (2, 1, 1, 1)),
    "loop": setting("x", ["xx"], (1,)),
    "loop_2": setting("x", ["xx"], (2,)),
    "kronecker": setting("ab", ["ab", "ab"], (1, 1)),
    "kronecker_1_2": setting("ab", ["ab", "ab"], (1, 2)),
    "two_cycle": setting("ab", ["ab", "ba"], (1, 1)),
    "triangle": setting("abc", ["ab", "bc", "ca"], (1, 1, 1)),
    "square": setting("abcd", ["ab", "bc", "cd", "ad"], (1, 1, 1, 1)),
    "loop_arrow": setting("ab", ["aa", "ab"], (1, 1)),
    "four_subspace": setting("cpqrs", ["pc", "qc", "rc", "sc"], (2, 1, 1, 1, 1)),
}


def cli_output(argv):
    buf = io.StringIO()
    code = cli_main(argv, out=buf)
    return buf.getvalue(), code


def build():
    files = {}
    for t in euclidean_types(9):
        files[f"euclidean/{t.family}{t.n}.q"] = serialize_setting(radical_setting(t))
    for name, s in SETTINGS.items():
        files[f"settings/{name}.q"] = serialize_setting(s)
    for name, spec in ALGEBRAS.items():
        files[f"algebra/{name}.alg"] = serialize_algebra(spec)
    manifest = ["# name verdict orbit counts over F_2 F_3 F_5"]
    for name, s in FQ.items():
        files[f"fq/{name}.q"] = serialize_setting(s)
        counts = " ".join(str(count_orbits(s, p)) for p in DEFAULT_PRIMES)
        manifest.append(f"{name} {classify(s, checked=True)} {counts}")
    files["fq/curated.txt"] = "\n".join(manifest) + "\n"
    return files


def build_golden(files):
    golden, codes = {}, []
    for rel in sorted(files):
        if not rel.endswith(".q"):
            continue
        path = str(ROOT / rel)
        for command in ("classify", "witness"):
            text, code = cli_output([command, path])
            golden[f"golden/{command}/{rel[:-2]}.out"] = text
            if command == "classify":
                codes.append(f"{rel} {code}")
    golden["golden/classify_exit_codes.txt"] = "\n".join(codes) + "\n"
    return golden


def main(argv=None):
    parser = argparse.ArgumentParser()
    parser.add_argument("--check", action="store_true")
    args = parser.parse_args(argv)
    files = build()
    stale = []
    for rel, text in files.items():
        path = ROOT / rel
        if args.check:
            if not path.exists() or path.read_text() != text:
                stale.append(rel)
        else:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
    if not args.check:
        for rel, text in build_golden(files).items():
            path = ROOT / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text)
    if stale:
        print("stale corpus files:", *stale, sep="\n  ")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

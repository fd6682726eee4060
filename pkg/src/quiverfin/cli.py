"""Command-line front end.

Exit codes: 0 success (``classify``: finite), 10 infinite from ``classify``,
1 failed ``selfcheck`` or ``verify-witness``, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra import algebra_to_setting, check_or_conditions, finitely_many_orbits, is_distributive
from .classifier import Bounds, SuiteReport, classify, cross_check_suite, is_minimal_infinite, random_cross_check
from .core import QuiverSetting, tits_form
from .errors import CrossCheckError, DimensionLimitError, QuiverError, SearchBudgetExceeded
from .euclid import SubrootWitness, find_euclidean_witness, verify_witness
from .formats import format_subroot, format_witness, parse_algebra, parse_setting, parse_witness
from .fq import count_orbits
from .tits import find_subroot

EXIT_OK, EXIT_FAIL, EXIT_ERROR, EXIT_INFINITE = 0, 1, 2, 10


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise QuiverError(f"cannot read {path}: {exc.strerror}") from None


def _setting(args):
    return parse_setting(_read(args.file))


def cmd_classify(args, out):
    setting = _setting(args)
    verdict = classify(setting, checked=args.checked)
    out.write(f"{verdict}\n")
    if verdict.infinite:
        out.write(format_witness(verdict.witness, setting))
        return EXIT_INFINITE
    return EXIT_OK


def cmd_witness(args, out):
    setting = _setting(args)
    witness = find_euclidean_witness(setting)
    out.write(format_witness(witness, setting) if witness else "NONE\n")
    return EXIT_OK


def cmd_subroot(args, out):
    setting = _setting(args)
    sub = find_subroot(setting)
    if sub is None:
        out.write("NONE\n")
    else:
        q = tits_form(QuiverSetting(setting.quiver, sub))
        out.write(format_subroot(SubrootWitness(sub, q)))
    return EXIT_OK


def cmd_tits(args, out):
    out.write(f"{tits_form(_setting(args))}\n")
    return EXIT_OK


def cmd_minimal(args, out):
    setting = _setting(args)
    if classify(setting, checked=args.checked).finite:
        out.write("FINITE\n")
    elif is_minimal_infinite(setting, checked=args.checked):
        out.write("MINIMAL-INFINITE\n")
    else:
        out.write("NOT-MINIMAL\n")
    return EXIT_OK


def cmd_algebra(args, out):
    spec = parse_algebra(_read(args.file))
    bs = algebra_to_setting(spec)
    verdict = finitely_many_orbits(spec, checked=args.checked)
    out.write("FINITE-ORBITS\n" if verdict.finite else "INFINITE-ORBITS\n")
    if verdict.infinite:
        out.write(format_witness(verdict.witness, bs.setting))
    if args.or_check:
        for line in check_or_conditions(bs).lines():
            out.write(line + "\n")
    if args.distributive:
        out.write(f"DISTRIBUTIVE {'yes' if is_distributive(spec) else 'no'}\n")
    return EXIT_OK


def cmd_orbits(args, out):
    out.write(f"{count_orbits(_setting(args), args.q, budget=args.budget)}\n")
    return EXIT_OK


def cmd_selfcheck(args, out):
    report = SuiteReport()
    for n in range(1, args.max_vertices + 1):
        report.merge(cross_check_suite(Bounds(n, args.max_multiplicity, args.max_loops, args.max_dim)))
    if args.random:
        report.merge(random_cross_check(args.random, seed=args.seed))
    for line in report.lines():
        out.write(line + "\n")
    return EXIT_FAIL if report.mismatches else EXIT_OK


def cmd_verify_witness(args, out):
    setting = _setting(args)
    witness = parse_witness(_read(args.witness), setting)
    problems = verify_witness(setting, witness)
    if problems:
        out.write("INVALID\n")
        for p in problems:
            out.write(f"  {p}\n")
        return EXIT_FAIL
    out.write("VALID\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quiverfin", description="Representation type of quiver settings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="FINITE or INFINITE, with a Euclidean witness")
    p.add_argument("file")
    p.add_argument("--checked", action="store_true", help="also run the Tits-form path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("witness", help="embedded Euclidean witness or NONE")
    p.add_argument("file")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("subroot", help="vector below d with q <= 0, or NONE")
    p.add_argument("file")
    p.set_defaults(func=cmd_subroot)

    p = sub.add_parser("tits", help="value of the Tits form at d")
    p.add_argument("file")
    p.set_defaults(func=cmd_tits)

    p = sub.add_parser("minimal", help="is the setting minimal representation infinite")
    p.add_argument("file")
    p.add_argument("--checked", action="store_true")
    p.set_defaults(func=cmd_minimal)

    p = sub.add_parser("algebra", help="orbit finiteness of a radical-square-zero algebra")
    p.add_argument("file")
    p.add_argument("--or-check", action="store_true",
                   help="report the sufficient orbit-finiteness conditions c1-c3")
    p.add_argument("--distributive", action="store_true")
    p.add_argument("--checked", action="store_true")
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("orbits", help="number of orbits over F_q by enumeration")
    p.add_argument("file")
    p.add_argument("--q", type=int, required=True, help="prime field size")
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("selfcheck", help="cross-check both decision paths")
    p.add_argument("--max-vertices", type=int, default=3)
    p.add_argument("--max-dim", type=int, default=3)
    p.add_argument("--max-multiplicity", type=int, default=2)
    p.add_argument("--max-loops", type=int, default=1)
    p.add_argument("--random", type=int, default=0, help="extra random instances")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selfcheck)

    p = sub.add_parser("verify-witness", help="re-check a printed witness block")
    p.add_argument("file")
    p.add_argument("witness")
    p.set_defaults(func=cmd_verify_witness)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    try:
        return args.func(args, out)
    except (ValueError, DimensionLimitError, SearchBudgetExceeded, CrossCheckError) as exc:
        print(f"quiverfin: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

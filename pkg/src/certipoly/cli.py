"""Command line entry point: ``certipoly verify|signlist|isolate|resultant``."""

from __future__ import annotations

import argparse
import json
import sys

from .data import load_polynomial
from .discrimination import count_roots, revised_sign_list
from .errors import CertipolyError
from .isolation import isolate_real_roots
from .numeric import PrecisionBudget, parse_rational
from .polynomial import Poly
from .resultant import BivariatePolynomial, resultant_in_t
from .suite import EXIT_USAGE, SUITES, SuiteConfig, emit_report, report_json, run_suite


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="certipoly", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a certification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--width", type=_rational, default=parse_rational("1/10000000000"),
                   help="target width of refined root intervals (rational)")
    v.add_argument("--bits", type=int, default=128, help="starting working precision")
    v.add_argument("--max-bits", type=int, default=16384, help="precision cap")
    v.add_argument("--data", default=None, help="directory holding the polynomial data")
    v.add_argument("--report", default=None, help="write the text report here")
    v.add_argument("--json", action="store_true",
                   help="also emit JSON (next to --report, else on stdout)")

    s = sub.add_parser("signlist", help="revised sign list of a polynomial file")
    s.add_argument("poly_file")

    i = sub.add_parser("isolate", help="isolating intervals of the real roots")
    i.add_argument("poly_file")
    i.add_argument("--range", nargs=2, type=_rational, metavar=("LO", "HI"))

    r = sub.add_parser("resultant", help="Res_t of a t-polynomial and a (t, k) polynomial")
    r.add_argument("poly_t_file")
    r.add_argument("bipoly_file")
    return parser


def _load(path, kind):
    obj, _ = load_polynomial(path, manifest={})
    if kind is Poly and not isinstance(obj, Poly):
        raise CertipolyError(f"{path}: expected a univariate polynomial file")
    return obj


def cmd_verify(args) -> int:
    bits = min(args.bits, args.max_bits)
    config = SuiteConfig(args.suite, args.width, PrecisionBudget(bits, args.max_bits),
                         args.data, args.report, args.json)
    report = run_suite(config)
    text = emit_report(report, config)
    if args.json and not args.report:
        sys.stdout.write(report_json(report))
    else:
        sys.stdout.write(text)
    for step in report.failing_steps():
        print(f"step {step.id}: {step.verdict}", file=sys.stderr)
    return report.exit_code


def cmd_signlist(args) -> int:
    f = _load(args.poly_file, Poly)
    sl = revised_sign_list(f)
    rc = count_roots(f)
    print(sl)
    print(f"sign changes: {sl.sign_changes()}")
    print(f"distinct real roots: {rc.distinct_real}")
    print(f"imaginary pairs: {rc.imaginary_pairs}")
    return 0


def cmd_isolate(args) -> int:
    f = _load(args.poly_file, Poly)
    for iv in isolate_real_roots(f, args.range):
        lo, hi = iv.to_json()
        print(f"({lo}, {hi}]  ~ {iv.decimal()}")
    return 0


def cmd_resultant(args) -> int:
    P = _load(args.poly_t_file, Poly)
    Q = _load(args.bipoly_file, BivariatePolynomial)
    R = resultant_in_t(P, Q)
    print(json.dumps({"degree": R.degree, "coefficients": R.to_json()}))
    return 0


COMMANDS = {"verify": cmd_verify, "signlist": cmd_signlist, "isolate": cmd_isolate,
            "resultant": cmd_resultant}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0
    try:
        return COMMANDS[args.command](args)
    except (CertipolyError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Exit status: 0 success, 1 failed verification, 2 usage error, 3 defective
Padé entry, 4 pole inside a plotting grid.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import verify as verify_mod
from .exact_algebra import Poly, as_rational
from .families import FAMILY_KINDS, FamilyId, UnsupportedFamily, exact_polynomial
from .lab import FIGURES, GridSpec, PoleError, figure_emit
from .operators import pade_appell
from .pade import AMPLITUDE_KINDS, AmplitudeSpec, PadeDefect, pade_of_amplitude
from .umbral import DEFAULT_BESSEL_TERMS, bessel_pade_series

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DEFECT = 3
EXIT_POLE = 4


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r} (use p/q)")


def _coeffs(p: Poly) -> list[str]:
    return [str(c) for c in p.coeffs]


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def cmd_pade(args, out) -> int:
    amp = AmplitudeSpec(args.amplitude, args.y)
    p = pade_of_amplitude(amp, args.m, args.n)
    num, den = _coeffs(p.numerator), _coeffs(p.denominator)
    if args.format == "json":
        json.dump({"amplitude": args.amplitude, "m": args.m, "n": args.n, "numerator": num, "denominator": den}, out)
        out.write("\n")
    elif args.format == "csv":
        w = _writer(out)
        w.writerow(["numerator", *num])
        w.writerow(["denominator", *den])
    else:
        out.write(f"numerator: {','.join(num)}\ndenominator: {','.join(den)}\n")
    return 0


def cmd_family(args, out) -> int:
    p = exact_polynomial(FamilyId(args.kind, args.y), args.n)
    if args.json:
        json.dump({"kind": args.kind, "n": args.n, "coefficients": _coeffs(p)}, out)
        out.write("\n")
    else:
        out.write(",".join(_coeffs(p)) + "\n")
    return 0


def cmd_approx(args, out) -> int:
    fam = FamilyId(args.kind, args.y)
    m, n = args.pade
    approx = pade_appell(fam, m, n, args.n).value
    exact = exact_polynomial(fam, args.n)
    equal = approx == exact
    if args.json:
        json.dump({"kind": args.kind, "m": m, "n": n, "index": args.n, "coefficients": _coeffs(approx),
                   "exact": _coeffs(exact), "exact_equal": equal}, out)
        out.write("\n")
        return 0
    w = _writer(out)
    w.writerow(["power", "coefficient", "exact_coefficient", "exact_equal"])
    for k in range(args.n + 1):
        w.writerow([k, approx.coeff(k), exact.coeff(k), str(equal).lower()])
    return 0


def cmd_verify(args, out) -> int:
    failed = 0
    for r in verify_mod.run(args.suite):
        status = "PASS" if r.passed else "FAIL"
        failed += not r.passed
        line = f"{status}  {r.suite:<12} {r.name}"
        if r.detail:
            line += f"  [{r.detail}]"
        out.write(line + "\n")
    out.write(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}\n")
    return 0 if not failed else EXIT_VERIFY_FAILED


def cmd_figure(args, out) -> int:
    job = FIGURES[args.id]
    grid = job.default_grid
    if args.xmin is not None or args.xmax is not None or args.points is not None:
        grid = GridSpec(
            grid.xmin if args.xmin is None else args.xmin,
            grid.xmax if args.xmax is None else args.xmax,
            grid.points if args.points is None else args.points,
        )
    out.write(figure_emit(job, grid, "json" if args.json else "csv"))
    return 0


def cmd_bessel(args, out) -> int:
    s = bessel_pade_series(args.order, args.terms)
    w = _writer(out)
    w.writerow(["power", "coefficient"])
    for k in range(0, s.order + 1, 2):
        w.writerow([k, s[k]])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="padeappell",
        description="Exact Padé approximants of Appell amplitudes and the polynomial families they generate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pade", help="exact [m|n] approximant of a catalogue amplitude")
    p.add_argument("--amplitude", required=True, choices=AMPLITUDE_KINDS)
    p.add_argument("--y", type=_rational, help="parameter for trunc_exp / hermite2")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    p.set_defaults(func=cmd_pade, format="text")

    p = sub.add_parser("family", help="exact polynomial coefficients, ascending powers")
    p.add_argument("--kind", required=True, choices=[k for k in FAMILY_KINDS if k != "chebyshev2"])
    p.add_argument("--y", type=_rational)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("approx", help="Padé-approximated family member and its exact counterpart")
    p.add_argument("--kind", required=True, choices=[k for k in FAMILY_KINDS if k != "chebyshev2"])
    p.add_argument("--y", type=_rational)
    p.add_argument("--pade", type=int, nargs=2, metavar=("M", "N"), required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("verify", help="run the self-check suites")
    p.add_argument("--suite", default="all", choices=(*verify_mod.SUITES, "all"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figure", help="figure data as CSV on stdout")
    p.add_argument("--id", required=True, choices=list(FIGURES))
    p.add_argument("--xmin", type=float)
    p.add_argument("--xmax", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_figure)

    p = sub.add_parser("bessel", help="series coefficients of the [0|K] umbral Bessel approximant")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--terms", type=int, default=DEFAULT_BESSEL_TERMS)
    p.set_defaults(func=cmd_bessel)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except PadeDefect as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except PoleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_POLE
    except (ValueError, KeyError, UnsupportedFamily) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

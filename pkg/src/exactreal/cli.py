"""``exactreal``: evaluate expressions to verified precision and run the law suites.

Exit codes: 0 when everything passes, 1 on a failed check, 2 on a usage,
parse or domain error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import suites
from .arith import rational_bounds
from .cauchy import DEFAULT_BUDGET, SLACK
from .expr import ParseError, evaluate, parse, to_real
from .rationals import format_rational, parse_rational


def _rational(text: str) -> Fraction:
    try:
        q = parse_rational(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    if q <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return q


def _natural(text: str) -> int:
    n = int(text)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="exactreal", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="PATH", help="also write the report text to PATH")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="print a decimal within 10^-digits of an expression")
    p.add_argument("expr")
    p.add_argument("-d", "--digits", type=int, default=6)

    p = sub.add_parser("bounds", parents=[common], help="print rationals lower < value < upper with width below 2^-n")
    p.add_argument("expr")
    p.add_argument("n", type=_natural)
    p.add_argument("--plot", metavar="PATH", help="render the bracket for every precision 0..n to PATH")

    p = sub.add_parser("check", parents=[common], help="run a law suite")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="closeness probe count")
    p.add_argument("--slack", type=_rational, default=SLACK, help="law-test margin, e.g. 1/1048576")
    p.add_argument("--instances", type=_natural, help="override the suite's instance count")
    return parser


def _run_check(args) -> tuple[list[str], bool]:
    extra = {} if args.instances is None else {"instances": args.instances}
    if args.suite == "laws":
        report = suites.laws(args.seed, budget=args.budget, slack=args.slack, **extra)
    elif args.suite == "limits":
        report = suites.limits(args.seed, budget=args.budget, slack=args.slack, **extra)
    elif args.suite == "cuts":
        report = suites.cuts(args.seed, **extra)
    elif args.suite == "midpoint":
        if extra:
            extra["pairs"] = min(20, args.instances)
        report = suites.midpoints(args.seed, budget=args.budget, **extra)
    else:
        report = suites.models(seed=args.seed, **({"sample": args.instances} if args.instances else {}))
    return report.lines(), report.ok


def _run(args) -> tuple[list[str], int]:
    if args.command == "eval":
        if args.digits < 1:
            raise ValueError("--digits must be at least 1")
        return [evaluate(parse(args.expr), args.digits)], 0
    if args.command == "bounds":
        real = to_real(parse(args.expr))
        b = rational_bounds(real, args.n)
        if args.plot:
            from .plotting import plot_bounds
            plot_bounds(real, args.n, args.plot, args.expr)
        return ["\t".join(map(format_rational, (b.lower, b.upper, b.width)))], 0
    lines, ok = _run_check(args)
    return lines, 0 if ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        lines, code = _run(args)
    except ParseError as exc:
        print(f"exactreal: {exc}", file=sys.stderr)
        print(exc.pointer(), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"exactreal: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(lines)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())

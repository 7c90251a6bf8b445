"""Command line entry point: ``weylbrauer verify <suite>`` and ``weylbrauer eval <expr>``."""

from __future__ import annotations

import argparse
import sys

from weylbrauer.cli.suites import SUITES, run_suite
from weylbrauer.expr import ExprError
from weylbrauer.weyl import format_element

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="weylbrauer", description="Exact verification of Weyl/Azumaya/Brauer/DPic claims.")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--p", type=int, default=3)
    v.add_argument("--n", type=int, default=1)
    v.add_argument("--c", type=int, default=1)
    v.add_argument("--cprime", type=int, default=1)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--concrete", action="store_true", help="group-law: also build the concrete certificate")
    v.add_argument("--budget", type=float, default=None, help="seconds allowed for fraction-free elimination")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--out", default=None, help="write the report here instead of stdout")

    e = sub.add_parser("eval", help="evaluate an expression and print its normal form")
    e.add_argument("expr")
    e.add_argument("--p", type=int, default=3)
    e.add_argument("--n", type=int, default=1)
    e.add_argument("--tensor", action="store_true", help="y1..y2n in scope (tensor square over the center)")
    return ap


def _verify(args) -> int:
    params = {"p": args.p, "n": args.n, "c": args.c, "cprime": args.cprime, "seed": args.seed}
    if args.concrete:
        params["concrete"] = True
    if args.budget is not None:
        params["budget"] = args.budget
    try:
        report = run_suite(args.suite, params)
    except ValueError as exc:
        print(f"weylbrauer: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.to_json() if args.format == "json" else report.to_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_PASS if report.verdict == "pass" else EXIT_FAIL


def _eval(args) -> int:
    from weylbrauer.envs import TensorSquare, WeylEnv
    from weylbrauer.weyl import WeylContext

    try:
        if args.tensor:
            ts = TensorSquare(args.p, args.n)
            coords = ts.reduce(ts.parse(args.expr))
            if not coords:
                print("0")
            for (ex, ey), poly in sorted(coords.items(), reverse=True):
                print(f"({poly}) * x^{list(ex)} (x) y^{list(ey)}")
        else:
            env = WeylEnv(WeylContext(args.p, args.n))
            print(format_element(env.parse(args.expr)))
    except (ExprError, ValueError) as exc:
        print(f"weylbrauer: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_PASS


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    if args.command == "verify":
        return _verify(args)
    return _eval(args)


if __name__ == "__main__":
    sys.exit(main())

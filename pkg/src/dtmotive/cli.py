"""Command line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or
configuration errors (including unusable primes).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from .catalog import CASES, CATALOG, POTENTIALS
from .counting import CSV_HEADER, CountRecord, count_all_lambdas, cubic_class_reps, lambda_class
from .errors import BadPrime, DtMotiveError, Mismatch, ParseError
from .expr import parse_series
from .motive import gl_motive
from .pipeline import MotiveTable, fiber, induct_delta
from .series import pleth_exp, pleth_log
from .superpotential import cell_equations, fiber_spec, parse_potential
from .verify import run_suite

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits with 2 as well; keep the message short
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _primes(text: str) -> list[int]:
    try:
        primes = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad prime list {text!r}") from None
    if not primes:
        raise argparse.ArgumentTypeError("empty prime list")
    return primes


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dtmotive", description="Motivic DT computations for cubic superpotentials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, formats=("json", "plain")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", type=Path, help="write output here instead of stdout")

    p = sub.add_parser("catalog", help="list the reference motives")
    p.add_argument("--case", choices=CASES + ("all",), default="all")
    common(p, ("plain", "json"))

    p = sub.add_parser("verify", help="run the symbolic and counting checks")
    p.add_argument("--case", choices=CASES + ("all",), default="all")
    p.add_argument("--primes", type=_primes, default=None, help="comma separated, e.g. 5,7,13")
    p.add_argument("--jobs", type=_positive, default=1)
    common(p)

    p = sub.add_parser("count", help="point counts of a fiber or Brauer-Severi cell")
    p.add_argument("--potential", help="e.g. 'XYZ - XZY - 1/3 XXX'")
    p.add_argument("--case", choices=CASES, help="use a worked potential instead of --potential")
    p.add_argument("--n", type=_positive, default=2)
    p.add_argument("--cell", type=int, choices=(1, 2, 3), help="count a Brauer-Severi cell (n=2, three letters)")
    p.add_argument("--lambda", dest="lam", choices=("0", "1", "all"), default="all")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--q", type=int)
    group.add_argument("--primes", type=_primes)
    p.add_argument("--jobs", type=_positive, default=1)
    common(p, ("csv", "json", "plain"))

    p = sub.add_parser("exp", help="plethystic Exp (or Log) of a series")
    p.add_argument("--bracket", required=True, help="e.g. '(2L-1)/(L-1)*t/(1-t)'")
    p.add_argument("--order", type=_positive, default=2)
    p.add_argument("--log", action="store_true", help="take Log instead of Exp")
    common(p, ("plain", "json"))

    p = sub.add_parser("induct", help="Brauer-Severi induction from a motive table")
    p.add_argument("--table", type=Path, required=True)
    p.add_argument("--n", type=_positive, default=2)
    common(p)
    return parser


def _emit(text: str, out: Path | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _dumps(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def cmd_catalog(args) -> int:
    cases = CASES if args.case == "all" else (args.case,)
    if args.format == "json":
        data = {case: {"potential": POTENTIALS[case],
                       "entries": [e.to_json() for e in CATALOG[case].values()]} for case in cases}
        _emit(_dumps(data), args.out)
        return EXIT_OK
    lines = []
    for case in cases:
        lines.append(f"[{case}] W = {POTENTIALS[case]}")
        width = max(len(name) for name in CATALOG[case])
        for e in CATALOG[case].values():
            mark = "  (derived)" if e.derived else ""
            lines.append(f"  {e.name:<{width}}  {e.value}{mark}")
            lines.append(f"  {'':<{width}}    from: {e.source}")
    _emit("\n".join(lines), args.out)
    return EXIT_OK


DEFAULT_PRIMES = {"quantum": [2, 5, 7], "weyl": [5, 7, 13]}


def cmd_verify(args) -> int:
    cases = CASES if args.case == "all" else (args.case,)
    results = [run_suite(case, args.primes or DEFAULT_PRIMES[case], args.jobs) for case in cases]
    if args.format == "json":
        _emit(_dumps({"ok": all(r.ok for r in results), "suites": [r.to_json() for r in results]}), args.out)
    else:
        lines = []
        for r in results:
            for c in r.reports:
                where = f" [{c.location}]" if c.location else ""
                lines.append(f"{r.case:8} {c.status:7} {c.check}{where}")
                if c.status == "fail":
                    lines.append(f"{'':17}got      {c.lhs}")
                    lines.append(f"{'':17}expected {c.rhs}")
        _emit("\n".join(lines), args.out)
    failures = [c for r in results for c in r.failures]
    if failures:
        first = failures[0]
        print(f"verification failed: {first.check} {first.location}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_count(args) -> int:
    if (args.potential is None) == (args.case is None):
        raise UsageError("give exactly one of --potential or --case")
    W = parse_potential(args.potential or POTENTIALS[args.case])
    if args.cell is not None:
        if args.n != 2 or W.m != 3:
            raise UsageError("--cell needs --n 2 and a potential in three letters")
        poly = cell_equations(W)[args.cell - 1].equation
    else:
        poly = fiber_spec(W, args.n).equation
    primes = [args.q] if args.q is not None else (args.primes or [5])
    records: list[CountRecord] = []
    for q in primes:
        start = time.perf_counter()
        counts = count_all_lambdas(poly, q, jobs=args.jobs)
        elapsed = int((time.perf_counter() - start) * 1000)
        if args.lam == "0":
            lams = [0]
        elif args.lam == "1":
            lams = cubic_class_reps(q)
        else:
            lams = [0] + cubic_class_reps(q)
        records.extend(CountRecord(q, lambda_class(q, lam), counts[lam], elapsed, lam) for lam in lams)
    if args.format == "csv":
        _emit("\n".join([CSV_HEADER] + [r.csv_row() for r in records]), args.out)
    elif args.format == "json":
        # timings are left out so identical runs give identical JSON
        rows = [{"q": r.q, "lambda_class": r.lambda_class, "lambda": r.lambda_value, "count": r.count}
                for r in records]
        _emit(_dumps({"potential": str(W), "n": args.n, "cell": args.cell, "counts": rows}), args.out)
    else:
        _emit("\n".join(f"q={r.q:<4} lambda={r.lambda_value:<3} {r.lambda_class:<14} {r.count}" for r in records),
              args.out)
    return EXIT_OK


def cmd_exp(args) -> int:
    f = parse_series(args.bracket, args.order)
    g = pleth_log(f) if args.log else pleth_exp(f)
    if args.format == "json":
        _emit(_dumps({"op": "log" if args.log else "exp", "input": args.bracket, "result": g.to_json()}), args.out)
    else:
        _emit("\n".join(f"t^{n}: {c}" for n, c in enumerate(g)), args.out)
    return EXIT_OK


def cmd_induct(args) -> int:
    try:
        T = MotiveTable.from_json(args.table.read_text())
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read motive table {args.table}: {exc}") from None
    ratio = induct_delta(args.n, T)
    fibers = {}
    for tag in (0, 1):
        try:
            fibers[str(tag)] = str(fiber(args.n, tag, T))
        except DtMotiveError:
            fibers[str(tag)] = None
    data = {"n": args.n, "delta_over_gl": ratio.to_json(), "delta_over_gl_text": str(ratio),
            "delta": str(ratio * gl_motive(args.n)), "fibers": fibers}
    if args.format == "json":
        _emit(_dumps(data), args.out)
    else:
        _emit("\n".join([f"Delta M_{args.n} / [GL_{args.n}] = {ratio}",
                         f"Delta M_{args.n} = {data['delta']}"] +
                        [f"M_{args.n}({tag}) = {v}" for tag, v in fibers.items()]), args.out)
    return EXIT_OK


COMMANDS = {"catalog": cmd_catalog, "verify": cmd_verify, "count": cmd_count, "exp": cmd_exp, "induct": cmd_induct}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"dtmotive: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BadPrime, ParseError) as exc:
        print(f"dtmotive: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Mismatch as exc:
        print(f"dtmotive: mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (DtMotiveError, ValueError) as exc:
        print(f"dtmotive: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

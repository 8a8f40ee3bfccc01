"""Command line: ``hyperflow {lambda,verify,flow,selftest}``.

Exit codes: 0 verified, 1 a mathematical check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from hyperflow.derivations import check_op_index
from hyperflow.jets import FlowSpec, flow_sample, time_grid
from hyperflow.poly import Coordinate, to_text
from hyperflow.series import lambda_table
from hyperflow.verify import GOLDEN_DIR, SUITES, run_suite, selftest, validate_bounds, worker_count

LAMBDA_JSON_SCHEMA = {
    "type": "object",
    "patternProperties": {r"^lambda_[0-9]+$": {"type": "string"}},
    "additionalProperties": False,
    "minProperties": 1,
}

SUITE_BOUNDS = {
    "commute": {"max_k": 5, "max_l": 5, "max_j": 7},
    "lambda": {"max_k": 5, "max_j": 7},
    "closed-forms": {"max_k": 5, "max_j": 7},
    "series": {"max_k": 5, "order": 8},
    "j1-specials": {"max_k": 15},
}


class InputError(Exception):
    """Malformed user input (exit code 2)."""


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def format_lambda_table(max_j: int, fmt: str) -> str:
    table = lambda_table(max_j)
    if fmt == "json":
        doc = {f"lambda_{2 * j + 2}": to_text(p) for j, p in table.items()}
        return json.dumps(doc, indent=2) + "\n"
    return "".join(f"lambda_{2 * j + 2} = {to_text(p)}\n" for j, p in table.items())


def cmd_lambda(args) -> int:
    _emit(format_lambda_table(args.max_j, args.format), args.output)
    return 0


def cmd_verify(args, parser) -> int:
    defaults = SUITE_BOUNDS[args.suite]
    bounds = {}
    for name, default in defaults.items():
        value = getattr(args, name)
        bounds[name] = default if value is None else value
    try:
        validate_bounds(args.suite, bounds)
        workers = worker_count()
    except ValueError as exc:
        parser.error(str(exc))
    report = run_suite(args.suite, bounds, workers)
    print(report.text(verbose=args.verbose))
    if args.report:
        args.report.write_text(report.dumps())
    return 0 if report.passed else 1


def load_assignment(path: Path) -> dict[Coordinate, Fraction]:
    """Read ``{"b[1,1]": "3/2", ...}``; values are rational strings or integers."""
    try:
        doc = json.loads(path.read_text())
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read init file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("init file must hold a JSON object")
    point = {}
    for key, value in doc.items():
        try:
            c = Coordinate.parse(key)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if isinstance(value, bool) or not isinstance(value, (str, int)):
            raise InputError(f"value for {key} must be a rational string, got {value!r}")
        try:
            point[c] = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"value for {key} is not a rational: {value!r}") from exc
    return point


def format_flow(table, fmt: str) -> str:
    if fmt == "json":
        doc = {
            "warnings": table.warnings,
            "columns": table.columns,
            "rows": [dict(zip(table.columns, row)) for row in table.rows],
            "lambda_jets": {
                f"lambda_{2 * j + 2}": [str(a) for a in jet.coeffs] for j, jet in table.lambda_jets.items()
            },
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    for w in table.warnings:
        buf.write(f"# warning: {w}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([f"{x:.17g}" for x in row])
    return buf.getvalue()


def cmd_flow(args, parser) -> int:
    try:
        check_op_index(args.k)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        initial = load_assignment(args.init)
        coords = [Coordinate.parse(c) for c in args.coords]
        spec = FlowSpec(
            k=args.k,
            initial=initial,
            order=args.order,
            coords=coords,
            lambdas=args.lambdas,
            times=time_grid(args.t0, args.t1, args.steps),
        )
    except InputError as exc:
        print(f"hyperflow flow: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        parser.error(str(exc))
    table = flow_sample(spec)
    _emit(format_flow(table, args.format), args.output)
    if not table.conserved:
        for j, jet in table.lambda_jets.items():
            if not jet.is_constant():
                print(f"lambda_{2 * j + 2} jet is not constant: {[str(a) for a in jet.coeffs]}", file=sys.stderr)
        return 1
    return 0


def cmd_selftest(args) -> int:
    report = selftest(args.golden_dir)
    print(report.text())
    if args.report:
        args.report.write_text(report.dumps())
    return 0 if report.passed else 1


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperflow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda", help="print the lambda polynomials")
    p.add_argument("--max-j", type=_positive_int, default=4)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", type=Path)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--max-k", type=int)
    p.add_argument("--max-l", type=int)
    p.add_argument("--max-j", type=int)
    p.add_argument("--order", type=int, help="series truncation order (series suite)")
    p.add_argument("--report", type=Path, help="write the JSON report here")
    p.add_argument("--verbose", action="store_true", help="list every case, not only failures")

    p = sub.add_parser("flow", help="sample the time-Taylor jets of a D_k flow")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--init", type=Path, required=True, help='JSON object like {"b[1,1]": "3/2"}')
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--t1", type=float, default=0.1)
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--coords", nargs="*", default=["b[1,1]"])
    p.add_argument("--lambdas", nargs="*", type=_positive_int, default=[1, 2])
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", type=Path)

    p = sub.add_parser("selftest", help="run the built-in smoke battery")
    p.add_argument("--golden-dir", type=Path, default=GOLDEN_DIR)
    p.add_argument("--report", type=Path)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "lambda":
        return cmd_lambda(args)
    if args.command == "verify":
        # suite-specific bounds only; reject flags the suite does not take
        allowed = set(SUITE_BOUNDS[args.suite])
        for name in ("max_k", "max_l", "max_j", "order"):
            if getattr(args, name) is not None and name not in allowed:
                parser.error(f"--{name.replace('_', '-')} does not apply to suite {args.suite}")
        return cmd_verify(args, parser)
    if args.command == "flow":
        return cmd_flow(args, parser)
    return cmd_selftest(args)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``reinhardt {classify|eval|grid|verify}``.

Exit codes: 0 success, 2 parse error, 3 domain violation, 4 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .domain import (
    DEFAULT_MAX_DENOMINATOR,
    DEFAULT_TOLERANCE,
    ReinhardtDomain,
    member_domain,
    parse_alpha,
    parse_point,
    require_in_domain,
)
from .errors import DimensionMismatch, NotInDomain, ParseError, PreconditionViolation
from .metrics import Evaluation, evaluate
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_VERIFY = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def fmt(x: float) -> str:
    return "%.17g" % x


def fmt_complex(w: complex) -> str:
    if w.imag == 0:
        return fmt(w.real)
    return f"{fmt(w.real)}{'+' if w.imag >= 0 else '-'}{fmt(abs(w.imag))}i"


def fmt_point(p) -> str:
    return ",".join(fmt_complex(w) for w in p)


def _domain(args) -> ReinhardtDomain:
    try:
        alpha = parse_alpha(args.alpha)
    except ParseError as exc:
        raise CliError(f"invalid --alpha: {exc}", EXIT_PARSE) from exc
    if alpha.n < 2:
        raise CliError("invalid --alpha: D_alpha needs at least two exponents", EXIT_PARSE)
    return ReinhardtDomain.build(alpha, args.type, args.max_denominator, args.tolerance)


def _point(spec: str, n: int, label: str):
    try:
        p = parse_point(spec)
    except ParseError as exc:
        raise CliError(f"invalid {label}: {exc}", EXIT_PARSE) from exc
    if len(p) != n:
        raise CliError(f"invalid {label} {spec!r}: expected {n} coordinates, got {len(p)}", EXIT_PARSE)
    return p


def _in_domain(domain: ReinhardtDomain, p, label: str):
    try:
        return require_in_domain(domain.alpha, p, label)
    except NotInDomain as exc:
        which = "C^n(alpha)" if exc.reason == "ambient" else "|z^alpha| < 1"
        raise CliError(f"{label} {fmt_point(p)} is not in D_alpha ({which} failed)", EXIT_DOMAIN) from exc


def _value(mv, mode: str):
    if mv.value is None:
        return None if mode == "json" else "unknown"
    return mv.value if mode == "json" else fmt(mv.value)


def _num(x):
    if x is None:
        return None
    return int(x) if float(x).is_integer() else x


# -- classify -------------------------------------------------------------------


def cmd_classify(args) -> int:
    domain = _domain(args)
    print(json.dumps(domain.classification.to_json()))
    return EXIT_OK


# -- eval -----------------------------------------------------------------------


def _row_json(p, ev: Evaluation) -> dict:
    inv = ev.invariants
    return {
        "point": [[w.real, w.imag] for w in p],
        "m": _value(ev.m, "json"),
        "g": _value(ev.g, "json"),
        "s": _value(ev.s, "json"),
        "branch": {"m": ev.m.branch.value, "g": ev.g.branch.value, "s": ev.s.branch.value},
        "sigma": inv.sigma,
        "mu": _num(inv.mu),
        "r": _num(inv.r),
    }


EVAL_CSV_HEADER = ["point", "m", "g", "s", "branch_m", "branch_g", "branch_s", "sigma", "mu", "r"]


def _row_csv(p, ev: Evaluation) -> list:
    inv = ev.invariants
    return [
        fmt_point(p), _value(ev.m, "csv"), _value(ev.g, "csv"), _value(ev.s, "csv"),
        ev.m.branch.value, ev.g.branch.value, ev.s.branch.value,
        inv.sigma, "" if inv.mu is None else fmt(inv.mu), fmt(inv.r),
    ]


def _read_points_file(path: str) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read points file: {exc}", EXIT_PARSE) from exc
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> int:
    domain = _domain(args)
    a = _in_domain(domain, _point(args.base, domain.n, "--base"), "base point")
    specs = list(args.point or [])
    if args.points_file:
        specs.extend(_read_points_file(args.points_file))
    if not specs:
        raise CliError("no query points: give --point or --points-file", EXIT_PARSE)
    pts = [_in_domain(domain, _point(s, domain.n, "--point"), "point") for s in specs]
    rows = [(p, evaluate(domain, a, p)) for p in pts]

    if args.format == "json":
        doc = {
            "alpha": list(domain.alpha.entries),
            "classification": domain.classification.to_json(),
            "base": [[w.real, w.imag] for w in a],
            "rows": [_row_json(p, ev) for p, ev in rows],
        }
        text = json.dumps(doc, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(EVAL_CSV_HEADER)
        for p, ev in rows:
            writer.writerow(_row_csv(p, ev))
        text = buf.getvalue()
    else:
        lines = []
        for p, ev in rows:
            inv = ev.invariants
            lines.append(
                f"z=({fmt_point(p)})  m={_value(ev.m, 'plain')}  s={_value(ev.s, 'plain')}  "
                f"g={_value(ev.g, 'plain')}  [sigma={inv.sigma} mu={_num(inv.mu)} r={_num(inv.r)}; "
                f"{ev.m.branch.value}/{ev.s.branch.value}/{ev.g.branch.value}]"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


# -- grid -------------------------------------------------------------------------


def _parse_range(spec: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in spec.split(":"))
    except ValueError as exc:
        raise CliError(f"invalid --range {spec!r}: expected LO:HI", EXIT_PARSE) from exc
    return lo, hi


def grid_rows(domain: ReinhardtDomain, a, axes, ranges, resolution, fixed):
    """Yield (node coordinates, Evaluation) for every in-domain node of the slice."""
    axes_values = [np.linspace(lo, hi, res) for (lo, hi), res in zip(ranges, resolution)]
    mesh = np.meshgrid(*axes_values, indexing="ij")
    nodes = np.stack([m.ravel() for m in mesh], axis=-1)
    for node in nodes:
        z = list(fixed)
        for ax, val in zip(axes, node):
            z[ax] = complex(float(val))
        z = tuple(z)
        if not member_domain(domain.alpha, z):
            continue
        yield tuple(float(v) for v in node), evaluate(domain, a, z)


def cmd_grid(args) -> int:
    domain = _domain(args)
    a = _in_domain(domain, _point(args.base, domain.n, "--base"), "base point")
    try:
        axes = [int(x) - 1 for x in args.axes.split(",")]
    except ValueError as exc:
        raise CliError(f"invalid --axes {args.axes!r}", EXIT_PARSE) from exc
    if not 1 <= len(axes) <= 2 or any(not 0 <= ax < domain.n for ax in axes) or len(set(axes)) != len(axes):
        raise CliError(f"invalid --axes {args.axes!r}: one or two distinct coordinates in 1..{domain.n}", EXIT_PARSE)
    ranges = [_parse_range(r) for r in (args.range or ["0:1"])]
    if len(ranges) == 1:
        ranges = ranges * len(axes)
    try:
        resolution = [int(x) for x in str(args.resolution).split(",")]
    except ValueError as exc:
        raise CliError(f"invalid --resolution {args.resolution!r}", EXIT_PARSE) from exc
    if len(resolution) == 1:
        resolution = resolution * len(axes)
    if len(ranges) != len(axes) or len(resolution) != len(axes) or any(r < 1 for r in resolution):
        raise CliError("--range and --resolution must match the number of axes", EXIT_PARSE)
    fixed = _point(args.fixed, domain.n, "--fixed") if args.fixed else tuple(1 + 0j for _ in range(domain.n))

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"coord{k + 1}" for k in range(len(axes))] + ["m", "s", "g"])
    for node, ev in grid_rows(domain, a, axes, ranges, resolution, fixed):
        writer.writerow([fmt(v) for v in node] + [_value(ev.m, "csv"), _value(ev.s, "csv"), _value(ev.g, "csv")])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


# -- verify ------------------------------------------------------------------------


def cmd_verify(args) -> int:
    domain = _domain(args)
    a = _in_domain(domain, _point(args.base, domain.n, "--base"), "base point")
    try:
        reports = run_suite(domain, a, args.suite, seed=args.seed, count=args.count, tol=args.check_tol)
    except PreconditionViolation as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    doc = [r.to_json() for r in reports]
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAILED {r.name}: max_violation={r.max_violation!r} > {r.tolerance!r}", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reinhardt",
        description="Invariant functions on elementary Reinhardt domains D_alpha.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-a", "--alpha", required=True, help='exponent vector, e.g. "3/2,1,-2"')
    common.add_argument("--type", choices=("auto", "rational", "irrational"), default="auto",
                        help="override rational/irrational detection")
    common.add_argument("--max-denominator", type=int, default=DEFAULT_MAX_DENOMINATOR)
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                        help="rational detection tolerance")
    common.add_argument("--out", help="write output to this file instead of stdout")

    sub.add_parser("classify", parents=[common], help="classify alpha as rational or irrational type")

    p = sub.add_parser("eval", parents=[common], help="evaluate m, s and g at query points")
    p.add_argument("--base", required=True, help='base point a, e.g. "0,0"')
    p.add_argument("--point", action="append", help="query point (repeatable)")
    p.add_argument("--points-file", help="file with one query point per line")
    p.add_argument("--format", choices=("json", "csv", "plain"), default="json")

    p = sub.add_parser("grid", parents=[common], help="export m, s, g on a 1D or 2D slice as CSV")
    p.add_argument("--base", required=True)
    p.add_argument("--axes", default="1,2", help="1-based coordinates to vary, e.g. 1,2")
    p.add_argument("--range", action="append", help="LO:HI per axis (one value applies to all)")
    p.add_argument("--resolution", default="50", help="nodes per axis, e.g. 50 or 40,60")
    p.add_argument("--fixed", help="values of the remaining coordinates (full point literal)")

    p = sub.add_parser("verify", parents=[common], help="run verification checks")
    p.add_argument("--base", required=True)
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--check-tol", type=float, default=None,
                   help="override the tolerance of every selected check")
    return parser


COMMANDS = {"classify": cmd_classify, "eval": cmd_eval, "grid": cmd_grid, "verify": cmd_verify}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"reinhardt: error: {exc}", file=sys.stderr)
        return exc.code
    except DimensionMismatch as exc:
        print(f"reinhardt: error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point.  All numeric output is exact text."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import cocycle as cz
from .dedekind import dedekind_rademacher
from .harness import SUITES, Bounds, emit_table, run_suite
from .lattice import parse_matrix, parse_point
from .scalars import parse_quad, render_quad, render_rational


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _rows_csv(rows: list[dict], out) -> None:
    if not rows:
        return
    writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def _cmd_eval_zeta0(args, out) -> int:
    value = cz.zeta0(args.gamma, args.x, args.tau)
    _dump({"value": render_quad(value), "is_rational": value.is_rational}, out)
    return 0


def _cmd_eval_zeta0_rational(args, out) -> int:
    try:
        value = cz.zeta0_rational_case(args.gamma, args.x)
    except cz.HypothesisError as exc:
        _dump({"error": exc.code, "message": str(exc)}, out)
        return 2
    _dump({"value": render_rational(value), "is_rational": True}, out)
    return 0


def _cmd_eval_dedekind(args, out) -> int:
    _dump({"value": render_rational(dedekind_rademacher(args.a, args.c, args.x))}, out)
    return 0


def _emit(table: dict, fmt: str, out) -> None:
    if fmt == "csv":
        _rows_csv(table["rows"], out)
    else:
        _dump(table, out)


def _cmd_ehrhart(args, out) -> int:
    params = {"gamma": args.gamma, "ell": args.ell}
    if args.m_max is not None:
        params["m_max"] = args.m_max
    _emit(emit_table("ehrhart", params), args.out, out)
    return 0


def _cmd_hayes(args, out) -> int:
    table = emit_table("hayes", {"gamma": args.gamma, "m": args.m, "tau": args.tau})
    _emit(table, args.out, out)
    return 0 if all(r["residual"] == "0" for r in table["rows"]) else 1


def _cmd_verify(args, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    bounds = Bounds(max_entry=args.max_entry, max_den=args.max_den, c_max=args.c_max)
    reports = [run_suite(n, args.trials, args.seed, bounds) for n in names]
    _dump([r.to_dict(include_timing=args.timing) for r in reports], out)
    return 0 if all(r.ok for r in reports) else 1


def _cmd_table(args, out) -> int:
    params = {"gamma": args.gamma}
    if args.kind == "theorem3":
        if args.gamma_prime is None:
            raise ValueError("--gamma-prime is required for the theorem3 table")
        params["gamma_prime"] = args.gamma_prime
    if args.ell is not None:
        params["ell"] = args.ell
    if args.m_max is not None:
        params["m_max"] = args.m_max
    if args.m is not None:
        params["m"] = args.m
    if args.tau is not None:
        params["tau"] = args.tau
    _emit(emit_table(args.kind, params), args.out, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="bhcocycle",
        description="Exact evaluation of the s=0 Barnes-Hurwitz cocycle, Dedekind-Rademacher sums "
        "and Ehrhart quasi-polynomials of the T_gamma triangles.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval-zeta0", help="cocycle value at (gamma, x, tau)")
    s.add_argument("--gamma", type=parse_matrix, required=True, help="a,b,c,d")
    s.add_argument("--x", type=parse_point, required=True, help="p/q,r/s")
    s.add_argument("--tau", type=parse_quad, required=True, help='e.g. "sqrt(3)" or "1/2+1/2*sqrt(5)"')
    s.set_defaults(func=_cmd_eval_zeta0)

    s = sub.add_parser("eval-zeta0-rational", help="rational value at a hyperbolic gamma fixing x")
    s.add_argument("--gamma", type=parse_matrix, required=True)
    s.add_argument("--x", type=parse_point, required=True)
    s.set_defaults(func=_cmd_eval_zeta0_rational)

    s = sub.add_parser("eval-dedekind", help="Dedekind-Rademacher sum S(a, c; x)")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--x", type=parse_point, required=True)
    s.set_defaults(func=_cmd_eval_dedekind)

    s = sub.add_parser("ehrhart", help="counts and quasi-polynomial coefficients of T_gamma/ell")
    s.add_argument("--gamma", type=parse_matrix, required=True)
    s.add_argument("--ell", type=int, default=None, help="defaults to the content of gamma")
    s.add_argument("--m-max", type=int, default=None)
    s.add_argument("--out", choices=("json", "csv"), default="json")
    s.set_defaults(func=_cmd_ehrhart)

    s = sub.add_parser("hayes", help="both sides of the Hayes-type identity")
    s.add_argument("--gamma", type=parse_matrix, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--tau", type=parse_quad, default=parse_quad("sqrt(2)"))
    s.add_argument("--out", choices=("json", "csv"), default="json")
    s.set_defaults(func=_cmd_hayes)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", choices=("all", *SUITES), required=True)
    s.add_argument("--trials", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-entry", type=int, default=50)
    s.add_argument("--max-den", type=int, default=30)
    s.add_argument("--c-max", type=int, default=None)
    s.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")
    s.set_defaults(func=_cmd_verify)

    s = sub.add_parser("table", help="emit a table of exact rows")
    s.add_argument("--kind", choices=("theorem3", "ehrhart", "hayes"), required=True)
    s.add_argument("--gamma", type=parse_matrix, required=True)
    s.add_argument("--gamma-prime", type=parse_matrix, default=None)
    s.add_argument("--ell", type=int, default=None)
    s.add_argument("--m-max", type=int, default=None)
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--tau", type=parse_quad, default=None)
    s.add_argument("--out", choices=("json", "csv"), default="json")
    s.set_defaults(func=_cmd_table)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ValueError as exc:
        _dump({"error": type(exc).__name__, "message": str(exc)}, out)
        return 2


def run(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture its output."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())

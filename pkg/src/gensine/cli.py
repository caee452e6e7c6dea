"""Command-line interface: ``gensine <command> --m M --n N ...``.

Commands: classify, eval, table, constants, taylor, verify.  Output goes to
stdout as CSV (default) or JSON; diagnostics go to stderr.  Exit codes are
0 ok, 1 verify failed, 2 bad parameters, 3 out of domain, 4 no convergence.

Points and ranges accept simple arithmetic with the tokens ``pi_pn`` and
``pi``, e.g. ``--x 0.75*pi_pn`` or ``--to "pi_pn + 0.1"``.
"""

from __future__ import annotations

import argparse
import ast
import csv
import json
import math
import operator
import sys
from typing import Sequence

import numpy as np

from .constants import (
    base_domain,
    constant_set,
    maximal_interval,
    mu_closed,
    nu_closed,
    taylor_radius,
)
from .errors import (
    ConvergenceFailure,
    DomainError,
    InvalidParameter,
    NotAnalytic,
    OutOfDomain,
    SingularReversion,
)
from .evaluator import sin_pn
from .params import CaseClass, Params, classify, conjugate, from_conjugate, parse_p
from .quadrature import Tolerance
from .series import DEFAULT_ORDER, estimate_radius, taylor_at_center
from .verify import run_audit

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_BAD_PARAMS = 2
EXIT_DOMAIN = 3
EXIT_CONVERGENCE = 4

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}


class _UsageError(Exception):
    pass


def parse_point(text: str, pi_value: float) -> float:
    """Evaluate a numeric expression in which ``pi_pn`` stands for pi_{p,n}."""
    names = {"pi_pn": pi_value, "pi": math.pi}

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) \
                and not isinstance(node.value, bool):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](walk(node.left), walk(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](walk(node.operand))
        raise _UsageError(f"unsupported expression {text!r}")

    try:
        value = walk(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError) as exc:
        raise _UsageError(f"cannot parse {text!r}: {exc}") from exc
    if not math.isfinite(value):
        raise _UsageError(f"{text!r} is not a finite number")
    return value


# ---------------------------------------------------------------------------
# output


def _fmt(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    return str(value)


def _json_value(value):
    # JSON has no infinity or NaN literals; those become strings
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            return _fmt(value)
        return value
    return value


def emit_rows(columns: Sequence[str], rows: Sequence[Sequence], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        records = [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]
        json.dump(records, out, indent=1)
        out.write("\n")
        return
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])


def emit_pairs(pairs: Sequence[tuple], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump({k: _json_value(v) for k, v in pairs}, out, indent=1)
        out.write("\n")
        return
    emit_rows(("key", "value"), pairs, fmt, out)


# ---------------------------------------------------------------------------
# commands


def _params(args) -> Params:
    if args.p is not None:
        return parse_p(args.p, args.n)
    return from_conjugate(args.m, args.n)


def _tol(args) -> Tolerance:
    try:
        return Tolerance(abs_tol=args.tol)
    except ValueError as exc:
        raise InvalidParameter(str(exc)) from exc


def _interval_rows(params, tol):
    iv = maximal_interval(params, tol)
    return [
        ("interval", str(iv)),
        ("interval_lo", iv.lo),
        ("interval_hi", iv.hi),
        ("interval_length", iv.length),
    ]


def cmd_classify(args) -> int:
    params = _params(args)
    tol = _tol(args)
    info = conjugate(params)
    case = classify(params)
    rows = [
        ("p", str(params.p)),
        ("p_conj", str(params.p_conj)),
        ("n", params.n),
        ("case", case.name),
    ]
    if case is CaseClass.NotAnalyticAtHalfPi:
        dom = base_domain(params, tol)
        rows += [
            ("base_domain", str(dom)),
            ("base_domain_lo", dom.lo),
            ("base_domain_hi", dom.hi),
        ]
    else:
        rows += [("m", info.m)]
        rows += _interval_rows(params, tol)
        rows += [("taylor_radius", taylor_radius(params, tol))]
        if case is CaseClass.Case1_EvenEven:
            rows += [("period", 2.0 * constant_set(params, tol).pi_pn)]
    emit_pairs(rows, args.format)
    return EXIT_OK


def cmd_eval(args) -> int:
    params = _params(args)
    tol = _tol(args)
    x = parse_point(args.x, constant_set(params, tol).pi_pn)
    r = sin_pn(params, x, tol)
    emit_pairs([
        ("x", x),
        ("y", r.y),
        ("dy", r.dy),
        ("branch", r.branch.kind.name),
        ("branch_t", r.branch.t),
        ("residual", r.residual),
    ], args.format)
    return EXIT_OK


def cmd_table(args) -> int:
    params = _params(args)
    tol = _tol(args)
    if args.steps < 1:
        raise InvalidParameter("--steps must be >= 1")
    pi_value = constant_set(params, tol).pi_pn
    a = parse_point(getattr(args, "from"), pi_value)
    b = parse_point(args.to, pi_value)
    rows = []
    for x in np.linspace(a, b, args.steps + 1):
        r = sin_pn(params, float(x), tol)
        rows.append((float(x), r.y, r.dy))
    emit_rows(("x", "y", "dy"), rows, args.format)
    return EXIT_OK


def cmd_constants(args) -> int:
    params = _params(args)
    tol = _tol(args)
    c = constant_set(params, tol)
    rows = [
        ("pi_pn", c.pi_pn),
        ("half_pi_pn", c.half_pi),
        ("mu", c.mu),
        ("nu", c.nu),
    ]
    if params.p_num < params.n * params.p_den:
        rows += [
            ("mu_closed", mu_closed(params, c.pi_pn)),
            ("nu_closed", nu_closed(params, c.pi_pn)),
            ("mu_over_pi_pn", c.mu / c.pi_pn),
            ("nu_over_pi_pn", c.nu / c.pi_pn),
        ]
    if classify(params) is CaseClass.NotAnalyticAtHalfPi:
        rows += [("base_domain", str(base_domain(params, tol)))]
    else:
        rows += _interval_rows(params, tol)
    emit_pairs(rows, args.format)
    return EXIT_OK


def cmd_taylor(args) -> int:
    params = _params(args)
    if args.coeffs < 1:
        raise InvalidParameter("--coeffs must be >= 1")
    ts = taylor_at_center(params, args.coeffs)
    # the radius fit needs a long series regardless of how many are printed
    long_ts = ts if ts.K >= DEFAULT_ORDER else taylor_at_center(params, DEFAULT_ORDER)
    rows = [(f"b_{k}", b) for k, b in enumerate(ts.b)]
    rows += [
        ("center", ts.center),
        ("stride", ts.stride),
        ("radius_estimate", estimate_radius(long_ts)),
        ("mu", ts.radius_claimed),
    ]
    emit_pairs(rows, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _params(args)
    if args.grid < 20:
        raise InvalidParameter("--grid must be >= 20")
    reports = run_audit(params, args.grid)
    columns = ("check", "lhs", "rhs", "abs_err", "rel_err", "tolerance", "passed", "note")
    rows = [(r.check_name, r.lhs, r.rhs, r.abs_err, r.rel_err, r.tolerance, r.passed, r.note)
            for r in reports]
    emit_rows(columns, rows, args.format)
    failed = [r.check_name for r in reports if not r.passed]
    if failed:
        print(f"{len(failed)} check(s) failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    which = common.add_mutually_exclusive_group(required=True)
    which.add_argument("--m", type=int, help="conjugate exponent p' (so p = m/(m-1))")
    which.add_argument("--p", help="exponent p as NUM/DEN or an integer")
    common.add_argument("--n", type=int, required=True, help="exponent n >= 2")
    common.add_argument("--tol", type=float, default=1e-12, help="quadrature tolerance")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(
        prog="gensine",
        description="Generalized sine sin_{p,n}: evaluation, constants, series and audits.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="case class and maximal interval")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("eval", parents=[common], help="evaluate sin_{p,n} at one point")
    p.add_argument("--x", required=True, help="point, e.g. 0.5 or 0.75*pi_pn")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", parents=[common], help="x, y, dy rows on a uniform grid")
    p.add_argument("--from", required=True, dest="from", help="left end")
    p.add_argument("--to", required=True, help="right end")
    p.add_argument("--steps", type=int, required=True, help="number of intervals")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("constants", parents=[common], help="pi_{p,n}, mu, nu and closed forms")
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("taylor", parents=[common], help="Taylor coefficients at 1/2 pi_{p,n}")
    p.add_argument("--coeffs", type=int, default=10, help="number of coefficient blocks K")
    p.set_defaults(func=cmd_taylor)

    p = sub.add_parser("verify", parents=[common], help="run the identity audit")
    p.add_argument("--grid", type=int, default=100, help="grid size for sampled checks")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidParameter, _UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_PARAMS
    except (OutOfDomain, NotAnalytic, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ConvergenceFailure, SingularReversion, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE


if __name__ == "__main__":
    sys.exit(main())

"""Evaluation of sin_{p,n} on its maximal interval of real analyticity.

The base branch inverts F_{p,n}; beyond 1/2 pi_{p,n} the value comes from
reflection (p' even), from the inverse of G_{p,n} (p' odd), from oddness
(n even) and from 2 pi_{p,n}-periodicity (p', n both even).

Every inversion is a safeguarded Newton iteration in a variable in which the
equation is smooth with nonzero slope:

* near y = 1 the unknown is w = |1 - y| and the equation is raised to the
  power p', since (1/2 pi - F(1 - w))^p' is analytic in w;
* on unbounded branches the unknown is z = 1/|y| and the equation is raised
  to the power 1/q, q = n/p - 1, since the tail integral behaves like z^q.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from . import quadrature as quad
from .constants import constant_set, maximal_interval
from .errors import ConvergenceFailure, OutOfDomain, NotAnalytic
from .params import CaseClass, Params, classify, conjugate
from .quadrature import DEFAULT_TOL, Tolerance
from .series import eval_series_derivative, eval_series_gap, taylor_at_center

__all__ = [
    "BranchKind",
    "Branch",
    "EvalResult",
    "sin_base",
    "sin_pn",
    "d_sin_pn",
    "safeguarded_newton",
]

MAX_ITER = 60
XTOL = 1e-12
SERIES_WINDOW = 0.05


class BranchKind(enum.Enum):
    Base = "Base"
    OddMirror = "OddMirror"
    GBranch = "GBranch"
    ReflectMirror = "ReflectMirror"
    PeriodicReduce = "PeriodicReduce"


@dataclass(frozen=True)
class Branch:
    kind: BranchKind
    t: float  # reduced coordinate handed to the branch solver


@dataclass(frozen=True)
class EvalResult:
    y: float
    dy: float
    branch: Branch
    residual: float


def safeguarded_newton(
    fun: Callable[[float], tuple[float, float]],
    lo: float,
    hi: float,
    x0: float,
    xtol: float = XTOL,
    maxiter: int = MAX_ITER,
) -> float:
    """Root of an increasing function on [lo, hi] with ``fun(x) -> (f, f')``.

    The root must lie in the bracket; steps leaving it are replaced by
    bisection.  Stops once a Newton step is below ``xtol`` relative to the
    iterate, after one more polishing step.
    """
    x = min(max(x0, lo), hi)
    if not lo < x < hi:
        x = 0.5 * (lo + hi)
    converged = False
    for _ in range(maxiter):
        f, df = fun(x)
        if f == 0.0:
            return x
        if f > 0.0:
            hi = x
        else:
            lo = x
        step = f / df if df > 0.0 and math.isfinite(df) else math.nan
        x_new = x - step
        if not (lo < x_new < hi) or not math.isfinite(x_new):
            x_new = 0.5 * (lo + hi)
            step = x - x_new
        if converged:
            return x_new
        if abs(step) <= xtol * abs(x_new) or hi - lo <= 4e-16 * abs(x_new):
            converged = True
        x = x_new
        if lo == hi:
            return x
    raise ConvergenceFailure(f"Newton did not converge in {maxiter} iterations (bracket [{lo}, {hi}])")


# ---------------------------------------------------------------------------
# branch solvers; each returns (y, dy, residual)


def _phi1(params):
    """Phi'(0) = (p' n^(-1/p))^p', the slope of (1/2 pi - F(1-w))^p' at w = 0."""
    pc = conjugate(params).p_conj_real
    return (pc * params.n ** (-params.inv_p)) ** pc


def _solve_gap(params, target, piece, tol):
    """w in (0, 1] with piece(w) = target, piece ~ w^(1/p') near 0."""
    pc = conjugate(params).p_conj_real
    inv_p, n = params.inv_p, params.n
    goal = target ** pc

    def fun(w):
        val = piece(params, w, tol).value
        return val ** pc - goal, pc * val ** (pc - 1.0) * _kernel_gap(piece, w, n) ** (-inv_p)

    w0 = goal / _phi1(params)
    w = safeguarded_newton(fun, 0.0, 1.0, w0)
    return w, abs(piece(params, w, tol).value - target)


def _kernel_gap(piece, w, n):
    # |1 - y^n| with y = 1 -+ w, as w * sum_j y^j
    y = 1.0 - w if piece is quad.upper_gap else 1.0 + w
    acc = 1.0
    for _ in range(n - 1):
        acc = acc * y + 1.0
    return w * acc


def _solve_tail(params, target, piece, z_max, tol):
    """z in (0, z_max] with piece(z) = target, piece ~ z^q / q near 0."""
    inv_p, n = params.inv_p, params.n
    q = n * inv_p - 1.0
    e = 1.0 / q
    goal = target ** e
    sign = 1.0 if piece is quad.neg_tail else -1.0

    def fun(z):
        val = piece(params, z, tol).value
        d = z ** (q - 1.0) * (1.0 + sign * z ** n) ** (-inv_p)
        return val ** e - goal, e * val ** (e - 1.0) * d

    z0 = (q * target) ** e
    z = safeguarded_newton(fun, 0.0, z_max, z0)
    return z, abs(piece(params, z, tol).value - target)


def _series(params):
    return taylor_at_center(params)


def _use_series(params, dist, use_series):
    if not use_series or conjugate(params).m is None or dist == 0.0:
        return False
    c = constant_set(params)
    return dist < SERIES_WINDOW * min(c.half_pi, c.mu)


def _base_upper(params, x, tol, use_series):
    """0 <= x <= 1/2 pi: y in [0, 1]."""
    c = constant_set(params, tol)
    v = c.half_pi - x
    if v <= 0.0:
        return 1.0, 0.0, 0.0
    if x == 0.0:
        return 0.0, 1.0, 0.0
    if _use_series(params, v, use_series):
        ts = _series(params)
        w = -eval_series_gap(ts, -v)
        dy = eval_series_derivative(ts, -v)
        res = abs(quad.upper_gap(params, w, tol).value - v)
        return 1.0 - w, dy, res
    w, res = _solve_gap(params, v, quad.upper_gap, tol)
    dy = _kernel_gap(quad.upper_gap, w, params.n) ** params.inv_p
    return 1.0 - w, dy, res


def _base_negative_odd(params, x, tol):
    """n odd, x < 0: y < 0."""
    inv_p, n = params.inv_p, params.n
    c = constant_set(params, tol)
    at_minus_one = quad.neg_core(params, 1.0, tol).value
    s_target = -x
    if s_target <= at_minus_one:
        def fun(s):
            return (quad.neg_core(params, s, tol).value - s_target,
                    (1.0 + s ** n) ** (-inv_p))
        s = safeguarded_newton(fun, 0.0, 1.0, s_target)
        res = abs(quad.neg_core(params, s, tol).value - s_target)
        return -s, (1.0 + s ** n) ** inv_p, res
    if not math.isfinite(c.nu):
        # p >= n: F(-inf) = -inf, search s > 1 directly
        hi = 2.0
        while quad.neg_core(params, hi, tol).value < s_target:
            hi *= 2.0

        def fun(s):
            return (quad.neg_core(params, s, tol).value - s_target,
                    (1.0 + s ** n) ** (-inv_p))
        s = safeguarded_newton(fun, 1.0, hi, 0.5 * (1.0 + hi))
        res = abs(quad.neg_core(params, s, tol).value - s_target)
        return -s, (1.0 + s ** n) ** inv_p, res
    # F(y) = -nu + neg_tail(z), y = -1/z
    target = x + c.nu
    if target <= 0.0:
        raise OutOfDomain(f"x = {x} is at or beyond -nu = {-c.nu}")
    z, res = _solve_tail(params, target, quad.neg_tail, 1.0, tol)
    y = -1.0 / z
    return y, (1.0 + z ** (-n)) ** inv_p, res


def _g_branch(params, t, tol, use_series):
    """y = G^{-1}(t) >= 1 for 0 < t < mu."""
    c = constant_set(params, tol)
    if _use_series(params, t, use_series):
        ts = _series(params)
        w = eval_series_gap(ts, t)
        dy = eval_series_derivative(ts, t)
        res = abs(quad.g_near(params, w, tol).value - t)
        return 1.0 + w, dy, res
    g_two = quad.g_near(params, 1.0, tol).value
    if t <= g_two:
        w, res = _solve_gap(params, t, quad.g_near, tol)
        dy = _kernel_gap(quad.g_near, w, params.n) ** params.inv_p
        return 1.0 + w, dy, res
    target = c.mu - t
    if target <= 0.0:
        raise OutOfDomain(f"1/2 pi + t with t = {t} is at or beyond mu = {c.mu}")
    z, res = _solve_tail(params, target, quad.g_tail, 0.5, tol)
    n = params.n
    return 1.0 / z, (z ** (-n) - 1.0) ** params.inv_p, res


def _base(params, x, tol, use_series):
    """F^{-1} on its natural domain; returns (y, dy, branch, residual)."""
    c = constant_set(params, tol)
    hp = c.half_pi
    if x > hp:
        raise OutOfDomain(f"x = {x} exceeds 1/2 pi_pn = {hp} on the base branch")
    if x >= 0.0:
        y, dy, res = _base_upper(params, x, tol, use_series)
        return y, dy, Branch(BranchKind.Base, x), res
    if params.n % 2 == 0:
        if x < -hp:
            raise OutOfDomain(f"x = {x} is below -1/2 pi_pn = {-hp}")
        y, dy, res = _base_upper(params, -x, tol, use_series)
        return -y, dy, Branch(BranchKind.OddMirror, -x), res
    y, dy, res = _base_negative_odd(params, x, tol)
    return y, dy, Branch(BranchKind.Base, x), res


def _result(y, dy, branch, res):
    return EvalResult(float(y), float(dy), branch, float(res))


def sin_base(params: Params, x: float, tol: Tolerance = DEFAULT_TOL,
             use_series: bool = True) -> EvalResult:
    """F_{p,n}^{-1}(x) on [-1/2 pi, 1/2 pi] (n even) or (F(-inf), 1/2 pi] (n odd).

    Works for every real p > 1; no continuation past 1/2 pi_{p,n}.
    """
    x = float(x)
    if math.isnan(x):
        raise OutOfDomain("x is NaN")
    return _result(*_base(params, x, tol, use_series))


def sin_pn(params: Params, x: float, tol: Tolerance = DEFAULT_TOL,
           use_series: bool = True) -> EvalResult:
    """sin_{p,n}(x) anywhere on the maximal interval of analyticity."""
    x = float(x)
    if math.isnan(x):
        raise OutOfDomain("x is NaN")
    case = classify(params)
    c = constant_set(params, tol)
    hp = c.half_pi
    if case is CaseClass.NotAnalyticAtHalfPi:
        if x > hp or (params.n % 2 == 0 and x < -hp):
            raise NotAnalytic(
                f"p' = {params.p_conj} is not an integer: sin_pn has no analytic "
                f"continuation past +-1/2 pi_pn (x = {x})")
        return sin_base(params, x, tol, use_series)
    interval = maximal_interval(params, tol)
    if x not in interval:
        raise OutOfDomain(f"x = {x} lies outside the maximal interval {interval}")

    if params.n % 2 == 0 and x < 0.0:
        inner = sin_pn(params, -x, tol, use_series)
        return EvalResult(-inner.y, inner.dy, Branch(BranchKind.OddMirror, inner.branch.t),
                          inner.residual)

    if case is CaseClass.Case1_EvenEven:
        period = 2.0 * c.pi_pn
        k = math.floor((x + hp) / period)
        xr = x - k * period if k else x
        kind = BranchKind.PeriodicReduce if k else None
        sign = 1.0
        if xr > hp:
            xr = c.pi_pn - xr
            sign = -1.0
            kind = kind or BranchKind.ReflectMirror
        y, dy, branch, res = _base(params, xr, tol, use_series)
        return _result(y, sign * dy, Branch(kind, xr) if kind else branch, res)

    if x <= hp:
        return _result(*_base(params, x, tol, use_series))

    if case is CaseClass.Case2_EvenOdd:
        xr = c.pi_pn - x
        y, dy, _, res = _base(params, xr, tol, use_series)
        return _result(y, -dy, Branch(BranchKind.ReflectMirror, xr), res)

    # p' odd: Case3 (x > 0 here) and Case4
    t = x - hp
    y, dy, res = _g_branch(params, t, tol, use_series)
    return _result(y, dy, Branch(BranchKind.GBranch, t), res)


def d_sin_pn(params: Params, x: float, tol: Tolerance = DEFAULT_TOL,
             use_series: bool = True) -> float:
    """Derivative of sin_{p,n} at x (0 at the critical point 1/2 pi_{p,n})."""
    return sin_pn(params, x, tol, use_series).dy

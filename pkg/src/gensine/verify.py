"""Independent checks of the evaluator, the constants and the series.

Nothing here reuses the code path it audits: quadrature constants are
compared with Gamma-function closed forms, the evaluator with finite
differences and the ODE, the Taylor series with the quadrature-only
evaluator (``use_series=False``), and blow-up distances with termwise
integrated binomial series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import quadrature as quad
from .constants import (
    constant_set,
    maximal_interval,
    mu,
    mu_closed,
    nu,
    nu_closed,
    pi_pn,
    tails_finite,
)
from .errors import DomainError, GenSineError, NotAnalytic
from .evaluator import sin_pn
from .params import CaseClass, Params, classify, conjugate
from .series import estimate_radius, eval_series, taylor_at_center

__all__ = [
    "VerifyReport",
    "log_gamma",
    "beta",
    "pi_beta_oracle",
    "mu_beta_oracle",
    "nu_beta_oracle",
    "fd_step",
    "fd_derivative",
    "tail_series",
    "blowup_distance",
    "critical_order_fd",
    "stride_fit",
    "round_trip_error",
    "ode_residual",
    "interval_grid",
    "run_audit",
]


@dataclass(frozen=True)
class VerifyReport:
    check_name: str
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    passed: bool
    tolerance: float
    note: str = ""

    @classmethod
    def compare(cls, name, lhs, rhs, tol, note=""):
        abs_err = abs(lhs - rhs)
        scale = max(abs(lhs), abs(rhs))
        rel_err = abs_err / scale if scale > 0 else 0.0
        if lhs == rhs:  # covers matching infinities
            abs_err = rel_err = 0.0
        return cls(name, float(lhs), float(rhs), abs_err, rel_err,
                   bool(abs_err <= tol or rel_err <= tol), tol, note)

    @classmethod
    def bound(cls, name, value, limit, note=""):
        """Pass when |value| <= limit (rhs recorded as 0, rel_err undefined)."""
        a = abs(value)
        return cls(name, float(value), 0.0, a, math.nan,
                   bool(a <= limit), limit, note)

    @classmethod
    def skipped(cls, name, note):
        return cls(name, math.nan, math.nan, 0.0, 0.0, True, math.nan, f"skipped: {note}")


# ---------------------------------------------------------------------------
# Gamma / Beta oracles


def log_gamma(x: float) -> float:
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def beta(a: float, b: float) -> float:
    if not (a > 0 and b > 0):
        raise DomainError(f"beta needs positive arguments, got ({a}, {b})")
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))


def pi_beta_oracle(params: Params) -> float:
    """pi_{p,n} = (2/n) B(1/n, 1/p'), from s = t^n in 2 int_0^1 (1-t^n)^(-1/p) dt."""
    n = params.n
    return 2.0 / n * beta(1.0 / n, 1.0 - params.inv_p)


def mu_beta_oracle(m: int, n: int) -> float:
    """mu(m, n) = (1/n) B((m-1)/m - 1/n, 1/m), from t = s^(-1/n)."""
    if not tails_finite(m, n):
        raise DomainError(f"mu({m}, {n}) diverges")
    return beta((m - 1) / m - 1.0 / n, 1.0 / m) / n


def nu_beta_oracle(m: int, n: int) -> float:
    """nu(m, n) = (1/n) B(1/n, (m-1)/m - 1/n), from t^n = s/(1-s)."""
    if not tails_finite(m, n):
        raise DomainError(f"nu({m}, {n}) diverges")
    return beta(1.0 / n, (m - 1) / m - 1.0 / n) / n


# ---------------------------------------------------------------------------
# finite differences


def fd_step(order: int, x: float) -> float:
    # balances O(h^2) truncation against eps/h^order roundoff
    return (1e-15) ** (1.0 / (order + 2)) * (abs(x) + 1.0)


def fd_derivative(f: Callable[[float], float], x: float, order: int, h: float | None = None,
                  richardson: bool = False) -> float:
    """Central difference of the given order, O(h^2).

    Uses the stencil x + (order/2 - j) h, j = 0..order, with binomial
    weights; odd orders therefore sample at half-integer multiples of h.
    With ``richardson`` the steps h and h/2 are combined into an O(h^4)
    estimate, which matters where higher derivatives are large.
    """
    if not 1 <= order <= 6:
        raise ValueError("order must be in 1..6")
    if h is None:
        h = fd_step(order, x)
    if richardson:
        coarse = fd_derivative(f, x, order, h)
        fine = fd_derivative(f, x, order, 0.5 * h)
        return (4.0 * fine - coarse) / 3.0
    total = 0.0
    for j in range(order + 1):
        total += (-1) ** j * math.comb(order, j) * f(x + (0.5 * order - j) * h)
    return total / h ** order


# ---------------------------------------------------------------------------
# tails and blow-up


def tail_series(inv_p: float, n: int, z: float, sign: float, terms: int = 60) -> float:
    """int_0^z s^(q-1) (1 + sign*s^n)^(-inv_p) ds, q = n*inv_p - 1, by binomial series.

    Converges for 0 <= z < 1; intended for small z.
    """
    q = n * inv_p - 1.0
    if q <= 0:
        raise DomainError("tail diverges unless p < n")
    total = 0.0
    coef = 1.0  # binom(-inv_p, k) * sign^k
    for k in range(terms):
        term = coef * z ** (n * k + q) / (n * k + q)
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
        coef *= sign * (-inv_p - k) / (k + 1)
    return total


_BLOWUP_RESOLUTION = 1e-13


def blowup_distance(params: Params, side: str, magnitude: float = 1.01e3) -> float:
    """Distance from a finite end at which |sin_pn| reaches ``magnitude``.

    ``side`` is "left" for -nu (n odd) or "right" for 1/2 pi + mu.  For the
    right end pi_pn + nu of the p'-even/n-odd case the left distance applies,
    by reflection.
    """
    z = 1.0 / magnitude
    if side == "left":
        return tail_series(params.inv_p, params.n, z, +1.0)
    if side == "right":
        return tail_series(params.inv_p, params.n, z, -1.0)
    raise ValueError("side must be 'left' or 'right'")


# ---------------------------------------------------------------------------
# evaluator audits


def _quad_only(params):
    return lambda x: sin_pn(params, x, use_series=False).y


def interval_grid(params: Params, size: int, clip: float = 1e-3, periods: float = 1.5) -> np.ndarray:
    """Uniform grid over the maximal interval, ``clip`` away from finite ends.

    Infinite ends are replaced by +-periods * 2 pi_{p,n}.
    """
    iv = maximal_interval(params)
    span = periods * 2.0 * constant_set(params).pi_pn
    lo = iv.lo + clip if math.isfinite(iv.lo) else -span
    hi = iv.hi - clip if math.isfinite(iv.hi) else span
    return np.linspace(lo, hi, size)


def _reduce(params, x):
    """Independent branch bookkeeping: ('F' | 'G', reduced t, sign of y)."""
    c = constant_set(params)
    hp, pi_v = c.half_pi, c.pi_pn
    m = conjugate(params).m
    sign = 1.0
    if params.n % 2 == 0 and x < 0:
        x, sign = -x, -1.0
    if m % 2 == 1:
        if x > hp:
            return "G", x - hp, sign
        return "F", x, sign
    if params.n % 2 == 0:
        x = math.fmod(x, 2.0 * pi_v)
        if x > 1.5 * pi_v:
            x -= 2.0 * pi_v
    if x > hp:
        x = pi_v - x
    if x < 0 and params.n % 2 == 0:
        return "F", -x, -sign
    return "F", x, sign


def round_trip_error(params: Params, x: float) -> tuple[float, float]:
    """(|F(y) - t| or |G(y) - t|, allowance from representing y as a float)."""
    r = sin_pn(params, x, use_series=False)
    which, t, sign = _reduce(params, x)
    y = sign * r.y
    fy = quad.G(params, y).value if which == "G" else quad.F_base(params, y).value
    # a float y carries ulp(y) of error, amplified by F'(y) = 1/|dy|
    cond = 2.0 * math.ulp(y) / abs(r.dy) if r.dy != 0.0 else 0.0
    return abs(fy - t), cond


def ode_residual(params: Params, x: float) -> float:
    """(|y'|^p - |1 - y^n|) / max(1, |y|^n) at x."""
    r = sin_pn(params, x, use_series=False)
    p = params.p_real
    lhs = abs(r.dy) ** p
    rhs = abs(1.0 - r.y ** params.n)
    return (lhs - rhs) / max(1.0, abs(r.y) ** params.n)


def critical_order_fd(params: Params, order: int) -> float:
    """FD derivative of the given order at 1/2 pi_{p,n} (quadrature path only)."""
    hp = constant_set(params).half_pi
    return fd_derivative(_quad_only(params), hp, order, richardson=True)


def stride_fit(params: Params, degree: int | None = None, points: int = 41) -> np.ndarray:
    """Least-squares coefficients c_j of sin_pn(c+u) - series(u) = sum_j c_j u^j.

    The quadrature evaluator is compared with the stride-only Taylor series;
    any u^j with j not a multiple of p' in the true function would show up
    here.
    """
    m = conjugate(params).m
    ts = taylor_at_center(params)
    degree = degree or 2 * m + 1
    radius = min(1.0, 0.8 * ts.radius_claimed)
    r = 0.5 * radius
    u = np.linspace(-r, r, points)
    f = _quad_only(params)
    d = np.array([f(ts.center + ui) - eval_series(ts, ui) for ui in u])
    V = np.vander(u / r, degree + 1, increasing=True)
    a, *_ = np.linalg.lstsq(V, d, rcond=None)
    return a / r ** np.arange(degree + 1)


def _b1_closed(m, n):
    return -((-1) ** m) * n ** (m - 1) / m ** m


# ---------------------------------------------------------------------------


def run_audit(params: Params, grid_size: int = 100) -> list[VerifyReport]:
    """Run every applicable check for an integer-p' pair; failures are reported, not raised."""
    m = conjugate(params).m
    if m is None:
        raise NotAnalytic(f"audit needs an integer p' ({params})")
    n = params.n
    case = classify(params)
    reports: list[VerifyReport] = []

    def guarded(name, fn):
        try:
            out = fn()
        except GenSineError as exc:
            reports.append(VerifyReport(name, math.nan, math.nan, math.inf, math.inf,
                                        False, math.nan, f"error: {exc}"))
            return
        if isinstance(out, VerifyReport):
            reports.append(out)
        else:
            reports.extend(out)

    c = constant_set(params)
    hp = c.half_pi
    finite = tails_finite(m, n)

    guarded("pi_pn quadrature vs Beta",
            lambda: VerifyReport.compare("pi_pn quadrature vs Beta", pi_pn(params),
                                         pi_beta_oracle(params), 1e-10))
    if finite:
        guarded("mu quadrature vs Beta", lambda: VerifyReport.compare(
            "mu quadrature vs Beta", mu(m, n), mu_beta_oracle(m, n), 1e-10))
        guarded("nu quadrature vs Beta", lambda: VerifyReport.compare(
            "nu quadrature vs Beta", nu(m, n), nu_beta_oracle(m, n), 1e-10))
        guarded("mu closed form", lambda: VerifyReport.compare(
            "mu closed form", mu(m, n), mu_closed(params, c.pi_pn), 1e-9))
        guarded("nu closed form", lambda: VerifyReport.compare(
            "nu closed form", nu(m, n), nu_closed(params, c.pi_pn), 1e-9))
        guarded("triangle sine relation", lambda: VerifyReport.compare(
            "triangle sine relation", c.nu * math.sin(math.pi / n),
            c.mu * math.sin(math.pi / m), 1e-9))
        guarded("triangle cosine relation", lambda: VerifyReport.compare(
            "triangle cosine relation",
            c.nu * math.cos(math.pi / n) + c.mu * math.cos(math.pi / m), hp, 1e-9))
        if m == n:
            quarter_sec = 0.25 * c.pi_pn / math.cos(math.pi / n)
            reports.append(VerifyReport.compare("mu(n,n) = pi/4 sec(pi/n)", c.mu, quarter_sec, 1e-9))
            reports.append(VerifyReport.compare("nu(n,n) = pi/4 sec(pi/n)", c.nu, quarter_sec, 1e-9))
    else:
        for name in ("mu/nu Beta", "closed forms", "triangle relations"):
            reports.append(VerifyReport.skipped(name, "infinite radius"))

    f = _quad_only(params)

    if m % 2 == 0:
        def reflection():
            iv = maximal_interval(params)
            reach = min(iv.hi - hp, hp - iv.lo, 2.0 * c.pi_pn) - 1e-3
            err = 0.0
            for ti in np.linspace(0.0, reach, grid_size + 1)[1:]:
                a, b = f(hp + ti), f(hp - ti)
                # relative near blow-up ends, where ulp(x) |y'| alone exceeds 1e-10
                err = max(err, abs(a - b) / max(1.0, abs(a)))
            return VerifyReport.bound("reflection sin(pi/2+t) = sin(pi/2-t)", err, 1e-10,
                                      "relative to max(1, |y|)")
        guarded("reflection", reflection)

    if case is CaseClass.Case1_EvenEven:
        def periodic():
            xs = np.linspace(-hp, 3.0 * hp, grid_size)
            err = max(abs(f(x + 2.0 * c.pi_pn) - f(x)) for x in xs)
            return VerifyReport.bound("periodicity 2 pi_pn", err, 1e-10)
        guarded("periodicity", periodic)

    grid = interval_grid(params, grid_size)

    if n % 2 == 0:
        def oddness():
            err = max(abs(f(-x) + f(x)) for x in grid)
            return VerifyReport.bound("oddness", err, 1e-12)
        guarded("oddness", oddness)

    def round_trip():
        worst = 0.0
        for x in grid:
            err, cond = round_trip_error(params, x)
            worst = max(worst, err - cond)
        return VerifyReport.bound("round trip F/G(sin_pn(x)) = x", max(worst, 0.0), 1e-10,
                                  "float-representation allowance subtracted")
    guarded("round trip", round_trip)

    if m % 2 == 1 and finite:
        def g_round_trip():
            ts_ = np.linspace(0.0, c.mu, grid_size + 2)[1:-1]
            worst = 0.0
            for t in ts_:
                err, cond = round_trip_error(params, hp + t)
                worst = max(worst, err - cond)
            return VerifyReport.bound("G(sin_pn(pi/2 + t)) = t", max(worst, 0.0), 1e-10)
        guarded("G round trip", g_round_trip)

    def ode():
        err = max(abs(ode_residual(params, x)) for x in grid)
        return VerifyReport.bound("ODE residual", err, 1e-8)
    guarded("ODE residual", ode)

    def derivative():
        worst = 0.0
        # away from the blow-up ends, where FD truncation error dominates
        for x in grid[:: max(1, grid_size // 20)]:
            r = sin_pn(params, x, use_series=False)
            if abs(r.y) > 10.0:
                continue
            fd = fd_derivative(f, x, 1, richardson=True)
            worst = max(worst, abs(fd - r.dy) / max(1.0, abs(r.dy)))
        return VerifyReport.bound("d_sin_pn vs finite difference (|y| <= 10)", worst, 1e-6)
    guarded("derivative", derivative)

    ts = taylor_at_center(params)

    def two_sided():
        scale = min(1.0, ts.radius_claimed)
        worst = 0.0
        for u in (-0.05, -0.02, 0.02, 0.05):
            uu = u * scale
            worst = max(worst, abs(eval_series(ts, uu) - f(hp + uu)))
        return VerifyReport.bound("series two-sided match", worst, 1e-8)
    guarded("series two-sided match", two_sided)

    def radius():
        est = estimate_radius(ts)
        if not math.isfinite(ts.radius_claimed):
            return VerifyReport.compare("radius estimate vs mu", est, ts.radius_claimed, 2e-2,
                                        "infinite radius: coefficients decay super-geometrically")
        return VerifyReport.compare("radius estimate vs mu", est, ts.radius_claimed, 2e-2)
    guarded("radius", radius)

    def critical():
        out = []
        for order in range(1, m):
            out.append(VerifyReport.bound(f"critical order: derivative {order} at pi/2",
                                          critical_order_fd(params, order), 1e-5))
        top = critical_order_fd(params, m)
        expected = math.factorial(m) * _b1_closed(m, n)
        out.append(VerifyReport.compare(f"critical order: derivative {m} = m! b_1", top, expected, 1e-2))
        return out
    guarded("critical order", critical)

    def stride():
        coeffs = stride_fit(params)
        off = [abs(coeffs[j]) for j in range(len(coeffs)) if j % m]
        return VerifyReport.bound("stride purity (non-multiples of p')", max(off), 1e-8)
    guarded("stride purity", stride)

    if case in (CaseClass.Case2_EvenOdd, CaseClass.Case4_OddOdd):
        def blowup():
            iv = maximal_interval(params)
            d_left = blowup_distance(params, "left")
            if d_left < _BLOWUP_RESOLUTION * max(1.0, abs(iv.lo), abs(iv.hi)):
                # the probe point is not distinguishable from the end in floats
                return [VerifyReport.skipped("blow-up", f"delta = {d_left:.1e} below double resolution")]
            out = []
            y = sin_pn(params, iv.lo + d_left).y
            out.append(VerifyReport(f"blow-up at {iv.lo_label}", y, -1e3, 0.0, 0.0,
                                    bool(y <= -1e3), 1e3, f"delta = {d_left:.3e}"))
            d_right = d_left if case is CaseClass.Case2_EvenOdd else blowup_distance(params, "right")
            y = sin_pn(params, iv.hi - d_right).y
            ok = y <= -1e3 if case is CaseClass.Case2_EvenOdd else y >= 1e3
            out.append(VerifyReport(f"blow-up at {iv.hi_label}", y, math.copysign(1e3, y), 0.0, 0.0,
                                    bool(ok), 1e3, f"delta = {d_right:.3e}"))
            return out
        guarded("blow-up", blowup)

    return reports

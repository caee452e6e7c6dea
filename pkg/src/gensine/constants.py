"""pi_{p,n}, mu(m, n), nu(m, n), their closed forms, and the analyticity interval.

Infinite values (mu(2, 2), the ends of the interval for the even/even case)
are ordinary ``math.inf`` floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, InvalidParameter, NotAnalytic
from .params import CaseClass, Params, classify, conjugate
from .quadrature import DEFAULT_TOL, Tolerance, half_pi, mu_integral, nu_integral

__all__ = [
    "Interval",
    "ConstantSet",
    "pi_pn",
    "mu",
    "nu",
    "mu_closed",
    "nu_closed",
    "constant_set",
    "maximal_interval",
    "base_domain",
    "taylor_radius",
    "tails_finite",
]


@dataclass(frozen=True)
class Interval:
    """Open interval ``(lo, hi)``; the labels name the ends symbolically."""

    lo: float
    hi: float
    lo_label: str = ""
    hi_label: str = ""
    closed_lo: bool = False
    closed_hi: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")

    def __contains__(self, x: float) -> bool:
        above = self.lo <= x if self.closed_lo else self.lo < x
        below = x <= self.hi if self.closed_hi else x < self.hi
        return above and below

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def symmetric(self) -> bool:
        return self.lo == -self.hi

    def __str__(self) -> str:
        left = "[" if self.closed_lo else "("
        right = "]" if self.closed_hi else ")"
        return f"{left}{self.lo_label or self.lo}, {self.hi_label or self.hi}{right}"


@dataclass(frozen=True)
class ConstantSet:
    pi_pn: float
    mu: float
    nu: float

    @property
    def half_pi(self) -> float:
        return 0.5 * self.pi_pn


def tails_finite(m: int, n: int) -> bool:
    """mu(m, n) and nu(m, n) converge iff n(m-1) > m, i.e. p < n."""
    return n * (m - 1) > m


def _check_mn(m, n):
    if m < 2 or n < 2:
        raise InvalidParameter(f"need m >= 2 and n >= 2, got ({m}, {n})")


def pi_pn(params: Params, tol: Tolerance = DEFAULT_TOL) -> float:
    return 2.0 * half_pi(params, tol).value


def mu(m: int, n: int, tol: Tolerance = DEFAULT_TOL) -> float:
    """int_1^inf (t^n - 1)^(-(m-1)/m) dt, or inf when it diverges."""
    _check_mn(m, n)
    if not tails_finite(m, n):
        return math.inf
    return mu_integral((m - 1) / m, n, tol).value


def nu(m: int, n: int, tol: Tolerance = DEFAULT_TOL) -> float:
    """int_0^inf (1 + t^n)^(-(m-1)/m) dt, or inf when it diverges."""
    _check_mn(m, n)
    if not tails_finite(m, n):
        return math.inf
    return nu_integral((m - 1) / m, n, tol).value


def _require_p_below_n(params):
    if not params.p_num < params.n * params.p_den:
        raise DomainError(f"closed forms need p < n ({params})")


def mu_closed(params: Params, pi_value: float) -> float:
    """pi_{p,n} / (2 (sin(pi/p) cot(pi/n) - cos(pi/p)))."""
    _require_p_below_n(params)
    a = math.pi / params.p_real
    b = math.pi / params.n
    return pi_value / (2.0 * (math.sin(a) * (math.cos(b) / math.sin(b)) - math.cos(a)))


def nu_closed(params: Params, pi_value: float) -> float:
    """pi_{p,n} / (2 (cos(pi/n) - sin(pi/n) cot(pi/p)))."""
    _require_p_below_n(params)
    a = math.pi / params.p_real
    b = math.pi / params.n
    return pi_value / (2.0 * (math.cos(b) - math.sin(b) * (math.cos(a) / math.sin(a))))


@lru_cache(maxsize=256)
def constant_set(params: Params, tol: Tolerance = DEFAULT_TOL) -> ConstantSet:
    """pi_{p,n} with mu, nu at m = p' (inf when p' is not an integer tail pair).

    For non-integer p' the tails are still finite when p < n; they are
    returned with exponent 1/p so the base domain for odd n is known.
    """
    pi_value = pi_pn(params, tol)
    if params.p_num < params.n * params.p_den:
        inv_p, n = params.inv_p, params.n
        return ConstantSet(pi_value, mu_integral(inv_p, n, tol).value,
                           nu_integral(inv_p, n, tol).value)
    return ConstantSet(pi_value, math.inf, math.inf)


def maximal_interval(params: Params, tol: Tolerance = DEFAULT_TOL) -> Interval:
    case = classify(params)
    if case is CaseClass.NotAnalyticAtHalfPi:
        raise NotAnalytic(f"p' = {params.p_conj} is not an integer ({params})")
    c = constant_set(params, tol)
    hp = c.half_pi
    if case is CaseClass.Case1_EvenEven:
        return Interval(-math.inf, math.inf, "-inf", "inf")
    if case is CaseClass.Case2_EvenOdd:
        return Interval(-c.nu, c.pi_pn + c.nu, "-nu", "pi_pn + nu")
    if case is CaseClass.Case3_OddEven:
        return Interval(-hp - c.mu, hp + c.mu, "-pi_pn/2 - mu", "pi_pn/2 + mu")
    return Interval(-c.nu, hp + c.mu, "-nu", "pi_pn/2 + mu")


def base_domain(params: Params, tol: Tolerance = DEFAULT_TOL) -> Interval:
    """Domain of F^{-1} before any continuation past 1/2 pi_{p,n}."""
    c = constant_set(params, tol)
    hp = c.half_pi
    if params.n % 2 == 0:
        return Interval(-hp, hp, "-pi_pn/2", "pi_pn/2", closed_lo=True, closed_hi=True)
    return Interval(-c.nu, hp, "-nu" if math.isfinite(c.nu) else "-inf", "pi_pn/2",
                    closed_hi=True)


def taylor_radius(params: Params, tol: Tolerance = DEFAULT_TOL) -> float:
    m = conjugate(params).m
    if m is None:
        raise NotAnalytic(f"p' = {params.p_conj} is not an integer ({params})")
    return mu(m, params.n, tol)

"""Tanh-sinh quadrature and the singular integrals built on it.

Every integrand handed to :func:`integrate_de` is written as::

    f(t) * (t - a)**(-left_exp) * (b - t)**(-right_exp)

where ``f`` is smooth on the closed interval.  The endpoint distances
``t - a`` and ``b - t`` come straight from the tanh-sinh transform, so the
singular factors are computed without cancellation even when a node sits
1e-270 away from an endpoint.

The integrals of ``(1 - t**n)**(-1/p)`` and friends are split into pieces
whose variable of integration is the distance to the singular point:

``upper_gap(w)``  = int_{1-w}^{1} (1-t^n)^(-1/p) dt
``g_near(w)``     = int_{1}^{1+w} (t^n-1)^(-1/p) dt
``neg_core(s)``   = int_{0}^{s} (1+t^n)^(-1/p) dt
``neg_tail(z)``   = int_{-inf}^{-1/z} (1-t^n)^(-1/p) dt       (n odd)
``g_tail(z)``     = int_{1/z}^{inf} (t^n-1)^(-1/p) dt         (z <= 1/2)

The last two use t = -1/s and t = 1/s, which turn the unbounded ranges into
``s**(n/p - 2) * (1 +- s**n)**(-1/p)`` on (0, z].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .errors import ConvergenceFailure, DomainError
from .params import Params

__all__ = [
    "Tolerance",
    "QuadResult",
    "DEFAULT_TOL",
    "integrate_de",
    "F_base",
    "F_tail_neg",
    "G",
    "half_pi",
    "upper_gap",
    "g_near",
    "neg_core",
    "neg_tail",
    "g_tail",
    "mu_integral",
    "nu_integral",
]

_T_MAX = 6.0  # sinh(6)*pi/2 ~ 317, endpoint distances down to ~1e-275
_MIN_LEVEL = 3


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-12
    max_levels: int = 12

    def __post_init__(self):
        if not self.abs_tol >= 1e-15:
            raise ValueError(f"abs_tol must be >= 1e-15, got {self.abs_tol}")
        if self.max_levels < _MIN_LEVEL:
            raise ValueError(f"max_levels must be >= {_MIN_LEVEL}")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_est: float
    evals: int

    def __add__(self, other: QuadResult) -> QuadResult:
        return QuadResult(self.value + other.value, self.err_est + other.err_est,
                          self.evals + other.evals)

    def __neg__(self) -> QuadResult:
        return QuadResult(-self.value, self.err_est, self.evals)

    def __sub__(self, other: QuadResult) -> QuadResult:
        return self + (-other)


ZERO = QuadResult(0.0, 0.0, 0)


@lru_cache(maxsize=None)
def _level_nodes(level: int):
    """Nodes on [-1, 1] added at ``level`` (step 2**-level).

    Returns (lo_frac, hi_frac, weight): the fractions of the interval length
    between each node and the left/right endpoint, and the transform weight
    (without the step factor).
    """
    h = 2.0 ** -level
    kmax = int(_T_MAX / h)
    if level == 0:
        k = np.arange(-kmax, kmax + 1)
    else:
        k = np.arange(-kmax + (1 - kmax % 2), kmax + 1, 2)  # odd multiples only
    t = k * h
    u = 0.5 * math.pi * np.sinh(t)
    e_neg = np.exp(-2.0 * np.abs(u))
    # 1/cosh(u)^2 = 4 e^{-2|u|} / (1 + e^{-2|u|})^2
    weight = 0.5 * math.pi * np.cosh(t) * 4.0 * e_neg / (1.0 + e_neg) ** 2
    small = e_neg / (1.0 + e_neg)
    big = 1.0 / (1.0 + e_neg)
    lo = np.where(u < 0, small, big)
    hi = np.where(u < 0, big, small)
    for arr in (lo, hi, weight):
        arr.setflags(write=False)
    return lo, hi, weight


def _level_sum(f, a, b, left_exp, right_exp, level):
    lo_frac, hi_frac, weight = _level_nodes(level)
    length = b - a
    x = np.where(lo_frac <= hi_frac, a + length * lo_frac, b - length * hi_frac)
    vals = np.asarray(f(x), dtype=float) * weight
    # distances as length * fraction; the length power is applied once, so
    # tiny intervals do not underflow
    if left_exp:
        vals = vals * lo_frac ** (-left_exp)
    if right_exp:
        vals = vals * hi_frac ** (-right_exp)
    vals = np.where(weight > 0.0, vals, 0.0)
    scale = 0.5 * length ** (1.0 - left_exp - right_exp)
    return scale * float(np.sum(vals)), x.size


def integrate_de(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    left_exp: float = 0.0,
    right_exp: float = 0.0,
    tol: Tolerance = DEFAULT_TOL,
) -> QuadResult:
    """Tanh-sinh quadrature of ``f(t) (t-a)^-left_exp (b-t)^-right_exp``.

    ``f`` must accept a numpy array.  The step is halved until two
    successive levels agree to ``tol.abs_tol``.

    Examples
    --------
    >>> round(integrate_de(lambda t: 1 / np.sqrt(1 + t), 0, 1, right_exp=0.5).value, 12)
    1.570796326795
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise DomainError(f"need finite a < b, got [{a}, {b}]")
    if left_exp >= 1.0 or right_exp >= 1.0:
        raise DomainError("endpoint exponents must be < 1 for an integrable singularity")
    h = 1.0
    s, evals = _level_sum(f, a, b, left_exp, right_exp, 0)
    prev = s * h
    diff = math.inf
    for level in range(1, tol.max_levels + 1):
        h *= 0.5
        s_new, cnt = _level_sum(f, a, b, left_exp, right_exp, level)
        evals += cnt
        s += s_new
        cur = s * h
        diff = abs(cur - prev)
        if not math.isfinite(cur):
            break
        if level >= _MIN_LEVEL and diff <= tol.abs_tol:
            return QuadResult(cur, diff, evals)
        prev = cur
    raise ConvergenceFailure(
        f"tanh-sinh did not reach {tol.abs_tol:g} on [{a}, {b}] "
        f"after {tol.max_levels} levels (last difference {diff:g})"
    )


# ---------------------------------------------------------------------------
# integrand pieces, parametrised by (inv_p, n) so that mu/nu can reuse them
# with inv_p = (m - 1)/m


def _geom(t, n):
    """sum_{j<n} t^j by Horner, i.e. (1 - t^n)/(1 - t) without cancellation."""
    acc = np.ones_like(t)
    for _ in range(n - 1):
        acc = acc * t + 1.0
    return acc


def _upper_gap(inv_p, n, w, tol):
    # t = 1 - s: (1 - t^n) = s * sum_j (1-s)^j
    if w == 0.0:
        return ZERO
    return integrate_de(lambda s: _geom(1.0 - s, n) ** (-inv_p), 0.0, w,
                        left_exp=inv_p, tol=tol)


def _g_near(inv_p, n, w, tol):
    # t = 1 + s: (t^n - 1) = s * sum_j (1+s)^j
    if w == 0.0:
        return ZERO
    return integrate_de(lambda s: _geom(1.0 + s, n) ** (-inv_p), 0.0, w,
                        left_exp=inv_p, tol=tol)


def _neg_core(inv_p, n, s, tol):
    if s == 0.0:
        return ZERO
    return integrate_de(lambda t: (1.0 + t ** n) ** (-inv_p), 0.0, s, tol=tol)


def _tail_exp(inv_p, n):
    q = n * inv_p - 1.0
    if q <= 0.0:
        raise DomainError("tail integral diverges unless p < n")
    return 1.0 - q


def _neg_tail(inv_p, n, z, tol):
    le = _tail_exp(inv_p, n)
    if z == 0.0:
        return ZERO
    return integrate_de(lambda s: (1.0 + s ** n) ** (-inv_p), 0.0, z,
                        left_exp=le, tol=tol)


def _g_tail(inv_p, n, z, tol):
    le = _tail_exp(inv_p, n)
    if not 0.0 <= z <= 0.5:
        raise DomainError("g_tail needs 0 <= z <= 1/2")
    if z == 0.0:
        return ZERO
    return integrate_de(lambda s: (1.0 - s ** n) ** (-inv_p), 0.0, z,
                        left_exp=le, tol=tol)


@lru_cache(maxsize=512)
def _half_pi(inv_p, n, tol):
    return _upper_gap(inv_p, n, 1.0, tol)


@lru_cache(maxsize=512)
def mu_integral(inv_p: float, n: int, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    """int_1^inf (t^n - 1)^(-inv_p) dt, split at t = 2."""
    return _g_near(inv_p, n, 1.0, tol) + _g_tail(inv_p, n, 0.5, tol)


@lru_cache(maxsize=512)
def nu_integral(inv_p: float, n: int, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    """int_0^inf (1 + t^n)^(-inv_p) dt, split at t = 1."""
    return _neg_core(inv_p, n, 1.0, tol) + _neg_tail(inv_p, n, 1.0, tol)


# ---------------------------------------------------------------------------
# Params-level API


def half_pi(params: Params, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    """F_{p,n}(1) = pi_{p,n} / 2."""
    return _half_pi(params.inv_p, params.n, tol)


def upper_gap(params: Params, w: float, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    return _upper_gap(params.inv_p, params.n, w, tol)


def g_near(params: Params, w: float, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    return _g_near(params.inv_p, params.n, w, tol)


def neg_core(params: Params, s: float, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    return _neg_core(params.inv_p, params.n, s, tol)


def neg_tail(params: Params, z: float, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    return _neg_tail(params.inv_p, params.n, z, tol)


def g_tail(params: Params, z: float, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    return _g_tail(params.inv_p, params.n, z, tol)


def F_base(params: Params, y: float, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    """F_{p,n}(y) = int_0^y (1 - t^n)^(-1/p) dt.

    Valid for y in [-1, 1] (n even) or y <= 1 (n odd).
    """
    n = params.n
    if not y <= 1.0 or math.isnan(y):
        raise DomainError(f"F_{{p,n}} is defined only for y <= 1, got {y}")
    if y < 0.0:
        if n % 2 == 0:
            if y < -1.0:
                raise DomainError(f"n even: F_{{p,n}} needs y >= -1, got {y}")
            return -F_base(params, -y, tol)
        if y <= -1.0:
            return F_tail_neg(params, y, tol)
        return -neg_core(params, -y, tol)
    if y <= 0.5:
        if y == 0.0:
            return ZERO
        inv_p = params.inv_p
        return integrate_de(lambda t: (1.0 - t ** n) ** (-inv_p), 0.0, y, tol=tol)
    return half_pi(params, tol) - upper_gap(params, 1.0 - y, tol)


def F_tail_neg(params: Params, y: float, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    """F_{p,n}(y) for y <= -1 and n odd, through t = -1/s."""
    if params.n % 2 == 0:
        raise DomainError("the left tail y < -1 exists only for odd n")
    if not y <= -1.0:
        raise DomainError(f"F_tail_neg needs y <= -1, got {y}")
    z = -1.0 / y
    at_minus_one = -neg_core(params, 1.0, tol)
    if z > 0.5:
        # F(y) = F(-1) - int_{y}^{-1} = F(-1) - int_{z}^{1} s^{n/p-2}(1+s^n)^{-1/p} ds
        inv_p, n = params.inv_p, params.n
        q = n * inv_p - 1.0
        piece = integrate_de(lambda s: s ** (q - 1.0) * (1.0 + s ** n) ** (-inv_p), z, 1.0, tol=tol) \
            if z < 1.0 else ZERO
        return at_minus_one - piece
    # F(y) = -nu + int_{-inf}^{y}; keeps the small tail accurate as y -> -inf
    total_tail = neg_tail(params, 1.0, tol)
    return at_minus_one - total_tail + neg_tail(params, z, tol)


def G(params: Params, y: float, tol: Tolerance = DEFAULT_TOL) -> QuadResult:
    """G_{p,n}(y) = int_1^y (t^n - 1)^(-1/p) dt for y >= 1."""
    if not y >= 1.0:
        raise DomainError(f"G_{{p,n}} needs y >= 1, got {y}")
    if y <= 2.0:
        return g_near(params, y - 1.0, tol)
    inv_p, n = params.inv_p, params.n
    if n * inv_p <= 1.0:
        # p >= n: G is unbounded, integrate [2, y] directly
        if not math.isfinite(y):
            raise DomainError("G(inf) diverges for p >= n")
        return g_near(params, 1.0, tol) + integrate_de(
            lambda t: (t ** n - 1.0) ** (-inv_p), 2.0, y, tol=tol)
    if not math.isfinite(y):
        return mu_integral(params.inv_p, params.n, tol)
    return mu_integral(params.inv_p, params.n, tol) - g_tail(params, 1.0 / y, tol)

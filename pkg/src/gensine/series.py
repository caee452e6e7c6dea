"""Taylor expansion of sin_{p,n} at its critical point 1/2 pi_{p,n}.

Write y = sin_{p,n}(x), w = 1 - y and v = 1/2 pi_{p,n} - x.  Then

    v = int_0^w s^(-1/p) g(s) ds,   g(s) = ((1 - (1-s)^n) / s)^(-1/p),

so v = w^(1/p') A(w) with A analytic, and Phi(w) = v^p' = w A(w)^p' is
analytic with Phi'(0) = (p' n^(-1/p))^p' > 0.  Reverting Phi gives w as a
power series in v^p', i.e. y as a series in u^p' with u = x - 1/2 pi_{p,n}.

Reversion is badly conditioned in double precision (Phi has a much smaller
radius than its inverse), so the series arithmetic runs in mpmath at a
working precision that is raised until two precisions agree, and only the
final coefficients are rounded to floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Sequence

import mpmath
import numpy as np

from .constants import constant_set, taylor_radius
from .errors import InsufficientCoefficients, NotAnalytic, OutOfDisk, SingularReversion
from .params import Params, conjugate

__all__ = [
    "PowerSeries",
    "TaylorSeries",
    "phi_series",
    "taylor_at_center",
    "eval_series",
    "eval_series_gap",
    "eval_series_derivative",
    "estimate_radius",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 60
_DISK_FRACTION = 0.8


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series c_0 + c_1 x + ... + c_K x^K.

    Coefficients may be floats, Fractions or mpmath numbers; all operations
    stay in whatever arithmetic the coefficients carry.
    """

    coeffs: tuple

    def __init__(self, coeffs: Sequence):
        object.__setattr__(self, "coeffs", tuple(coeffs))
        if not self.coeffs:
            raise ValueError("empty series")

    @property
    def K(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, K: int) -> PowerSeries:
        c = list(self.coeffs[: K + 1])
        zero = self.coeffs[0] * 0
        c.extend([zero] * (K + 1 - len(c)))
        return PowerSeries(c)

    def _common(self, other):
        K = min(self.K, other.K)
        return self.truncate(K), other.truncate(K), K

    def __add__(self, other: PowerSeries) -> PowerSeries:
        a, b, _ = self._common(other)
        return PowerSeries([x + y for x, y in zip(a.coeffs, b.coeffs)])

    def __sub__(self, other: PowerSeries) -> PowerSeries:
        a, b, _ = self._common(other)
        return PowerSeries([x - y for x, y in zip(a.coeffs, b.coeffs)])

    def scale(self, factor) -> PowerSeries:
        return PowerSeries([factor * c for c in self.coeffs])

    def __mul__(self, other: PowerSeries) -> PowerSeries:
        a, b, K = self._common(other)
        ac, bc = a.coeffs, b.coeffs
        out = []
        for k in range(K + 1):
            s = ac[0] * bc[k]
            for j in range(1, k + 1):
                s += ac[j] * bc[k - j]
            out.append(s)
        return PowerSeries(out)

    def __pow__(self, e: int) -> PowerSeries:
        if not isinstance(e, int) or e < 0:
            raise ValueError("integer power must be a non-negative int; use real_power")
        one = self.coeffs[0] * 0 + 1
        result = PowerSeries([one] + [one * 0] * self.K)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def real_power(self, alpha) -> PowerSeries:
        """(series)^alpha for c_0 != 0 (principal branch of c_0^alpha)."""
        a = self.coeffs
        if a[0] == 0:
            raise ValueError("real_power needs a nonzero constant term")
        b = [a[0] ** alpha]
        for k in range(1, self.K + 1):
            s = a[0] * 0
            for j in range(1, k + 1):
                s += ((alpha + 1) * j - k) * a[j] * b[k - j]
            b.append(s / (k * a[0]))
        return PowerSeries(b)

    def compose(self, inner: PowerSeries) -> PowerSeries:
        """self(inner(x)); inner must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise ValueError("inner series must vanish at 0")
        K = min(self.K, inner.K)
        inner = inner.truncate(K)
        acc = PowerSeries([self.coeffs[K]] + [self.coeffs[0] * 0] * K)
        for k in range(K - 1, -1, -1):
            acc = acc * inner
            acc = PowerSeries((acc.coeffs[0] + self.coeffs[k],) + acc.coeffs[1:])
        return acc

    def revert(self) -> PowerSeries:
        """Compositional inverse by Lagrange: r_k = [x^(k-1)] (x/f)^k / k."""
        c = self.coeffs
        if c[0] != 0:
            raise ValueError("reversion needs c_0 = 0")
        if self.K < 1 or c[1] == 0:
            raise SingularReversion("reversion needs c_1 != 0")
        K = self.K
        zero = c[0] * 0
        shifted = PowerSeries(list(c[1:]) + [zero])  # f(x)/x
        psi = shifted.real_power(-1).truncate(K - 1)
        r = [zero]
        power = psi
        for k in range(1, K + 1):
            r.append(power.coeffs[k - 1] / k)
            if k < K:
                power = power * psi
        return PowerSeries(r)

    def integrate(self, offset=0) -> PowerSeries:
        """Termwise integral of x^offset * series, returned without the x^offset shift.

        Coefficient k becomes c_k / (k + 1 + offset); the caller multiplies by
        x^(1 + offset).
        """
        return PowerSeries([c / (k + 1 + offset) for k, c in enumerate(self.coeffs)])

    def to_float(self) -> PowerSeries:
        return PowerSeries([float(c) for c in self.coeffs])

    def __call__(self, x):
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc


@dataclass(frozen=True)
class TaylorSeries:
    """sin_{p,n}(center + u) = sum_k b[k] * u**(stride*k) for |u| < radius."""

    center: float
    stride: int
    b: tuple
    radius_claimed: float

    @property
    def K(self) -> int:
        return len(self.b) - 1


def _require_m(params):
    m = conjugate(params).m
    if m is None:
        raise NotAnalytic(f"p' = {params.p_conj} is not an integer; no Taylor series at 1/2 pi_{{p,n}}")
    return m


def _phi_exact(m: int, n: int, K: int) -> PowerSeries:
    """Phi(w) = v^m as an mpmath series; uses the ambient mpmath precision."""
    mpf = mpmath.mpf
    inv_p = mpf(m - 1) / m
    # (1 - (1-s)^n)/s = sum_{j<n} (-1)^j C(n, j+1) s^j
    h = [mpf((-1) ** j * comb(n, j + 1)) for j in range(n)]
    h = (h + [mpf(0)] * (K + 1))[: K + 1]
    g = PowerSeries(h).real_power(-inv_p)
    # int_0^w s^(-1/p) g(s) ds = w^(1/m) sum_j g_j w^j / (j + 1/m)
    A = g.integrate(offset=-inv_p)
    Am = A ** m
    return PowerSeries([mpf(0)] + list(Am.coeffs[:K]))


def phi_series(params: Params, K: int = DEFAULT_ORDER, dps: int = 50) -> PowerSeries:
    """Float series of Phi(w) = (1/2 pi - F(1-w))^p' in w, to order K."""
    m = _require_m(params)
    if K < 2:
        raise ValueError("phi_series needs K >= 2")
    with mpmath.workdps(dps):
        return _phi_exact(m, params.n, K).to_float()


def _b_coeffs(m, n, K, dps):
    with mpmath.workdps(dps):
        r = _phi_exact(m, n, K).revert()
        b = [1.0]
        for k in range(1, K + 1):
            b.append(float(-r.coeffs[k] * (-1) ** (m * k)))
        return b


def _agree(a, b):
    for x, y in zip(a, b):
        if x == y:
            continue
        if abs(x - y) > 1e-14 * max(abs(x), abs(y)):
            return False
    return True


@lru_cache(maxsize=128)
def _b_cached(m, n, K):
    dps = 30 + K
    b = _b_coeffs(m, n, K, dps)
    for _ in range(8):
        b_more = _b_coeffs(m, n, K, dps + 40)
        if _agree(b, b_more):
            return tuple(b_more)
        dps *= 2
        b = _b_coeffs(m, n, K, dps)
    raise ArithmeticError(f"series coefficients did not stabilise up to {dps} digits")


def taylor_at_center(params: Params, K: int = DEFAULT_ORDER) -> TaylorSeries:
    """Taylor series of sin_{p,n} at 1/2 pi_{p,n} with K blocks of stride p'."""
    m = _require_m(params)
    if K < 1:
        raise ValueError("K must be >= 1")
    b = _b_cached(m, params.n, K)
    center = constant_set(params).half_pi
    return TaylorSeries(center, m, b, taylor_radius(params))


def _check_disk(ts, u):
    if math.isfinite(ts.radius_claimed) and not abs(u) < _DISK_FRACTION * ts.radius_claimed:
        raise OutOfDisk(
            f"|u| = {abs(u):g} exceeds {_DISK_FRACTION} x radius {ts.radius_claimed:g}")


def eval_series(ts: TaylorSeries, u: float) -> float:
    _check_disk(ts, u)
    U = u ** ts.stride
    acc = 0.0
    for c in reversed(ts.b):
        acc = acc * U + c
    return acc


def eval_series_gap(ts: TaylorSeries, u: float) -> float:
    """eval_series(ts, u) - 1, summed without the leading 1 (no cancellation)."""
    _check_disk(ts, u)
    U = u ** ts.stride
    acc = 0.0
    for c in reversed(ts.b[1:]):
        acc = acc * U + c
    return acc * U


def eval_series_derivative(ts: TaylorSeries, u: float) -> float:
    """d/du of :func:`eval_series`."""
    _check_disk(ts, u)
    m = ts.stride
    U = u ** m
    acc = 0.0
    for k in range(ts.K, 0, -1):
        acc = acc * U + k * ts.b[k]
    return m * u ** (m - 1) * acc


def estimate_radius(ts: TaylorSeries, floor: float = 1e-290) -> float:
    """Root-test estimate of the radius from the upper half of the coefficients.

    Fits log|b_k| = c + slope*k and returns exp(-slope/stride).  Coefficients
    that fall faster than geometrically (entire functions) make the local
    radius grow along the window; that is reported as ``inf``.
    """
    K = ts.K
    if K < 40:
        raise InsufficientCoefficients(f"need K >= 40 coefficients, have {K}")
    k = np.arange(K // 2, K + 1)
    mag = np.abs(np.asarray(ts.b, dtype=float)[k])
    keep = mag > floor
    k, mag = k[keep], mag[keep]
    if k.size < 8:
        raise InsufficientCoefficients("too few coefficients above the underflow floor")
    logs = np.log(mag)
    slope = np.polyfit(k, logs, 1)[0]
    third = k.size // 3
    early = np.polyfit(k[:third], logs[:third], 1)[0]
    late = np.polyfit(k[-third:], logs[-third:], 1)[0]
    r_early = math.exp(-early / ts.stride)
    r_late = math.exp(-late / ts.stride)
    if r_late > 1.1 * r_early:
        return math.inf
    return math.exp(-slope / ts.stride)

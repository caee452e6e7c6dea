"""Parameter pairs (p, n) and their classification.

``p`` is held as an exact fraction so that integrality of the conjugate
exponent ``p' = p/(p-1)`` is decided on integers, never by tolerance.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import InvalidParameter

__all__ = [
    "Params",
    "ConjugateInfo",
    "CaseClass",
    "from_p_rational",
    "from_conjugate",
    "parse_p",
    "conjugate",
    "classify",
]


@dataclass(frozen=True)
class Params:
    p_num: int
    p_den: int
    n: int

    def __post_init__(self):
        if self.p_den < 1 or self.p_num <= self.p_den:
            raise InvalidParameter(f"p = {self.p_num}/{self.p_den} must exceed 1")
        if gcd(self.p_num, self.p_den) != 1:
            raise InvalidParameter("p must be given in lowest terms")
        if self.n < 2:
            raise InvalidParameter(f"n = {self.n} must be an integer >= 2")

    @property
    def p(self) -> Fraction:
        return Fraction(self.p_num, self.p_den)

    @property
    def p_real(self) -> float:
        return self.p_num / self.p_den

    @property
    def inv_p(self) -> float:
        """1/p, the singularity exponent of every integrand."""
        return self.p_den / self.p_num

    @property
    def p_conj(self) -> Fraction:
        return Fraction(self.p_num, self.p_num - self.p_den)

    @property
    def m(self) -> int | None:
        """Integer conjugate exponent, or None when p' is not an integer."""
        return conjugate(self).m

    def label(self) -> str:
        p = str(self.p)
        return f"p={p}, n={self.n}"

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class ConjugateInfo:
    is_integer: bool
    m: int | None
    p_conj_real: float


class CaseClass(enum.Enum):
    NotAnalyticAtHalfPi = "NotAnalyticAtHalfPi"
    Case1_EvenEven = "Case1_EvenEven"
    Case2_EvenOdd = "Case2_EvenOdd"
    Case3_OddEven = "Case3_OddEven"
    Case4_OddOdd = "Case4_OddOdd"


def _check_int(value, name):
    if isinstance(value, bool) or int(value) != value:
        raise InvalidParameter(f"{name} must be an integer, got {value!r}")
    return int(value)


def from_p_rational(p_num: int, p_den: int, n: int) -> Params:
    """Build Params from p = p_num/p_den (reduced here) and n."""
    p_num = _check_int(p_num, "p_num")
    p_den = _check_int(p_den, "p_den")
    n = _check_int(n, "n")
    if p_den == 0:
        raise InvalidParameter("zero denominator")
    if p_den < 0:
        p_num, p_den = -p_num, -p_den
    g = gcd(p_num, p_den) or 1
    return Params(p_num // g, p_den // g, n)


def from_conjugate(m: int, n: int) -> Params:
    """Params with p = m/(m-1), i.e. conjugate exponent p' = m."""
    m = _check_int(m, "m")
    n = _check_int(n, "n")
    if m < 2:
        raise InvalidParameter(f"m = {m} must be >= 2")
    return Params(m, m - 1, n)


def parse_p(text: str, n: int) -> Params:
    """Parse ``"5/2"`` or ``"2"`` into Params."""
    try:
        frac = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidParameter(f"cannot parse p from {text!r}") from exc
    return from_p_rational(frac.numerator, frac.denominator, n)


def conjugate(params: Params) -> ConjugateInfo:
    diff = params.p_num - params.p_den
    q, r = divmod(params.p_num, diff)
    is_int = r == 0 and q >= 2
    return ConjugateInfo(is_int, q if is_int else None, params.p_num / diff)


def classify(params: Params) -> CaseClass:
    m = conjugate(params).m
    if m is None:
        return CaseClass.NotAnalyticAtHalfPi
    m_even = m % 2 == 0
    n_even = params.n % 2 == 0
    if m_even and n_even:
        return CaseClass.Case1_EvenEven
    if m_even:
        return CaseClass.Case2_EvenOdd
    if n_even:
        return CaseClass.Case3_OddEven
    return CaseClass.Case4_OddOdd

import math

import pytest

from gensine.constants import (
    Interval,
    base_domain,
    constant_set,
    maximal_interval,
    mu,
    mu_closed,
    nu,
    nu_closed,
    pi_pn,
    tails_finite,
    taylor_radius,
)
from gensine.errors import DomainError, InvalidParameter, NotAnalytic
from gensine.params import Params, from_conjugate


def test_interval_membership():
    iv = Interval(-1.0, 2.0)
    assert 0.0 in iv and -1.0 not in iv and 2.0 not in iv
    closed = Interval(-1.0, 2.0, closed_lo=True, closed_hi=True)
    assert -1.0 in closed and 2.0 in closed
    assert iv.length == 3.0
    assert not iv.symmetric and Interval(-1.0, 1.0).symmetric
    with pytest.raises(ValueError):
        Interval(1.0, 1.0)


def test_interval_str_uses_labels():
    assert str(Interval(-1.0, 2.0, "-nu", "mu")) == "(-nu, mu)"
    assert str(Interval(-1.0, 2.0, closed_hi=True)) == "(-1.0, 2.0]"


def test_tails_finite():
    assert not tails_finite(2, 2)
    assert tails_finite(2, 3)
    assert tails_finite(3, 2)


def test_divergent_tails_are_inf():
    assert mu(2, 2) == math.inf
    assert nu(2, 2) == math.inf
    with pytest.raises(InvalidParameter):
        mu(1, 3)


def test_classical_constants():
    c = constant_set(from_conjugate(2, 2))
    assert c.pi_pn == pytest.approx(math.pi, abs=1e-13)
    assert c.half_pi == pytest.approx(math.pi / 2, abs=1e-13)
    assert c.mu == c.nu == math.inf


def test_mu_equals_nu_on_diagonal():
    for n in (3, 4, 5):
        P = from_conjugate(n, n)
        c = constant_set(P)
        expected = 0.25 * c.pi_pn / math.cos(math.pi / n)
        assert c.mu == pytest.approx(expected, rel=1e-11)
        assert c.nu == pytest.approx(expected, rel=1e-11)


@pytest.mark.parametrize("m,n", [(2, 3), (3, 2), (4, 5), (3, 4), (2, 5)])
def test_closed_forms(m, n):
    P = from_conjugate(m, n)
    pi_value = pi_pn(P)
    assert mu(m, n) == pytest.approx(mu_closed(P, pi_value), rel=1e-11)
    assert nu(m, n) == pytest.approx(nu_closed(P, pi_value), rel=1e-11)


def test_closed_forms_need_p_below_n():
    P = from_conjugate(2, 2)
    with pytest.raises(DomainError):
        mu_closed(P, math.pi)
    with pytest.raises(DomainError):
        nu_closed(P, math.pi)


def test_intervals_by_case():
    iv = maximal_interval(from_conjugate(2, 4))
    assert iv.lo == -math.inf and iv.hi == math.inf

    P = from_conjugate(4, 3)
    c = constant_set(P)
    iv = maximal_interval(P)
    assert (iv.lo, iv.hi) == (-c.nu, c.pi_pn + c.nu)
    assert (iv.lo_label, iv.hi_label) == ("-nu", "pi_pn + nu")

    P = from_conjugate(3, 2)
    c = constant_set(P)
    iv = maximal_interval(P)
    assert (iv.lo, iv.hi) == (-c.half_pi - c.mu, c.half_pi + c.mu)
    assert iv.symmetric

    P = from_conjugate(3, 3)
    c = constant_set(P)
    iv = maximal_interval(P)
    assert (iv.lo, iv.hi) == (-c.nu, c.half_pi + c.mu)
    assert iv.lo == pytest.approx(-c.half_pi, rel=1e-12)
    assert iv.hi == pytest.approx(c.pi_pn, rel=1e-12)


def test_maximal_interval_not_analytic():
    with pytest.raises(NotAnalytic):
        maximal_interval(Params(5, 2, 7))


def test_base_domain():
    P = Params(5, 2, 7)
    dom = base_domain(P)
    c = constant_set(P)
    assert dom.lo == -c.nu and dom.hi == c.half_pi and dom.closed_hi
    even = base_domain(from_conjugate(3, 4))
    assert even.closed_lo and even.closed_hi and even.symmetric
    classical = base_domain(from_conjugate(2, 2))
    assert classical.lo == pytest.approx(-math.pi / 2, abs=1e-13)


def test_base_domain_odd_n_divergent_tail():
    dom = base_domain(Params(4, 1, 3))  # p = 4 > n = 3
    assert dom.lo == -math.inf and dom.lo_label == "-inf"


def test_taylor_radius():
    assert taylor_radius(from_conjugate(3, 3)) == constant_set(from_conjugate(3, 3)).mu
    assert taylor_radius(from_conjugate(2, 2)) == math.inf
    with pytest.raises(NotAnalytic):
        taylor_radius(Params(5, 2, 7))

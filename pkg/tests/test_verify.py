import math

import mpmath
import pytest

from gensine.constants import constant_set, maximal_interval
from gensine.errors import NotAnalytic
from gensine.params import Params, from_conjugate
from gensine.verify import (
    VerifyReport,
    beta,
    blowup_distance,
    fd_derivative,
    fd_step,
    interval_grid,
    log_gamma,
    mu_beta_oracle,
    nu_beta_oracle,
    ode_residual,
    pi_beta_oracle,
    round_trip_error,
    run_audit,
    stride_fit,
    tail_series,
)


def test_gamma_and_beta():
    assert log_gamma(5.0) == pytest.approx(math.log(24.0))
    assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-15)
    assert beta(2.0, 3.0) == pytest.approx(1 / 12, rel=1e-15)


def test_beta_oracles_against_mpmath():
    with mpmath.workdps(30):
        inv_p = mpmath.mpf(2) / 3
        mu = float(mpmath.quad(lambda t: (t ** 3 - 1) ** (-inv_p), [1, 2, mpmath.inf]))
        nu = float(mpmath.quad(lambda t: (1 + t ** 3) ** (-inv_p), [0, 1, mpmath.inf]))
        half = float(mpmath.quad(lambda t: (1 - t ** 3) ** (-inv_p), [0, 1]))
    # mpmath.quad itself is only good to ~1e-12 at these endpoint singularities
    assert mu_beta_oracle(3, 3) == pytest.approx(mu, rel=1e-11)
    assert nu_beta_oracle(3, 3) == pytest.approx(nu, rel=1e-11)
    assert pi_beta_oracle(from_conjugate(3, 3)) == pytest.approx(2 * half, rel=1e-11)


def test_pi_oracle_classical_and_lemniscate():
    assert pi_beta_oracle(from_conjugate(2, 2)) == pytest.approx(math.pi, rel=1e-15)
    assert pi_beta_oracle(from_conjugate(2, 4)) == pytest.approx(2.6220575542921198, rel=1e-14)


@pytest.mark.parametrize("order,expected", [(1, math.cos), (2, lambda x: -math.sin(x)),
                                            (3, lambda x: -math.cos(x)), (4, math.sin)])
def test_fd_derivative(order, expected):
    x = 0.7
    assert fd_derivative(math.sin, x, order) == pytest.approx(expected(x), abs=10 ** (-9 + 2 * order))
    assert fd_derivative(math.sin, x, order, richardson=True) == pytest.approx(expected(x), abs=1e-5)


def test_richardson_improves_steep_function():
    f = lambda x: 1.0 / (1.05 - x)  # noqa: E731
    exact = 1.0 / 0.05 ** 2
    plain = abs(fd_derivative(f, 1.0, 1, h=1e-3) - exact)
    better = abs(fd_derivative(f, 1.0, 1, h=1e-3, richardson=True) - exact)
    assert better < 1e-3 * plain


def test_fd_bad_order():
    with pytest.raises(ValueError):
        fd_derivative(math.sin, 0.0, 7)
    assert fd_step(2, 0.0) == pytest.approx(1e-15 ** 0.25)


def test_tail_series_against_quadrature():
    inv_p, n = 2 / 3, 3
    q = n * inv_p - 1
    for sign in (1.0, -1.0):
        for z in (1e-3, 0.1, 0.4):
            with mpmath.workdps(30):
                expected = float(mpmath.quad(
                    lambda s: s ** (q - 1) * (1 + sign * s ** n) ** (-mpmath.mpf(inv_p)), [0, z]))
            assert tail_series(inv_p, n, z, sign) == pytest.approx(expected, rel=1e-13)


def test_blowup_distance_hits_target():
    P = from_conjugate(3, 3)
    iv = maximal_interval(P)
    d = blowup_distance(P, "left")
    assert 0 < d < 1
    from gensine.evaluator import sin_pn
    assert sin_pn(P, iv.lo + d).y == pytest.approx(-1.01e3, rel=1e-6)
    d = blowup_distance(P, "right")
    assert sin_pn(P, iv.hi - d).y == pytest.approx(1.01e3, rel=1e-6)
    with pytest.raises(ValueError):
        blowup_distance(P, "middle")


def test_interval_grid():
    P = from_conjugate(3, 3)
    iv = maximal_interval(P)
    g = interval_grid(P, 50)
    assert len(g) == 50
    assert g[0] == pytest.approx(iv.lo + 1e-3) and g[-1] == pytest.approx(iv.hi - 1e-3)
    g = interval_grid(from_conjugate(2, 4), 10)
    assert g[-1] == pytest.approx(3 * constant_set(from_conjugate(2, 4)).pi_pn)


def test_round_trip_and_ode_helpers():
    for P in (from_conjugate(3, 3), from_conjugate(2, 4), from_conjugate(4, 3)):
        for x in interval_grid(P, 15):
            err, allowance = round_trip_error(P, x)
            assert err <= 1e-10 + allowance
            assert abs(ode_residual(P, x)) <= 1e-8


def test_stride_fit_is_pure():
    coeffs = stride_fit(from_conjugate(3, 3))
    assert max(abs(c) for j, c in enumerate(coeffs) if j % 3) < 1e-8


def test_report_constructors():
    r = VerifyReport.compare("x", 1.0, 1.0 + 1e-12, 1e-10)
    assert r.passed and r.abs_err == pytest.approx(1e-12)
    assert not VerifyReport.compare("x", 1.0, 2.0, 1e-10).passed
    inf = VerifyReport.compare("x", math.inf, math.inf, 1e-10)
    assert inf.passed and inf.abs_err == 0.0
    assert VerifyReport.bound("b", -1e-9, 1e-8).passed
    assert not VerifyReport.bound("b", 1e-7, 1e-8).passed
    s = VerifyReport.skipped("s", "why")
    assert s.passed and s.note == "skipped: why"


@pytest.mark.parametrize("m,n", [(2, 2), (3, 3), (2, 4), (4, 3), (3, 2)])
def test_audit_passes(m, n):
    reports = run_audit(from_conjugate(m, n), grid_size=40)
    failed = [r for r in reports if not r.passed]
    assert not failed, failed
    names = {r.check_name for r in reports}
    assert any("round trip" in name for name in names)
    assert any("ODE" in name for name in names)


def test_audit_classical_skips_radius():
    reports = run_audit(from_conjugate(2, 2), grid_size=40)
    assert any(r.note.startswith("skipped") for r in reports)


def test_audit_needs_integer_conjugate():
    with pytest.raises(NotAnalytic):
        run_audit(Params(5, 2, 7))

"""Acceptance criteria 1-12, each at its stated tolerance.

Every test prints one PASS/FAIL line (also collected into the terminal
summary).  Run directly with ``python3 tests/test_acceptance.py`` to get
just the twelve lines.
"""

import math

import numpy as np
import pytest

from gensine.constants import constant_set, maximal_interval, mu_closed, nu_closed
from gensine.evaluator import sin_pn
from gensine.params import CaseClass, classify, from_conjugate
from gensine.series import estimate_radius, taylor_at_center
from gensine.verify import (
    blowup_distance,
    critical_order_fd,
    interval_grid,
    mu_beta_oracle,
    nu_beta_oracle,
    ode_residual,
    pi_beta_oracle,
    round_trip_error,
    stride_fit,
)

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # pragma: no cover
    ACCEPTANCE_LINES = {}

PAIRS = [(2, 2)] + [(m, n) for m in (2, 3, 4) for n in (2, 3, 4, 5) if n * (m - 1) > m]
TAIL_PAIRS = [mn for mn in PAIRS if mn != (2, 2)]
CLIP = 1e-3


def report(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}: {detail}"
    ACCEPTANCE_LINES[number] = line
    print(line)
    assert ok, line


def rel(a, b):
    return abs(a - b) / max(abs(a), abs(b))


def test_01_classical_anchor():
    P = from_conjugate(2, 2)
    xs = np.linspace(-math.pi / 2, math.pi / 2, 1000)
    err = max(abs(sin_pn(P, x).y - math.sin(x)) for x in xs)
    pi_err = abs(constant_set(P).pi_pn - math.pi)
    report(1, "classical anchor", err <= 1e-10 and pi_err <= 1e-11,
           f"max|sin_2,2 - sin| = {err:.1e} (<= 1e-10), |pi_2,2 - pi| = {pi_err:.1e} (<= 1e-11)")


def test_02_round_trip():
    worst_rt, worst_res, where = 0.0, 0.0, None
    for mn in PAIRS:
        P = from_conjugate(*mn)
        for x in interval_grid(P, 200, clip=CLIP):
            err, _ = round_trip_error(P, x)
            res = sin_pn(P, x).residual
            if err > worst_rt:
                worst_rt, where = err, mn
            worst_res = max(worst_res, res)
    report(2, "round trip", worst_rt <= 1e-10 and worst_res <= 1e-10,
           f"max |F(y) - x| = {worst_rt:.1e} at {where}, max branch residual = {worst_res:.1e} (<= 1e-10)")


def test_03_closed_forms():
    worst = 0.0
    for m, n in TAIL_PAIRS:
        P = from_conjugate(m, n)
        c = constant_set(P)
        worst = max(worst, rel(c.mu, mu_closed(P, c.pi_pn)), rel(c.nu, nu_closed(P, c.pi_pn)))
    report(3, "closed forms for mu, nu", worst <= 1e-9, f"max relative error {worst:.1e} (<= 1e-9)")


def test_04_triangle_identities():
    worst = 0.0
    for m, n in TAIL_PAIRS:
        c = constant_set(from_conjugate(m, n))
        a, b = math.pi / n, math.pi / m
        worst = max(worst,
                    rel(c.nu * math.sin(a), c.mu * math.sin(b)),
                    rel(c.nu * math.cos(a) + c.mu * math.cos(b), c.half_pi))
    report(4, "triangle identities", worst <= 1e-9, f"max relative error {worst:.1e} (<= 1e-9)")


def test_05_diagonal_remark():
    worst = 0.0
    for n in (3, 4, 5, 6):
        c = constant_set(from_conjugate(n, n))
        target = 0.25 * c.pi_pn / math.cos(math.pi / n)
        worst = max(worst, rel(c.mu, target), rel(c.nu, target))
    P = from_conjugate(3, 3)
    c = constant_set(P)
    iv = maximal_interval(P)
    ends = max(rel(iv.lo, -c.half_pi), rel(iv.hi, c.pi_pn), rel(iv.length, 1.5 * c.pi_pn))
    report(5, "mu(n,n) = nu(n,n) and the n = 3 interval", worst <= 1e-9 and ends <= 1e-9,
           f"diagonal {worst:.1e}, interval ends/length {ends:.1e} (<= 1e-9)")


def test_06_beta_oracles():
    worst = 0.0
    for m, n in PAIRS:
        c = constant_set(from_conjugate(m, n))
        worst = max(worst, rel(c.pi_pn, pi_beta_oracle(from_conjugate(m, n))))
        if (m, n) != (2, 2):
            worst = max(worst, rel(c.mu, mu_beta_oracle(m, n)), rel(c.nu, nu_beta_oracle(m, n)))
    report(6, "Beta oracles", worst <= 1e-10, f"max relative error {worst:.1e} (<= 1e-10)")


def test_07_identities():
    refl = 0.0
    for m, n in PAIRS:
        if m % 2:
            continue
        P = from_conjugate(m, n)
        c = constant_set(P)
        iv = maximal_interval(P)
        reach = min(iv.hi - c.half_pi, c.half_pi - iv.lo, 2 * c.pi_pn) - CLIP
        for t in np.linspace(0.0, reach, 100):
            a, b = sin_pn(P, c.half_pi + t).y, sin_pn(P, c.half_pi - t).y
            # near a blow-up end one ulp of x moves y by ulp * |y'| >> 1e-10
            refl = max(refl, abs(a - b) / max(1.0, abs(a)))
    period = 0.0
    for mn in ((2, 4), (2, 6)):
        P = from_conjugate(*mn)
        T = 2 * constant_set(P).pi_pn
        for x in np.linspace(-T, T, 100):
            period = max(period, abs(sin_pn(P, x + T).y - sin_pn(P, x).y))
    odd = 0.0
    for m, n in PAIRS:
        if n % 2:
            continue
        P = from_conjugate(m, n)
        for x in interval_grid(P, 100, clip=CLIP):
            odd = max(odd, abs(sin_pn(P, -x).y + sin_pn(P, x).y))
    ok = refl <= 1e-10 and period <= 1e-10 and odd <= 1e-12
    report(7, "reflection, periodicity, oddness", ok,
           f"reflection {refl:.1e} (rel. to max(1,|y|), <= 1e-10), period {period:.1e} (<= 1e-10), odd {odd:.1e} (<= 1e-12)")


def test_08_critical_order():
    low, high = 0.0, math.inf
    for m, n in ((3, 3), (4, 5), (2, 3)):
        P = from_conjugate(m, n)
        for k in range(1, m):
            low = max(low, abs(critical_order_fd(P, k)))
        high = min(high, abs(critical_order_fd(P, m)))
    report(8, "critical order at 1/2 pi", low <= 1e-5 and high >= 1e-2,
           f"max |D^k|, k < m: {low:.1e} (<= 1e-5), min |D^m|: {high:.3g} (>= 1e-2)")


def test_09_taylor_radius():
    worst, where = 0.0, None
    for mn in ((2, 3), (2, 4), (3, 2), (3, 3), (3, 4), (4, 3), (4, 5)):
        P = from_conjugate(*mn)
        r = estimate_radius(taylor_at_center(P, K=60))
        e = abs(r - constant_set(P).mu) / constant_set(P).mu
        if e > worst:
            worst, where = e, mn
    report(9, "Taylor radius vs mu", worst <= 0.02, f"max relative error {worst:.2%} at {where} (<= 2%)")


def test_10_stride_purity():
    worst = 0.0
    for m, n in ((3, 3), (4, 5)):
        coeffs = stride_fit(from_conjugate(m, n))
        worst = max(worst, max(abs(c) for j, c in enumerate(coeffs) if j % m))
    report(10, "stride purity", worst <= 1e-8, f"max off-stride coefficient {worst:.1e} (<= 1e-8)")


def test_11_blowup():
    lows, checked = math.inf, 0
    for m, n in PAIRS:
        P = from_conjugate(m, n)
        case = classify(P)
        if case not in (CaseClass.Case2_EvenOdd, CaseClass.Case4_OddOdd):
            continue
        iv = maximal_interval(P)
        d_left = blowup_distance(P, "left")
        d_right = d_left if case is CaseClass.Case2_EvenOdd else blowup_distance(P, "right")
        for x in (iv.lo + d_left, iv.hi - d_right):
            lows = min(lows, abs(sin_pn(P, x).y))
            checked += 1
    report(11, "blow-up at finite ends", checked == 12 and lows >= 1e3,
           f"min |sin_pn| = {lows:.1f} over {checked} endpoints (>= 1e3)")


def _branch_segments(P):
    c = constant_set(P)
    iv = maximal_interval(P)
    if classify(P) is CaseClass.Case1_EvenEven:
        T = 2 * c.pi_pn
        return [(-c.half_pi, c.half_pi), (c.half_pi, c.half_pi + c.pi_pn),
                (-3 * T, -2 * T), (-c.half_pi - c.pi_pn, -c.half_pi)]
    segs = [(max(iv.lo + CLIP, -c.half_pi) if P.n % 2 == 0 else iv.lo + CLIP, c.half_pi),
            (c.half_pi, iv.hi - CLIP)]
    if P.n % 2 == 0:
        segs.append((iv.lo + CLIP, -c.half_pi))
    return segs


def test_12_ode_residual():
    worst, where = 0.0, None
    for mn in PAIRS:
        P = from_conjugate(*mn)
        for a, b in _branch_segments(P):
            if not a < b:
                continue
            for x in np.linspace(a, b, 200):
                r = abs(ode_residual(P, x))
                if r > worst:
                    worst, where = r, mn
    report(12, "ODE residual per branch", worst <= 1e-8,
           f"max |y'|^p - |1 - y^n| (scaled) = {worst:.1e} at {where} (<= 1e-8)")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))

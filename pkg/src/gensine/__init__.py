"""Generalized sine functions sin_{p,n} with two parameters.

sin_{p,n} is the inverse of F_{p,n}(y) = int_0^y (1 - t^n)^(-1/p) dt,
continued along the real line.  It is real-analytic at its critical point
1/2 pi_{p,n} exactly when p' = p/(p-1) is an integer; the parities of p' and
n then fix the maximal interval of analyticity.
"""

from .constants import (
    ConstantSet,
    Interval,
    base_domain,
    constant_set,
    maximal_interval,
    mu,
    mu_closed,
    nu,
    nu_closed,
    pi_pn,
    taylor_radius,
)
from .errors import (
    ConvergenceFailure,
    DomainError,
    GenSineError,
    InsufficientCoefficients,
    InvalidParameter,
    NotAnalytic,
    OutOfDisk,
    OutOfDomain,
    SingularReversion,
)
from .evaluator import Branch, BranchKind, EvalResult, d_sin_pn, sin_base, sin_pn
from .params import CaseClass, Params, classify, conjugate, from_conjugate, from_p_rational, parse_p
from .quadrature import DEFAULT_TOL, Tolerance
from .series import PowerSeries, TaylorSeries, estimate_radius, eval_series, taylor_at_center
from .verify import VerifyReport, run_audit

__version__ = "0.1.0"

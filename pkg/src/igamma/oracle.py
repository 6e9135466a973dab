"""Independent ground-truth evaluators for the upper incomplete gamma function.

Nothing here imports from ``igamma.core`` or the kernels: these routines
are what the series representations are checked against.

Two routes are provided for Gamma(a, x) so that neither is trusted alone:

* ``gamma_upper_quadrature`` integrates t**(a-1) e**-t on [x, T] with an
  adaptive QUADPACK rule and bounds the [T, inf) tail analytically;
* ``gamma_upper_cf`` uses the Legendre continued fraction (modified Lentz)
  or, below the transition x < a + 1, the power series of the lower
  function subtracted from a Lanczos evaluation of the complete Gamma(a).

The Lanczos coefficients (g = 7, n = 9) are the widely reproduced table of
P. Godfrey, "A note on the computation of the convergent Lanczos complex
Gamma approximation" (2001).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

from .base import ConvergenceError, DomainError

LANCZOS_G = 7.0
LANCZOS_COEFFICIENTS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
# Worst relative error of the table over a in [0.01, 30] is 6.7e-15
# (measured against 30-digit values; see tests/test_oracle.py).
LANCZOS_RELATIVE_ERROR = 1e-14

EVALUATION_BUDGET = 10_000_000
CF_ITERATION_CAP = 100_000
_FPMIN = 1e-300
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class OracleResult:
    value: float
    achieved_tolerance: float
    evaluations: int


def lanczos_gamma(a: float) -> float:
    """Complete Gamma(a) for real ``a`` (reflection below 1/2)."""
    if a < 0.5:
        if a == math.floor(a):
            raise DomainError(f"Gamma has a pole at a={a}")
        return math.pi / (math.sin(math.pi * a) * lanczos_gamma(1.0 - a))
    z = a - 1.0
    series = LANCZOS_COEFFICIENTS[0]
    for i, c in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        series += c / (z + i)
    t = z + LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * series


def quad_finite(f, lo: float, hi: float, tol: float = 1e-13, limit: int = 500):
    """Adaptive Gauss-Kronrod integral of ``f`` over [lo, hi].

    Returns ``(value, abserr, evaluations)``; ``tol`` is relative.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        value, abserr, info = integrate.quad(
            f, lo, hi, epsabs=0.0, epsrel=tol, limit=limit, full_output=1
        )[:3]
    return value, abserr, int(info["neval"])


def _tail_bound(a: float, t: float) -> float:
    """Upper bound on int_t^inf s**(a-1) e**-s ds, valid for t > |a - 1|.

    From ln(s/t) <= s/t - 1: s**(a-1) <= t**(a-1) exp((a-1)(s-t)/t), which
    integrates to t**(a-1) e**-t / (1 - |a-1|/t).
    """
    return math.exp((a - 1.0) * math.log(t) - t) / (1.0 - abs(a - 1.0) / t)


def gamma_upper_quadrature(a: float, x: float, tol: float = 1e-12) -> OracleResult:
    if tol < 1e-13:
        raise DomainError(f"quadrature tolerance must be >= 1e-13, got {tol}")
    if not (x > 0.0 or (x == 0.0 and a > 0.0)):
        raise DomainError(f"quadrature oracle needs x > 0, or x = 0 with a > 0 (a={a}, x={x})")

    def integrand(t):
        return math.exp((a - 1.0) * math.log(t) - t) if t > 0.0 else 0.0

    lo = x
    hi = max(2.0 * abs(a - 1.0), x) + 1.0
    pieces, errors, evaluations = [], [], 0
    while True:
        value, abserr, neval = quad_finite(integrand, lo, hi, tol / 4.0)
        pieces.append(value)
        errors.append(abserr)
        evaluations += neval
        total = math.fsum(pieces)
        bound = _tail_bound(a, hi)
        if bound < 0.5 * tol * total:
            break
        if evaluations > EVALUATION_BUDGET:
            raise ConvergenceError(f"quadrature budget exhausted at a={a}, x={x}")
        lo, hi = hi, 2.0 * hi
    achieved = (math.fsum(errors) + bound) / total
    if achieved > tol:
        raise ConvergenceError(
            f"quadrature reached {achieved:.3g} > {tol:.3g} at a={a}, x={x}"
        )
    return OracleResult(total, achieved, evaluations)


def _lower_series(a: float, x: float):
    """Regularisation-free lower function gamma(a, x) by its power series."""
    ap = a
    term = 1.0 / a
    total = term
    n = 0
    while abs(term) > abs(total) * _EPS:
        ap += 1.0
        term *= x / ap
        total += term
        n += 1
        if n > CF_ITERATION_CAP:
            raise ConvergenceError(f"lower series did not converge at a={a}, x={x}")
    return total * math.exp(a * math.log(x) - x), abs(term / total), n


def gamma_upper_cf(a: float, x: float, tol: float = 1e-13) -> OracleResult:
    if tol < 1e-14:
        raise DomainError(f"continued-fraction tolerance must be >= 1e-14, got {tol}")
    if x < 0.0 or (x == 0.0 and a <= 0.0):
        raise DomainError(f"continued-fraction oracle needs x > 0 (a={a}, x={x})")
    if x == 0.0:
        return OracleResult(lanczos_gamma(a), LANCZOS_RELATIVE_ERROR, 1)

    if a > 0.0 and x < a + 1.0:
        complete = lanczos_gamma(a)
        lower, rel, n = _lower_series(a, x)
        value = complete - lower
        achieved = (rel * lower + LANCZOS_RELATIVE_ERROR * complete) / value
        if achieved <= tol:
            return OracleResult(value, achieved, n)
        # Too much cancellation against Gamma(a); the fraction still converges.

    cf = _continued_fraction(a, x)
    if cf is None:
        raise ConvergenceError(f"continued fraction exceeded {CF_ITERATION_CAP} iterations")
    return cf


def _continued_fraction(a: float, x: float):
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / (b if b != 0.0 else _FPMIN)
    h = d
    for i in range(1, CF_ITERATION_CAP + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        return None
    value = math.exp(a * math.log(x) - x) * h
    return OracleResult(value, max(abs(delta - 1.0), _EPS), i)


def erfc_oracle(x: float, tol: float = 1e-13) -> OracleResult:
    """Complementary error function as Gamma(1/2, x**2) / sqrt(pi)."""
    if x == 0.0:
        return OracleResult(1.0, 0.0, 0)
    if x < 0.0:
        inner = erfc_oracle(-x, tol)
        return OracleResult(2.0 - inner.value, inner.achieved_tolerance, inner.evaluations)
    g = gamma_upper_cf(0.5, x * x, tol)
    return OracleResult(g.value / math.sqrt(math.pi), g.achieved_tolerance, g.evaluations)


def fresnel_oracle(x: float, tol: float = 1e-13) -> tuple[float, float]:
    """Fresnel integrals (C(x), S(x)) by quadrature of their defining integrands."""
    if x == 0.0:
        return 0.0, 0.0
    c, _, _ = quad_finite(lambda t: math.cos(0.5 * math.pi * t * t), 0.0, x, tol)
    s, _, _ = quad_finite(lambda t: math.sin(0.5 * math.pi * t * t), 0.0, x, tol)
    return c, s

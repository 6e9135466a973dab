"""Series representations of the upper incomplete gamma function Gamma(a, x).

The order ``a`` is real; the argument ``x`` may be real or complex, with
fractional powers taken on the principal branch. Three families are
provided:

* the classical large-x asymptotic series (``standard_asymptotic``);
* the binomially re-expanded family with a free shift ``lam``
  (``asymptotic_series``), its stationary choice ``lam = 1 + x``
  (``asymptotic_series_pms``) and the closed first-order form
  ``e**-x (1+x)**(a-1)`` (``first_order``);
* the exact series obtained by cutting [x, inf) into segments
  [x_q, xi (1 + x_q)] and expanding t**(a-1) about 1 + x_q inside each one
  (``convergent_series``), with an optional Taylor split near the origin
  (``hybrid_small_x``).

All functions are pure. Alternating sums are accumulated with compensated
summation; see :mod:`igamma.kernels` for the inner loops.
"""

from __future__ import annotations

import cmath
import math

from . import kernels
from .base import (
    MAX_ORDER,
    AsymptoticConfig,
    ConfigError,
    ConvergentConfig,
    DomainError,
    Evaluation,
    GammaPoint,
    LogarithmicCaseError,
    MethodKind,
    Scalar,
    as_scalar,
    is_real,
    on_negative_axis,
)


_EPS = 2.220446049250313e-16


def _exp(z: Scalar) -> Scalar:
    return cmath.exp(z) if isinstance(z, complex) else math.exp(z)


def _fsum(values) -> Scalar:
    values = list(values)
    if any(isinstance(v, complex) for v in values):
        return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))
    return math.fsum(values)


def _check_branch(base: Scalar, a: float, what: str) -> None:
    if on_negative_axis(base) and a != math.floor(a):
        raise DomainError(f"{what}={base!r} lies on the principal-branch cut")


def falling_factorial(a: float, r: int) -> float:
    """Return (a-1)(a-2)...(a-r), i.e. Gamma(a)/Gamma(a-r) without evaluating Gamma.

    >>> falling_factorial(5, 2)
    12.0
    """
    if r < 0:
        raise DomainError(f"r must be non-negative, got {r}")
    product = 1.0
    for k in range(1, r + 1):
        product *= a - k
    return product


def integer_tail_integral(u: int, x: Scalar) -> Scalar:
    """Exact int_x^inf t**u e**-t dt = e**-x sum_{p<=u} u!/p! x**p for integer u >= 0."""
    if u < 0:
        raise DomainError(f"u must be non-negative, got {u}")
    x = as_scalar(x)
    terms = []
    coefficient = 1.0  # u!/p! for p = u, u-1, ...
    for p in range(u, -1, -1):
        terms.append(coefficient * x**p)
        coefficient *= p
    return _exp(-x) * _fsum(terms)


def standard_asymptotic(point: GammaPoint, n_terms: int) -> Evaluation:
    """Classical series x**(a-1) e**-x sum_k (a-1)...(a-k) / x**k, first ``n_terms`` terms."""
    if n_terms < 1:
        raise ConfigError(f"n_terms must be >= 1, got {n_terms}")
    a, x = point.a, point.x
    if x == 0:
        raise DomainError("standard asymptotic series is undefined at x = 0")
    _check_branch(x, a, "x")
    terms = []
    term = 1.0
    for k in range(n_terms):
        if k:
            term = term * (a - k) / x
        terms.append(term)
    prefactor = x ** (a - 1.0) * _exp(-x)
    return Evaluation(
        value=prefactor * _fsum(terms),
        error_estimate=abs(prefactor * terms[-1]),
        terms_used=n_terms,
        method=MethodKind.StandardAsymptotic,
    )


def pms_lambda(x: Scalar) -> Scalar:
    """Stationary shift parameter of the first-order lambda family: 1 + x."""
    return 1.0 + as_scalar(x)


def asymptotic_series(point: GammaPoint, config: AsymptoticConfig) -> Evaluation:
    """Lambda-shifted asymptotic family truncated at r = ``config.R``.

    The error estimate is the magnitude of the r = R shell.
    """
    total, last, count = kernels.asymptotic_sum(point.a, point.x, config.lam, config.R)
    return Evaluation(total, abs(last), count, MethodKind.AsymptoticLambda)


def asymptotic_series_pms(point: GammaPoint, R: int) -> Evaluation:
    """The lambda family at its stationary point lam = 1 + x."""
    lam = pms_lambda(point.x)
    if not lam.real > 0.0:
        raise DomainError(f"PMS series needs Re(1 + x) > 0, got 1 + x = {lam!r}")
    evaluation = asymptotic_series(point, AsymptoticConfig(R, lam))
    return Evaluation(
        evaluation.value, evaluation.error_estimate, evaluation.terms_used, MethodKind.AsymptoticPMS
    )


def optimal_order(point: GammaPoint, lam: Scalar | None = None, max_order: int = MAX_ORDER) -> int:
    """Truncation order R in [0, max_order] whose last shell is smallest.

    Stop-at-the-smallest-term heuristic for the divergent lambda family;
    ``lam`` defaults to the PMS value 1 + x. Shells that cancel to rounding
    level (the r = 1 shell at the PMS point does so identically) carry no
    size information and are skipped. For integer a the series terminates
    and the last non-vanishing order is returned.
    """
    lam = AsymptoticConfig(0, pms_lambda(point.x) if lam is None else lam).lam
    best_order, best_size = 0, math.inf
    for R in range(1, max_order + 1):
        if falling_factorial(point.a, R) == 0.0:
            return R - 1
        total, last, _ = kernels.asymptotic_sum(point.a, point.x, lam, R)
        size = abs(last)
        if size <= 4.0 * _EPS * abs(total):
            continue
        if size < best_size:
            best_order, best_size = R, size
    return best_order


def first_order(point: GammaPoint, scaled: bool = False) -> Scalar:
    """Closed first-order form e**-x (1 + x)**(a - 1).

    With ``scaled=True`` the factor e**-x is omitted, which keeps the
    result representable for large x (e.g. x = 1e4).
    """
    a, x = point.a, point.x
    base = 1.0 + x
    if not base.real > 0.0:
        raise DomainError(f"first-order form needs Re(1 + x) > 0, got 1 + x = {base!r}")
    _check_branch(base, a, "1 + x")
    power = base ** (a - 1.0)
    return power if scaled else _exp(-x) * power


def _segment_inputs(x: Scalar, config: ConvergentConfig) -> None:
    if on_negative_axis(1.0 + x):
        raise DomainError(f"1 + x = {1.0 + x!r} lies on the principal-branch cut")
    config.check_start(x)


def segment_contribution(a: float, x_q: Scalar, xi: float, r_max: int) -> Scalar:
    """Series value of int_{x_q}^{xi (1 + x_q)} t**(a-1) e**-t dt with lam = 1 + x_q."""
    config = ConvergentConfig(r_max=r_max, q_max=0, xi=xi)
    x_q = as_scalar(x_q)
    _segment_inputs(x_q, config)
    values = kernels.segments(float(a), x_q, config.xi, config.r_max, 0)[0]
    return values[0]


def _shell_remainder(last: Scalar, before: Scalar, r_max: int) -> float:
    """Size of the r > r_max remainder of one segment, plus its last shell.

    The ratio of the last two shells is read as geometric decay or, when
    close to one, as power-law decay s_r ~ r**-p with p = r_max (1 - ratio);
    the larger of the two extrapolated remainders is used.
    """
    s, p = abs(last), abs(before)
    if s == 0.0:
        return 0.0
    if p == 0.0:
        return s
    ratio = s / p
    if ratio >= 1.0:
        return s * (1.0 + r_max)
    geometric = ratio / (1.0 - ratio)
    power = r_max * (1.0 - ratio)
    if power > 8.0:
        return s * (1.0 + geometric)
    algebraic = r_max / (power - 1.0) if power > 1.05 else 20.0 * r_max
    return s * (1.0 + max(geometric, algebraic))


def _tail_size(a: float, x_next: Scalar) -> float:
    """Rough size of the neglected tail Gamma(a, x_next)."""
    if is_real(x_next) and a > 1.0 and x_next.real < a - 1.0:
        # Before the integrand peaks no expansion at x_next is reliable.
        return math.exp(math.lgamma(a))
    value, last, _ = kernels.asymptotic_sum(a, x_next, 1.0 + x_next, 2)
    return abs(value) + abs(last)


def convergent_series(point: GammaPoint, config: ConvergentConfig = ConvergentConfig()) -> Evaluation:
    """Segmented convergent series truncated at (r_max, q_max).

    Segments are accumulated q-outermost with compensated summation. The
    segment starts follow x_q = xi (1 + x_{q-1}) by recurrence (x_q = x + q
    when xi = 1).

    The error estimate is a heuristic with three parts: the size of the
    neglected tail Gamma(a, x_{q_max+1}) from the second-order stationary
    series, an extrapolation of each segment's r > r_max remainder from its
    last two shells, and a rounding floor for the alternating shell sums.
    """
    a, x = point.a, point.x
    _segment_inputs(x, config)
    r_max = config.r_max
    values, shells, before, x_next, n_terms = kernels.segments(a, x, config.xi, r_max, config.q_max)
    truncation = math.fsum(_shell_remainder(s, p, r_max) for s, p in zip(shells, before))
    rounding = _EPS * 2.0**r_max * math.fsum(abs(v) for v in values)
    error = _tail_size(a, x_next) + truncation + rounding
    return Evaluation(_fsum(values), error, n_terms, MethodKind.Convergent)


def convergent_segments(point: GammaPoint, config: ConvergentConfig) -> list[Scalar]:
    """Individual segment contributions q = 0..q_max (for inspection and tests)."""
    _segment_inputs(point.x, config)
    return kernels.segments(point.a, point.x, config.xi, config.r_max, config.q_max)[0]


def segment_starts(x: Scalar, xi: float, count: int) -> list[Scalar]:
    """Segment starts x_0 = x, x_q = xi (1 + x_{q-1}) for q < count."""
    starts = [as_scalar(x)]
    for _ in range(count - 1):
        starts.append(xi * (1.0 + starts[-1]))
    return starts


def hybrid_small_x(
    point: GammaPoint,
    epsilon: float = 1.0,
    taylor_order: int = 30,
    config: ConvergentConfig = ConvergentConfig(),
) -> Evaluation:
    """Gamma(a, x) for |x| < eps as int_x^eps (Taylor) + Gamma(a, eps) (convergent).

    On the straight path from x to eps the exponential is expanded to
    ``taylor_order`` and integrated term by term:
    sum_k (-1)**k/k! (eps**(a+k) - x**(a+k)) / (a+k).
    For complex x the path stays off the branch cut because x itself does.
    """
    a, x = point.a, point.x
    if not epsilon > 0.0:
        raise ConfigError(f"epsilon must be > 0, got {epsilon}")
    if is_real(x):
        x = x.real
        if not x < epsilon:
            raise DomainError(f"hybrid split needs x < epsilon, got x={x}, epsilon={epsilon}")
    elif not abs(x) < epsilon:
        raise DomainError(f"hybrid split needs |x| < epsilon, got |x|={abs(x):.6g}, epsilon={epsilon}")
    if taylor_order < 1:
        raise ConfigError(f"taylor_order must be >= 1, got {taylor_order}")
    for k in range(taylor_order + 2):
        if abs(a + k) < 1e-12:
            raise LogarithmicCaseError(
                f"a + {k} = 0: logarithmic Taylor term is not implemented (a={a})"
            )
    terms = []
    inv_factorial = 1.0
    for k in range(taylor_order + 1):
        if k:
            inv_factorial /= k
        s = a + k
        piece = epsilon**s - (x**s if x != 0 else 0.0)
        term = inv_factorial * piece / s
        terms.append(-term if k % 2 else term)
    k = taylor_order + 1
    s = a + k
    next_term = inv_factorial / k * (epsilon**s + abs(x) ** s) / abs(s)
    tail = convergent_series(GammaPoint(a, epsilon), config)
    return Evaluation(
        value=_fsum(terms) + tail.value,
        error_estimate=next_term + tail.error_estimate,
        terms_used=len(terms) + tail.terms_used,
        method=MethodKind.HybridSmallX,
    )


def reduced(point: GammaPoint, value: Scalar) -> Scalar:
    """``value`` divided by the first-order form e**-x (1 + x)**(a - 1)."""
    denominator = first_order(point)
    if denominator == 0:
        raise DomainError(f"first-order form underflows at x={point.x!r}")
    return value / denominator

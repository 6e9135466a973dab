"""Error function, probability integral and Fresnel integrals via Gamma(a, x).

Arguments with |x| below ``SMALL_ARGUMENT_SPLIT`` are evaluated with the
Taylor/series split (:func:`igamma.core.hybrid_small_x`): for a = 1/2 the
bare segmented series converges only like r_max**-1/2 near x = 0. Pass
``split=None`` to use the bare convergent series everywhere.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

from .base import ConvergentConfig, DomainError, Evaluation, GammaPoint, MethodKind, Scalar
from .core import convergent_series, hybrid_small_x

SQRT_PI = math.sqrt(math.pi)
# Taylor integration of e**-t on [0, 2] to order 30 is exact in double
# precision, and the series then starts at lam = 3 (ratio 1/3 per order).
SMALL_ARGUMENT_SPLIT = 2.0
TAYLOR_ORDER = 30


@dataclass(frozen=True)
class FresnelPair:
    c: float
    s: float


class ErfRoute(enum.Enum):
    """Which Gamma(1/2 + n, x**2/2) the probability integral is reduced to."""

    ViaHalf = 0
    ViaThreeHalves = 1
    ViaFiveHalves = 2

    @property
    def order(self) -> float:
        return 0.5 + self.value


def gamma_upper(
    a: float, x: Scalar, config: ConvergentConfig, split: float | None = SMALL_ARGUMENT_SPLIT
) -> Evaluation:
    """Gamma(a, x) by the convergent series, with the Taylor split for |x| < split."""
    point = GammaPoint(a, x)
    if split is not None and abs(point.x) < split:
        return hybrid_small_x(point, split, TAYLOR_ORDER, config)
    return convergent_series(point, config)


def gamma_recurrence_down(a: float, x: Scalar, gamma_a_plus_1: Scalar) -> Scalar:
    """Gamma(a, x) from Gamma(a + 1, x) via Gamma(a+1, x) = a Gamma(a, x) + x**a e**-x."""
    if a == 0:
        raise DomainError("downward recurrence divides by a; a = 0 is not allowed")
    exp = cmath.exp if isinstance(x, complex) else math.exp
    return (gamma_a_plus_1 - x**a * exp(-x)) / a


def erf_real(
    x: float, config: ConvergentConfig = ConvergentConfig(10, 40), split: float | None = SMALL_ARGUMENT_SPLIT
) -> float:
    """erf(x) = 1 - Gamma(1/2, x**2)/sqrt(pi), odd-reflected for x < 0."""
    x = float(x)
    if x == 0.0:
        return 0.0
    if x < 0.0:
        return -erf_real(-x, config, split)
    return 1.0 - gamma_upper(0.5, x * x, config, split).value / SQRT_PI


def probability_via(
    x: float,
    steps: int,
    config: ConvergentConfig = ConvergentConfig(10, 20),
    split: float | None = SMALL_ARGUMENT_SPLIT,
) -> Evaluation:
    """P(x) = erf(x/sqrt 2)/2 from Gamma(1/2 + steps, x**2/2).

    The series value is stepped down ``steps`` times to Gamma(1/2, x**2/2).
    Each downward step divides by the order, which scales the series error
    by 1/((1/2)(3/2)...) accordingly.
    """
    x = float(x)
    if x < 0.0:
        raise DomainError(f"probability integral is defined here for x >= 0, got {x}")
    if steps < 0:
        raise DomainError(f"steps must be >= 0, got {steps}")
    if x == 0.0:
        method = MethodKind.Convergent if split is None else MethodKind.HybridSmallX
        return Evaluation(0.0, 0.0, 0, method)
    y = 0.5 * x * x
    top = gamma_upper(0.5 + steps, y, config, split)
    g, amplification = top.value, 1.0
    for n in range(steps, 0, -1):
        order = n - 0.5
        g = gamma_recurrence_down(order, y, g)
        amplification /= order
    value = 0.5 * (1.0 - g / SQRT_PI)
    error = top.error_estimate * amplification / (2.0 * SQRT_PI)
    return Evaluation(value, error, top.terms_used, top.method)


def probability_integral_estimate(
    x: float,
    route: ErfRoute = ErfRoute.ViaHalf,
    config: ConvergentConfig = ConvergentConfig(10, 20),
    split: float | None = SMALL_ARGUMENT_SPLIT,
) -> Evaluation:
    """P(x) with an error estimate, along one of the three named routes."""
    return probability_via(x, route.value, config, split)


def probability_integral(
    x: float,
    route: ErfRoute = ErfRoute.ViaHalf,
    config: ConvergentConfig = ConvergentConfig(10, 20),
    split: float | None = SMALL_ARGUMENT_SPLIT,
) -> float:
    """Probability integral P(x) = (1/sqrt(2 pi)) int_0^x e**(-t**2/2) dt."""
    return probability_integral_estimate(x, route, config, split).value


def bagby(x: float) -> float:
    """Bagby's closed-form approximation to P(x), x >= 0."""
    x2 = x * x
    bracket = (
        7.0 * math.exp(-0.5 * x2)
        + 16.0 * math.exp(-x2 * (2.0 - math.sqrt(2.0)))
        + (7.0 + 0.25 * math.pi * x2) * math.exp(-x2)
    )
    return 0.5 * math.sqrt(max(0.0, 1.0 - bracket / 30.0))


def erf_complex(
    z: complex, config: ConvergentConfig = ConvergentConfig(10, 40), split: float | None = SMALL_ARGUMENT_SPLIT
) -> complex:
    """erf(z) = 1 - Gamma(1/2, z**2)/sqrt(pi) for Re z > 0; odd reflection for Re z < 0.

    Arguments on the imaginary axis put z**2 on the negative real axis and
    are rejected.
    """
    z = complex(z)
    if z == 0:
        return 0j
    if z.real < 0.0:
        return -erf_complex(-z, config, split)
    if z.real == 0.0:
        raise DomainError(f"z={z!r} maps onto the branch cut of Gamma(1/2, z**2)")
    return 1.0 - complex(gamma_upper(0.5, z * z, config, split).value) / SQRT_PI


def fresnel(
    x: float, config: ConvergentConfig = ConvergentConfig(5, 5), split: float | None = SMALL_ARGUMENT_SPLIT
) -> FresnelPair:
    """Fresnel integrals from C + iS = (1 + i)/2 erf((sqrt(pi)/2)(1 - i) x)."""
    x = float(x)
    if x < 0.0:
        raise DomainError(f"Fresnel integrals are evaluated for x >= 0, got {x}")
    if x == 0.0:
        return FresnelPair(0.0, 0.0)
    z = 0.5 * SQRT_PI * (1 - 1j) * x
    w = 0.5 * (1 + 1j) * erf_complex(z, config, split)
    return FresnelPair(w.real, w.imag)


def fresnel_asymptotic(x: float) -> FresnelPair:
    """Leading large-x forms C ~ 1/2 + sin(pi x**2/2)/(pi x), S ~ 1/2 - cos(pi x**2/2)/(pi x)."""
    if not x > 0.0:
        raise DomainError(f"asymptotic Fresnel forms need x > 0, got {x}")
    phase = 0.5 * math.pi * x * x
    return FresnelPair(0.5 + math.sin(phase) / (math.pi * x), 0.5 - math.cos(phase) / (math.pi * x))

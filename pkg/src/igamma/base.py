"""Shared value types, configuration records and exceptions."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Union

Scalar = Union[float, complex]

# Above this order the alternating (r, u) sums lose more than ~2**25 in
# relative precision at double precision.
MAX_ORDER = 25


class IGammaError(ValueError):
    """Base class for every error raised by this package."""


class DomainError(IGammaError):
    """Argument outside the domain of the requested representation."""


class ConfigError(IGammaError):
    """Invalid truncation or split configuration."""


class LogarithmicCaseError(IGammaError):
    """Termwise Taylor integration hit a logarithmic (a + k == 0) term."""


class ConvergenceError(IGammaError, ArithmeticError):
    """An iterative oracle failed to reach its tolerance within budget."""


class MethodKind(enum.Enum):
    StandardAsymptotic = "standard"
    AsymptoticLambda = "asymptotic"
    AsymptoticPMS = "pms"
    FirstOrder = "first-order"
    Convergent = "convergent"
    HybridSmallX = "hybrid"
    OracleQuadrature = "oracle-quad"
    OracleContinuedFraction = "oracle-cf"

    @property
    def flag(self) -> str:
        return self.value

    @classmethod
    def from_flag(cls, flag: str) -> "MethodKind":
        for kind in cls:
            if kind.value == flag:
                return kind
        raise KeyError(flag)


def as_scalar(value) -> Scalar:
    """Coerce ``value`` to ``float`` or ``complex`` and reject non-finite input."""
    if isinstance(value, complex):
        if not cmath.isfinite(value):
            raise DomainError(f"non-finite scalar {value!r}")
        return value
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"non-finite scalar {value!r}")
    return value


def is_real(value: Scalar) -> bool:
    """True for floats and for complex numbers with zero imaginary part."""
    return not isinstance(value, complex) or value.imag == 0.0


def on_negative_axis(value: Scalar) -> bool:
    """True if ``value`` lies on the closed negative real axis (principal-branch cut)."""
    return is_real(value) and value.real <= 0.0


@dataclass(frozen=True)
class GammaPoint:
    """Evaluation point (a, x) for the upper incomplete gamma function."""

    a: float
    x: Scalar

    def __post_init__(self):
        a = float(self.a)
        if not math.isfinite(a):
            raise DomainError(f"order a must be finite, got {self.a!r}")
        x = as_scalar(self.x)
        if is_real(x):
            if x.real < 0.0:
                raise DomainError(f"real argument must be non-negative, got x={x!r}")
            if a <= 0.0 and x.real == 0.0:
                raise DomainError("x = 0 requires a > 0 (integral diverges at the origin)")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "x", x)


@dataclass(frozen=True)
class AsymptoticConfig:
    """Truncation order ``R`` and shift parameter ``lam`` of the lambda family."""

    R: int
    lam: Scalar

    def __post_init__(self):
        if int(self.R) != self.R or self.R < 0:
            raise ConfigError(f"R must be a non-negative integer, got {self.R!r}")
        if self.R > MAX_ORDER:
            raise ConfigError(f"R={self.R} exceeds the double-precision limit {MAX_ORDER}")
        lam = as_scalar(self.lam)
        if lam.real <= 0.0:
            raise ConfigError(f"shift parameter needs Re(lambda) > 0, got {lam!r}")
        object.__setattr__(self, "R", int(self.R))
        object.__setattr__(self, "lam", lam)


@dataclass(frozen=True)
class ConvergentConfig:
    """Cutoffs and split parameter of the segmented convergent series."""

    r_max: int = 6
    q_max: int = 10
    xi: float = 1.0

    def __post_init__(self):
        for name in ("r_max", "q_max"):
            value = getattr(self, name)
            if int(value) != value or value < 0:
                raise ConfigError(f"{name} must be a non-negative integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.r_max > MAX_ORDER:
            raise ConfigError(f"r_max={self.r_max} exceeds the double-precision limit {MAX_ORDER}")
        xi = float(self.xi)
        if not 0.0 < xi < 2.0:
            raise ConfigError(f"split parameter must satisfy 0 < xi < 2, got {xi!r}")
        object.__setattr__(self, "xi", xi)

    def check_start(self, x: Scalar) -> None:
        """Reject a real start point for which the first segment would run backwards."""
        if is_real(x) and not self.xi > x.real / (1.0 + x.real):
            raise ConfigError(
                f"xi={self.xi} must exceed x/(1+x)={x.real / (1.0 + x.real):.6g} at x={x.real}"
            )


@dataclass(frozen=True)
class Evaluation:
    value: Scalar
    error_estimate: float
    terms_used: int
    method: MethodKind

    def __post_init__(self):
        if not self.error_estimate >= 0.0:
            raise ValueError(f"error_estimate must be >= 0, got {self.error_estimate!r}")
        if self.terms_used < 0:
            raise ValueError(f"terms_used must be >= 0, got {self.terms_used!r}")

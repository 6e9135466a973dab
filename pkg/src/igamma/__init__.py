"""Upper incomplete gamma function by variational asymptotic and convergent series."""

from .base import (
    AsymptoticConfig,
    ConfigError,
    ConvergenceError,
    ConvergentConfig,
    DomainError,
    Evaluation,
    GammaPoint,
    IGammaError,
    LogarithmicCaseError,
    MethodKind,
)
from .core import (
    asymptotic_series,
    asymptotic_series_pms,
    convergent_series,
    falling_factorial,
    first_order,
    hybrid_small_x,
    integer_tail_integral,
    optimal_order,
    pms_lambda,
    reduced,
    segment_contribution,
    standard_asymptotic,
)
from .kernels import BACKEND

__all__ = [
    "AsymptoticConfig",
    "BACKEND",
    "ConfigError",
    "ConvergenceError",
    "ConvergentConfig",
    "DomainError",
    "Evaluation",
    "GammaPoint",
    "IGammaError",
    "LogarithmicCaseError",
    "MethodKind",
    "asymptotic_series",
    "asymptotic_series_pms",
    "convergent_series",
    "falling_factorial",
    "first_order",
    "hybrid_small_x",
    "integer_tail_integral",
    "optimal_order",
    "pms_lambda",
    "reduced",
    "segment_contribution",
    "standard_asymptotic",
]
__version__ = "0.1.0"

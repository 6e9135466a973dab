"""Error analysis against the oracles and CSV emitters for the figures.

Every figure is generated from the explicit grids in ``FIGURE_GRIDS`` so
that emitted files are stable. Grid nodes are independent and may be
evaluated on a thread pool; rows are always sorted before writing, so the
output does not depend on the number of workers.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import applications as app
from .base import (
    AsymptoticConfig,
    ConfigError,
    ConvergenceError,
    ConvergentConfig,
    DomainError,
    GammaPoint,
    IGammaError,
    MethodKind,
    Scalar,
)
from .core import (
    asymptotic_series,
    asymptotic_series_pms,
    convergent_series,
    first_order,
    hybrid_small_x,
    reduced,
    standard_asymptotic,
)
from .oracle import (
    fresnel_oracle,
    gamma_upper_cf,
    gamma_upper_quadrature,
    lanczos_gamma,
)

ROW_HEADER = ("a", "x", "method", "value", "oracle", "abs_error", "rel_error")
FAILED = -1.0


@dataclass(frozen=True)
class FigureGrids:
    """Versioned grid constants behind every emitted figure.

    The source figures carry no axis ranges or a-values; these are
    implementation choices.
    """

    version: int = 1
    fig1_a: tuple = (0.5, 2.5, math.pi, 5.0)
    fig1_x: tuple = (0.5, 50.0, 100)
    fig2_a: float = math.pi
    fig2_x: tuple = (0.0, 10.0, 101)
    fig2_orders: tuple = ((6, 10),)
    fig3_x: tuple = (0.0, 4.0, 81)
    fig3_orders: tuple = ((10, 20),)
    fig3_steps: tuple = (0, 1, 2, 3, 4, 5)
    fig3_a_sweep_x: tuple = (0.5, 1.0, 2.0, 3.0, 4.0)
    fig4_x: tuple = (0.0, 5.0, 51)
    fig4_orders: tuple = ((1, 1), (5, 5))


FIGURE_GRIDS = FigureGrids()
FIGURE_IDS = ("fig1", "fig2_left", "fig2_right", "fig3_vs_x", "fig3_vs_a", "fig4_C", "fig4_S")


@dataclass(frozen=True)
class GridSpec:
    a_values: tuple
    x_min: float
    x_max: float
    steps: int
    scale: str = "linear"

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ConfigError(f"x_min must be < x_max, got {self.x_min} >= {self.x_max}")
        if self.steps < 2:
            raise ConfigError(f"steps must be >= 2, got {self.steps}")
        if self.scale not in ("linear", "log"):
            raise ConfigError(f"scale must be 'linear' or 'log', got {self.scale!r}")
        if self.scale == "log" and not self.x_min > 0.0:
            raise ConfigError("log scale requires x_min > 0")
        object.__setattr__(self, "a_values", tuple(float(a) for a in self.a_values))

    def x_values(self) -> list[float]:
        return _axis(self.x_min, self.x_max, self.steps, self.scale)


def _axis(lo: float, hi: float, steps: int, scale: str = "linear") -> list[float]:
    if scale == "log":
        ratio = math.log(hi / lo)
        return [lo * math.exp(ratio * i / (steps - 1)) for i in range(steps)]
    # Index-based nodes: i * h drifts from the decimal grid, this does not.
    return [round(lo + (hi - lo) * i / (steps - 1), 12) for i in range(steps)]


@dataclass(frozen=True)
class ErrorRow:
    a: float
    x: float
    method: str
    value: Scalar
    oracle: Scalar
    abs_error: float
    rel_error: float
    note: str = field(default="", compare=False)

    @classmethod
    def compare(cls, a, x, method: str, value: Scalar, oracle: Scalar) -> "ErrorRow":
        abs_error = abs(value - oracle)
        return cls(a, x, method, value, oracle, abs_error, abs_error / max(abs(oracle), 1e-300))

    @classmethod
    def failed(cls, a, x, method: str, oracle: Scalar, note: str) -> "ErrorRow":
        return cls(a, x, method, 0.0, oracle, FAILED, FAILED, note)

    @property
    def ok(self) -> bool:
        return self.rel_error != FAILED

    def sort_key(self):
        return (self.a, self.x, self.method)

    def fields(self):
        return (self.a, self.x, self.method, self.value, self.oracle, self.abs_error, self.rel_error)


@dataclass(frozen=True)
class MethodSettings:
    """Parameters used when a grid evaluates each MethodKind."""

    n_terms: int = 4
    R: int = 6
    lam: float | None = None
    convergent: ConvergentConfig = ConvergentConfig(6, 10, 1.0)
    epsilon: float = 1.0
    taylor_order: int = 30
    oracle_tol: float = 1e-12


def evaluate_method(method: MethodKind, a: float, x: Scalar, settings: MethodSettings = MethodSettings()) -> Scalar:
    """Value of Gamma(a, x) by ``method`` with the parameters in ``settings``."""
    point = GammaPoint(a, x)
    if method is MethodKind.StandardAsymptotic:
        return standard_asymptotic(point, settings.n_terms).value
    if method is MethodKind.AsymptoticLambda:
        if settings.lam is None:
            raise ConfigError("the lambda family needs an explicit lambda")
        return asymptotic_series(point, AsymptoticConfig(settings.R, settings.lam)).value
    if method is MethodKind.AsymptoticPMS:
        return asymptotic_series_pms(point, settings.R).value
    if method is MethodKind.FirstOrder:
        return first_order(point)
    if method is MethodKind.Convergent:
        return convergent_series(point, settings.convergent).value
    if method is MethodKind.HybridSmallX:
        return hybrid_small_x(point, settings.epsilon, settings.taylor_order, settings.convergent).value
    if method is MethodKind.OracleQuadrature:
        return gamma_upper_quadrature(a, x, max(settings.oracle_tol, 1e-13)).value
    if method is MethodKind.OracleContinuedFraction:
        return gamma_upper_cf(a, x, max(settings.oracle_tol, 1e-14)).value
    raise ValueError(f"unknown method {method!r}")


def _map(fn: Callable, items: Sequence, workers: int) -> list:
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def cross_check_oracles(a: float, x: float, tol: float = 1e-12) -> float:
    """Relative gap between the two Gamma oracles; raises if beyond 10 * (2 tol)."""
    cf = gamma_upper_cf(a, x, max(tol, 1e-14))
    quad = gamma_upper_quadrature(a, x, max(tol, 1e-13))
    gap = abs(cf.value - quad.value) / abs(cf.value)
    if gap > 10.0 * (cf.achieved_tolerance + quad.achieved_tolerance + 2 * tol):
        raise ConvergenceError(f"oracles disagree by {gap:.3g} at a={a}, x={x}")
    return gap


def error_grid(
    methods: Iterable[MethodKind],
    spec: GridSpec,
    settings: MethodSettings = MethodSettings(),
    workers: int = 1,
) -> list[ErrorRow]:
    """Evaluate each method and the continued-fraction oracle at every node.

    Per-node failures are recorded in the row (abs_error = rel_error = -1)
    instead of aborting the grid.
    """
    methods = list(methods)
    nodes = [(a, x) for a in spec.a_values for x in spec.x_values()]
    positive = [(a, x) for a, x in nodes if x > 0.0]
    if positive:
        cross_check_oracles(*positive[len(positive) // 2], settings.oracle_tol)

    def run(node):
        a, x = node
        truth = gamma_upper_cf(a, x, max(settings.oracle_tol, 1e-14)).value
        rows = []
        for method in methods:
            try:
                value = evaluate_method(method, a, x, settings)
            except IGammaError as exc:
                rows.append(ErrorRow.failed(a, x, method.name, truth, f"{type(exc).__name__}: {exc}"))
            else:
                rows.append(ErrorRow.compare(a, x, method.name, value, truth))
        return rows

    rows = [row for chunk in _map(run, nodes, workers) for row in chunk]
    return sorted(rows, key=ErrorRow.sort_key)


def ratio_R(a: float, x: float, oracle_tol: float = 1e-13) -> float:
    """|first_order - Gamma| / |leading classical term - Gamma|.

    Returns ``math.inf`` if the denominator underflows to zero.
    """
    if a == 1.0:
        raise DomainError("ratio is undefined at a = 1: both approximations are exact")
    if not x > 0.0:
        raise DomainError(f"ratio needs x > 0, got {x}")
    point = GammaPoint(a, x)
    truth = gamma_upper_cf(a, x, max(oracle_tol, 1e-14)).value
    numerator = abs(first_order(point) - truth)
    denominator = abs(standard_asymptotic(point, 1).value - truth)
    if denominator == 0.0:
        return math.inf
    return numerator / denominator


def identity_residual(a: float, r_max: int, q_max: int) -> float:
    """|S - 1| where S is the x -> 0 limit of the convergent series divided by Gamma(a)."""
    if not a > 0.0:
        raise DomainError(f"identity needs a > 0, got {a}")
    series = convergent_series(GammaPoint(a, 0.0), ConvergentConfig(r_max, q_max, 1.0))
    return abs(series.value / lanczos_gamma(a) - 1.0)


def pms_sweep(a: float, x: float, R: int, lambda_grid: Sequence[float]) -> list[tuple[float, Scalar]]:
    """The lambda family at order R across ``lambda_grid``."""
    point = GammaPoint(a, x)
    if any(not lam > 0.0 for lam in lambda_grid):
        raise ConfigError("every lambda in the sweep must be > 0")
    return [(lam, asymptotic_series(point, AsymptoticConfig(R, lam)).value) for lam in lambda_grid]


def pms_stationary_point(sweep: Sequence[tuple[float, Scalar]]) -> float:
    """Grid lambda with the smallest central-difference |d value / d lambda|."""
    if len(sweep) < 3:
        raise ConfigError("need at least three sweep points for central differences")
    best_lam, best_slope = None, math.inf
    for (l0, v0), (l1, _), (l2, v2) in zip(sweep, sweep[1:], sweep[2:]):
        slope = abs((v2 - v0) / (l2 - l0))
        if slope < best_slope:
            best_lam, best_slope = l1, slope
    return best_lam


# -- figures -----------------------------------------------------------------


def _fig1(grids: FigureGrids, workers: int):
    header = ("a", "x", "first_order", "leading_term", "oracle", "ratio")
    nodes = [(a, x) for a in grids.fig1_a if a not in (1.0, 2.0) for x in _axis(*grids.fig1_x)]

    def run(node):
        a, x = node
        point = GammaPoint(a, x)
        return (
            a,
            x,
            first_order(point),
            standard_asymptotic(point, 1).value,
            gamma_upper_cf(a, x).value,
            ratio_R(a, x),
        )

    return header, sorted(_map(run, nodes, workers))


def _fig2(grids: FigureGrids, workers: int, *, left: bool):
    a = grids.fig2_a
    nodes = [(r, q, x) for r, q in grids.fig2_orders for x in _axis(*grids.fig2_x)]

    def run(node):
        r, q, x = node
        point = GammaPoint(a, x)
        series = reduced(point, convergent_series(point, ConvergentConfig(r, q)).value)
        truth = reduced(point, gamma_upper_cf(a, x).value)
        return ErrorRow.compare(a, x, f"Convergent(r={r};q={q})", series, truth)

    rows = sorted(_map(run, nodes, workers), key=ErrorRow.sort_key)
    if left:
        header = ("a", "x", "method", "reduced_series", "reduced_oracle")
        return header, [(r.a, r.x, r.method, r.value, r.oracle) for r in rows]
    return ROW_HEADER, [r.fields() for r in rows]


def _p_truth(x: float) -> float:
    from .oracle import erfc_oracle

    return 0.5 * (1.0 - erfc_oracle(x / math.sqrt(2.0)).value)


def _fig3_vs_x(grids: FigureGrids, workers: int):
    variants = [
        (route, r, q, split)
        for route in app.ErfRoute
        for r, q in grids.fig3_orders
        for split in (app.SMALL_ARGUMENT_SPLIT, None)
    ]

    def run(x):
        truth = _p_truth(x)
        rows = [ErrorRow.compare(0.0, x, "Bagby", app.bagby(x), truth)]
        for route, r, q, split in variants:
            label = f"{route.name}(r={r};q={q}{'' if split else ';bare'})"
            value = app.probability_integral(x, route, ConvergentConfig(r, q), split)
            rows.append(ErrorRow.compare(route.order, x, label, value, truth))
        return rows

    rows = [row for chunk in _map(run, _axis(*grids.fig3_x), workers) for row in chunk]
    return ROW_HEADER, [r.fields() for r in sorted(rows, key=ErrorRow.sort_key)]


def _fig3_vs_a(grids: FigureGrids, workers: int):
    nodes = [
        (steps, r, q, split, x)
        for steps in grids.fig3_steps
        for r, q in grids.fig3_orders
        for split in (app.SMALL_ARGUMENT_SPLIT, None)
        for x in grids.fig3_a_sweep_x
    ]

    def run(node):
        steps, r, q, split, x = node
        value = app.probability_via(x, steps, ConvergentConfig(r, q), split).value
        label = f"Convergent(r={r};q={q}{'' if split else ';bare'})"
        return ErrorRow.compare(0.5 + steps, x, label, value, _p_truth(x))

    rows = sorted(_map(run, nodes, workers), key=ErrorRow.sort_key)
    return ROW_HEADER, [r.fields() for r in rows]


def _fig4(grids: FigureGrids, workers: int, *, part: str):
    pick = 0 if part == "c" else 1

    def run(x):
        truth = fresnel_oracle(x)[pick]
        rows = []
        for r, q in grids.fig4_orders:
            for split in (app.SMALL_ARGUMENT_SPLIT, None):
                pair = app.fresnel(x, ConvergentConfig(r, q), split)
                label = f"Convergent(r={r};q={q}{'' if split else ';bare'})"
                rows.append(ErrorRow.compare(0.5, x, label, getattr(pair, part), truth))
        if x > 0.0:
            pair = app.fresnel_asymptotic(x)
            rows.append(ErrorRow.compare(0.5, x, "FresnelAsymptotic", getattr(pair, part), truth))
        return rows

    rows = [row for chunk in _map(run, _axis(*grids.fig4_x), workers) for row in chunk]
    return ROW_HEADER, [r.fields() for r in sorted(rows, key=ErrorRow.sort_key)]


def figure_table(figure_id: str, workers: int = 1, grids: FigureGrids = FIGURE_GRIDS):
    """(header, rows) for ``figure_id``; rows are sorted deterministically."""
    builders = {
        "fig1": lambda: _fig1(grids, workers),
        "fig2_left": lambda: _fig2(grids, workers, left=True),
        "fig2_right": lambda: _fig2(grids, workers, left=False),
        "fig3_vs_x": lambda: _fig3_vs_x(grids, workers),
        "fig3_vs_a": lambda: _fig3_vs_a(grids, workers),
        "fig4_C": lambda: _fig4(grids, workers, part="c"),
        "fig4_S": lambda: _fig4(grids, workers, part="s"),
    }
    if figure_id not in builders:
        raise ConfigError(f"unknown figure id {figure_id!r}; choose from {', '.join(FIGURE_IDS)}")
    return builders[figure_id]()


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return repr(value).strip("()")
    return str(value)


def write_csv(header: Sequence[str], rows: Iterable[Sequence], out) -> None:
    """Write UTF-8 CSV with shortest round-trip floats to a binary sink."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    out.write(buffer.getvalue().encode("utf-8"))


def emit_figure(figure_id: str, out, workers: int = 1) -> None:
    """Write the CSV for ``figure_id`` to the binary sink ``out``."""
    header, rows = figure_table(figure_id, workers)
    write_csv(header, rows, out)

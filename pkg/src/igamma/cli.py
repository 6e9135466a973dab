"""Command-line front end.

Exit codes: 0 on success, 2 on usage errors (bad flags, or parameters that
fail a configuration invariant before anything is computed), 1 when the
computation itself fails. Errors are reported on stderr as ``Name: message``.
"""

from __future__ import annotations

import argparse
import enum
import io
import math
import os
import sys
from dataclasses import dataclass

from . import analysis, applications
from .base import (
    AsymptoticConfig,
    ConfigError,
    ConvergentConfig,
    GammaPoint,
    IGammaError,
    MethodKind,
)
from .core import (
    asymptotic_series,
    asymptotic_series_pms,
    convergent_segments,
    convergent_series,
    first_order,
    hybrid_small_x,
    optimal_order,
    standard_asymptotic,
)
from .oracle import gamma_upper_cf, gamma_upper_quadrature

DEFAULT_ORACLE_TOL = 1e-12


class Command(enum.Enum):
    Eval = "eval"
    Compare = "compare"
    Figure = "figure"
    Identity = "identity"
    Pms = "pms"
    Fresnel = "fresnel"
    Prob = "prob"


ROUTES = {
    "half": applications.ErfRoute.ViaHalf,
    "three-halves": applications.ErfRoute.ViaThreeHalves,
    "five-halves": applications.ErfRoute.ViaFiveHalves,
}


class UsageError(Exception):
    pass


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


def parse_real(text: str) -> float:
    """Float literal, or ``pi`` / ``-pi``."""
    t = text.strip().lower()
    if t in ("pi", "+pi"):
        return math.pi
    if t == "-pi":
        return -math.pi
    try:
        return float(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None


def parse_scalar(text: str):
    """Real literal (including ``pi``) or a Python complex literal such as ``1+2j``."""
    try:
        return parse_real(text)
    except argparse.ArgumentTypeError:
        pass
    try:
        return complex(text.strip().replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real or complex number: {text!r}") from None


def _order(text: str):
    return "auto" if text == "auto" else int(text)


def oracle_tolerance(environ=os.environ) -> float:
    raw = environ.get("IGAMMA_ORACLE_TOL")
    if raw is None:
        return DEFAULT_ORACLE_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"IGAMMA_ORACLE_TOL is not a number: {raw!r}") from None
    if not tol > 0.0:
        raise UsageError(f"IGAMMA_ORACLE_TOL must be > 0, got {raw!r}")
    return tol


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that writes to the given byte sinks and never exits."""

    def __init__(self, *args, sinks=None, **kwargs):
        super().__init__(*args, **kwargs)
        self._sinks = sinks

    def _print_message(self, message, file=None):
        if message and self._sinks is not None:
            sink = self._sinks[1] if file is sys.stderr else self._sinks[0]
            sink.write(message.encode("utf-8"))

    def exit(self, status=0, message=None):
        if message:
            self._print_message(message, sys.stderr)
        raise _Exit(status)

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _convergent_flags(p, rmax=6, qmax=10):
    p.add_argument("--rmax", type=int, default=rmax, help=f"binomial cutoff r_max (default {rmax})")
    p.add_argument("--qmax", type=int, default=qmax, help=f"segment cutoff q_max (default {qmax})")
    p.add_argument("--xi", type=parse_real, default=1.0, help="split parameter, 0 < xi < 2 (default 1)")


def _method_flags(p):
    _convergent_flags(p)
    p.add_argument("--lambda", dest="lam", type=parse_scalar, help="shift parameter for --method asymptotic")
    p.add_argument("--R", type=_order, default=6, help="order of the lambda family, or 'auto' (default 6)")
    p.add_argument("--nterms", type=int, default=4, help="terms of the classical series (default 4)")
    p.add_argument("--epsilon", type=parse_real, default=1.0, help="Taylor/series split point (default 1)")
    p.add_argument("--taylor-order", type=int, default=30, help="Taylor order below epsilon (default 30)")


def build_parser(sinks=None) -> argparse.ArgumentParser:
    parser = _Parser(prog="igamma", description="Series evaluation of the upper incomplete gamma function.", sinks=sinks)
    parser.add_argument("--format", choices=("human", "csv"), default="human")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    flags = [m.flag for m in MethodKind]

    p = sub.add_parser("eval", help="evaluate Gamma(a, x) by one method", sinks=sinks)
    p.add_argument("--a", type=parse_real, required=True)
    p.add_argument("--x", type=parse_scalar, required=True)
    p.add_argument("--method", choices=flags, default=MethodKind.Convergent.flag)
    p.add_argument("--segments", action="store_true", help="also list per-segment contributions (convergent)")
    _method_flags(p)

    p = sub.add_parser("compare", help="every method against the oracle at one point", sinks=sinks)
    p.add_argument("--a", type=parse_real, required=True)
    p.add_argument("--x", type=parse_real, required=True)
    p.add_argument("--methods", default=",".join(flags), help="comma-separated method flags (default all)")
    _method_flags(p)

    p = sub.add_parser("figure", help="write the CSV behind a figure", sinks=sinks)
    p.add_argument("--id", dest="figure_id", choices=analysis.FIGURE_IDS, required=True)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("identity", help="residual of the x -> 0 identity", sinks=sinks)
    p.add_argument("--a", type=parse_real, required=True)
    _convergent_flags(p)

    p = sub.add_parser("pms", help="sweep the shift parameter of the lambda family", sinks=sinks)
    p.add_argument("--a", type=parse_real, required=True)
    p.add_argument("--x", type=parse_real, required=True)
    p.add_argument("--R", type=int, default=1)
    p.add_argument("--lambda-min", type=parse_real)
    p.add_argument("--lambda-max", type=parse_real)
    p.add_argument("--steps", type=int, default=41)

    p = sub.add_parser("fresnel", help="Fresnel integrals C(x), S(x)", sinks=sinks)
    p.add_argument("--x", type=parse_real, required=True)
    p.add_argument("--asymptotic", action="store_true", help="use the leading large-x forms")
    _convergent_flags(p, rmax=5, qmax=5)

    p = sub.add_parser("prob", help="probability integral P(x), erf or Bagby's formula", sinks=sinks)
    p.add_argument("--x", type=parse_scalar, required=True)
    p.add_argument("--kind", choices=("P", "erf", "bagby"), default="P")
    p.add_argument("--route", choices=tuple(ROUTES), default="half")
    p.add_argument("--bare", action="store_true", help="no small-argument Taylor split")
    _convergent_flags(p, rmax=10, qmax=20)
    return parser


# -- parameter records ---------------------------------------------------------


@dataclass(frozen=True)
class MethodParams:
    method: MethodKind
    point: GammaPoint
    convergent: ConvergentConfig
    lam: object
    R: object
    n_terms: int
    epsilon: float
    taylor_order: int
    oracle_tol: float

    @classmethod
    def from_args(cls, args, method: MethodKind, oracle_tol: float) -> "MethodParams":
        point = GammaPoint(args.a, args.x)
        convergent = ConvergentConfig(args.rmax, args.qmax, args.xi)
        if args.R != "auto":
            AsymptoticConfig(args.R, 1.0)
        if args.lam is not None:
            AsymptoticConfig(0, args.lam)
        if args.nterms < 1:
            raise ConfigError(f"--nterms must be >= 1, got {args.nterms}")
        if args.taylor_order < 1:
            raise ConfigError(f"--taylor-order must be >= 1, got {args.taylor_order}")
        if method is MethodKind.AsymptoticLambda and args.lam is None:
            raise ConfigError("--method asymptotic needs --lambda")
        return cls(method, point, convergent, args.lam, args.R, args.nterms, args.epsilon, args.taylor_order, oracle_tol)


def evaluate(params: MethodParams):
    """Return (value, error_estimate, terms_used) for one method."""
    m, point = params.method, params.point
    if m is MethodKind.StandardAsymptotic:
        e = standard_asymptotic(point, params.n_terms)
    elif m in (MethodKind.AsymptoticLambda, MethodKind.AsymptoticPMS):
        lam = params.lam if m is MethodKind.AsymptoticLambda else None
        R = optimal_order(point, lam) if params.R == "auto" else params.R
        e = asymptotic_series(point, AsymptoticConfig(R, lam)) if lam is not None else asymptotic_series_pms(point, R)
    elif m is MethodKind.FirstOrder:
        return first_order(point), 0.0, 1
    elif m is MethodKind.Convergent:
        e = convergent_series(point, params.convergent)
    elif m is MethodKind.HybridSmallX:
        e = hybrid_small_x(point, params.epsilon, params.taylor_order, params.convergent)
    elif m is MethodKind.OracleQuadrature:
        o = gamma_upper_quadrature(point.a, _real(point.x), max(params.oracle_tol, 1e-13))
        return o.value, o.achieved_tolerance * abs(o.value), o.evaluations
    else:
        o = gamma_upper_cf(point.a, _real(point.x), max(params.oracle_tol, 1e-14))
        return o.value, o.achieved_tolerance * abs(o.value), o.evaluations
    return e.value, e.error_estimate, e.terms_used


def _real(x) -> float:
    if isinstance(x, complex):
        if x.imag != 0.0:
            raise ConfigError("the oracles accept real x only")
        return x.real
    return x


# -- output ----------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, complex):
        return repr(value).strip("()")
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(out, fmt: str, header, rows) -> None:
    if fmt == "csv":
        analysis.write_csv(header, rows, out)
        return
    table = [list(header)] + [[_fmt(v) for v in row] for row in rows]
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    text = "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in table)
    out.write(text.encode("utf-8"))


def _emit_pairs(out, fmt: str, pairs) -> None:
    """Single-record output: ``key  value`` lines, or a one-row CSV."""
    if fmt == "csv":
        analysis.write_csv([k for k, _ in pairs], [[v for _, v in pairs]], out)
        return
    width = max(len(k) for k, _ in pairs)
    out.write("".join(f"{k.ljust(width)}  {_fmt(v)}\n" for k, v in pairs).encode("utf-8"))


# -- commands ----------------------------------------------------------------------


def _cmd_eval(args, out, tol):
    params = MethodParams.from_args(args, MethodKind.from_flag(args.method), tol)
    if args.segments and params.method is not MethodKind.Convergent:
        raise ConfigError("--segments applies to --method convergent only")

    def run():
        value, error, terms = evaluate(params)
        _emit_pairs(out, args.format, [
            ("method", params.method.flag), ("a", params.point.a), ("x", params.point.x),
            ("value", value), ("error_estimate", error), ("terms_used", terms),
        ])
        if args.segments:
            values = convergent_segments(params.point, params.convergent)
            _emit(out, args.format, ("q", "contribution"), list(enumerate(values)))

    return run


def _cmd_compare(args, out, tol):
    try:
        methods = [MethodKind.from_flag(f.strip()) for f in args.methods.split(",") if f.strip()]
    except KeyError as exc:
        raise UsageError(f"unknown method flag {exc.args[0]!r}") from None
    records = [MethodParams.from_args(args, m, tol) for m in methods if not (m is MethodKind.AsymptoticLambda and args.lam is None)]

    def run():
        truth = gamma_upper_cf(args.a, args.x, max(tol, 1e-14)).value
        rows = []
        for params in records:
            try:
                value, _, _ = evaluate(params)
            except IGammaError as exc:
                rows.append(analysis.ErrorRow.failed(args.a, args.x, params.method.flag, truth, type(exc).__name__))
            else:
                rows.append(analysis.ErrorRow.compare(args.a, args.x, params.method.flag, value, truth))
        rows.sort(key=analysis.ErrorRow.sort_key)
        _emit(out, args.format, analysis.ROW_HEADER, [r.fields() for r in rows])

    return run


def _cmd_figure(args, out, tol):
    if args.workers < 1:
        raise ConfigError(f"--workers must be >= 1, got {args.workers}")

    def run():
        buffer = io.BytesIO()
        analysis.emit_figure(args.figure_id, buffer, args.workers)
        if args.out:
            with open(args.out, "wb") as fh:
                fh.write(buffer.getvalue())
        else:
            out.write(buffer.getvalue())

    return run


def _cmd_identity(args, out, tol):
    ConvergentConfig(args.rmax, args.qmax, args.xi)
    if args.xi != 1.0:
        raise ConfigError("the identity is evaluated with xi = 1")

    def run():
        residual = analysis.identity_residual(args.a, args.rmax, args.qmax)
        _emit_pairs(out, args.format, [("a", args.a), ("rmax", args.rmax), ("qmax", args.qmax), ("residual", residual)])

    return run


def _cmd_pms(args, out, tol):
    GammaPoint(args.a, args.x)
    AsymptoticConfig(args.R, 1.0)
    centre = 1.0 + args.x
    lo = args.lambda_min if args.lambda_min is not None else 0.5 * centre
    hi = args.lambda_max if args.lambda_max is not None else 1.5 * centre
    if not 0.0 < lo < hi:
        raise ConfigError(f"need 0 < lambda-min < lambda-max, got {lo}, {hi}")
    if args.steps < 3:
        raise ConfigError(f"--steps must be >= 3, got {args.steps}")
    grid = [lo + (hi - lo) * i / (args.steps - 1) for i in range(args.steps)]

    def run():
        sweep = analysis.pms_sweep(args.a, args.x, args.R, grid)
        stationary = analysis.pms_stationary_point(sweep)
        if args.format == "csv":
            _emit(out, "csv", ("lambda", "value"), sweep)
        else:
            _emit(out, "human", ("lambda", "value"), sweep)
            _emit_pairs(out, "human", [("stationary_lambda", stationary), ("pms_lambda", centre)])

    return run


def _cmd_fresnel(args, out, tol):
    config = ConvergentConfig(args.rmax, args.qmax, args.xi)

    def run():
        if args.asymptotic:
            pair, label = applications.fresnel_asymptotic(args.x), "asymptotic"
        else:
            pair, label = applications.fresnel(args.x, config), f"convergent(r={config.r_max};q={config.q_max})"
        _emit_pairs(out, args.format, [("method", label), ("x", args.x), ("C", pair.c), ("S", pair.s)])

    return run


def _cmd_prob(args, out, tol):
    config = ConvergentConfig(args.rmax, args.qmax, args.xi)
    split = None if args.bare else applications.SMALL_ARGUMENT_SPLIT
    x = args.x
    if isinstance(x, complex) and args.kind != "erf":
        raise ConfigError(f"--kind {args.kind} takes a real --x")

    def run():
        if args.kind == "bagby":
            pairs = [("kind", "bagby"), ("x", x), ("value", applications.bagby(x))]
        elif args.kind == "erf":
            if isinstance(x, complex):
                value = applications.erf_complex(x, config, split)
            else:
                value = applications.erf_real(x, config, split)
            pairs = [("kind", "erf"), ("x", x), ("value", value)]
        else:
            e = applications.probability_integral_estimate(x, ROUTES[args.route], config, split)
            pairs = [("kind", "P"), ("route", args.route), ("x", x), ("value", e.value), ("error_estimate", e.error_estimate)]
        _emit_pairs(out, args.format, pairs)

    return run


HANDLERS = {
    Command.Eval: _cmd_eval,
    Command.Compare: _cmd_compare,
    Command.Figure: _cmd_figure,
    Command.Identity: _cmd_identity,
    Command.Pms: _cmd_pms,
    Command.Fresnel: _cmd_fresnel,
    Command.Prob: _cmd_prob,
}


def _error(stderr, exc: BaseException) -> None:
    stderr.write(f"{type(exc).__name__}: {exc}\n".encode("utf-8"))


def run(argv, stdout, stderr) -> int:
    """Parse ``argv``, dispatch one command and return the exit code."""
    parser = build_parser((stdout, stderr))
    try:
        args = parser.parse_args(argv)
        tol = oracle_tolerance()
        # Build and validate every parameter record before computing anything.
        job = HANDLERS[Command(args.command)](args, stdout, tol)
    except _Exit as exc:
        return exc.code
    except UsageError as exc:
        stderr.write(f"UsageError: {exc}\n".encode("utf-8"))
        return 2
    except IGammaError as exc:
        _error(stderr, exc)
        return 2
    try:
        job()
    except (IGammaError, ArithmeticError, OSError) as exc:
        _error(stderr, exc)
        return 1
    return 0


def main(argv=None) -> int:
    code = run(sys.argv[1:] if argv is None else argv, sys.stdout.buffer, sys.stderr.buffer)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())

import math

import pytest

from igamma.base import (
    AsymptoticConfig,
    ConfigError,
    ConvergenceError,
    ConvergentConfig,
    DomainError,
    Evaluation,
    GammaPoint,
    IGammaError,
    MethodKind,
    is_real,
    on_negative_axis,
)


class TestGammaPoint:
    def test_accepts_zero_for_positive_order(self):
        assert GammaPoint(0.5, 0.0).x == 0.0

    @pytest.mark.parametrize("a", [0.0, -1.5])
    def test_rejects_origin_for_nonpositive_order(self, a):
        with pytest.raises(DomainError):
            GammaPoint(a, 0.0)

    def test_rejects_negative_real_argument(self):
        with pytest.raises(DomainError):
            GammaPoint(1.0, -0.5)

    def test_negative_order_positive_argument(self):
        assert GammaPoint(-1.5, 2.0).a == -1.5

    @pytest.mark.parametrize("bad", [math.inf, math.nan])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(DomainError):
            GammaPoint(1.0, bad)
        with pytest.raises(DomainError):
            GammaPoint(bad, 1.0)

    def test_complex_argument_kept(self):
        p = GammaPoint(2, 1 + 2j)
        assert p.x == 1 + 2j and isinstance(p.a, float)

    def test_frozen(self):
        p = GammaPoint(1.0, 1.0)
        with pytest.raises(AttributeError):
            p.a = 2.0


class TestConfigs:
    @pytest.mark.parametrize("R", [-1, 26, 2.5])
    def test_asymptotic_order_bounds(self, R):
        with pytest.raises(ConfigError):
            AsymptoticConfig(R, 1.0)

    @pytest.mark.parametrize("lam", [0.0, -2.0, -1 + 3j])
    def test_lambda_needs_positive_real_part(self, lam):
        with pytest.raises(ConfigError):
            AsymptoticConfig(2, lam)

    @pytest.mark.parametrize("kwargs", [dict(r_max=-1), dict(q_max=-1), dict(r_max=26), dict(xi=0.0), dict(xi=2.0)])
    def test_convergent_bounds(self, kwargs):
        with pytest.raises(ConfigError):
            ConvergentConfig(**kwargs)

    def test_defaults(self):
        c = ConvergentConfig()
        assert (c.r_max, c.q_max, c.xi) == (6, 10, 1.0)

    def test_start_check(self):
        ConvergentConfig(xi=0.9).check_start(5.0)
        with pytest.raises(ConfigError):
            ConvergentConfig(xi=0.8).check_start(5.0)


def test_evaluation_invariants():
    with pytest.raises(ValueError):
        Evaluation(1.0, -1e-3, 1, MethodKind.Convergent)
    with pytest.raises(ValueError):
        Evaluation(1.0, 0.0, -1, MethodKind.Convergent)


def test_method_flags_round_trip():
    flags = [m.flag for m in MethodKind]
    assert len(set(flags)) == len(flags)
    for m in MethodKind:
        assert MethodKind.from_flag(m.flag) is m
    with pytest.raises(KeyError):
        MethodKind.from_flag("nope")


def test_error_hierarchy():
    assert issubclass(DomainError, IGammaError) and issubclass(IGammaError, ValueError)
    assert issubclass(ConvergenceError, ArithmeticError)


def test_branch_helpers():
    assert is_real(2.0) and is_real(2 + 0j) and not is_real(2 + 1e-300j)
    assert on_negative_axis(-1.0) and on_negative_axis(0.0) and not on_negative_axis(-1 + 1j)

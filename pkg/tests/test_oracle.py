import math

import pytest

from igamma.base import ConvergenceError, DomainError
from igamma.oracle import (
    LANCZOS_RELATIVE_ERROR,
    OracleResult,
    erfc_oracle,
    fresnel_oracle,
    gamma_upper_cf,
    gamma_upper_quadrature,
    lanczos_gamma,
)
from reference_values import ERF, FRESNEL, GAMMA_COMPLETE, GAMMA_UPPER

PI = math.pi
GRID_A = (0.5, 1.0, 2.0, PI, 5.0)
GRID_X = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0)


@pytest.mark.parametrize("a", sorted(GAMMA_COMPLETE))
def test_lanczos_against_reference(a):
    assert lanczos_gamma(a) == pytest.approx(GAMMA_COMPLETE[a], rel=LANCZOS_RELATIVE_ERROR)


def test_lanczos_pole():
    with pytest.raises(DomainError):
        lanczos_gamma(-2.0)


class TestQuadrature:
    def test_examples(self):
        assert gamma_upper_quadrature(1, 2.0).value == pytest.approx(math.exp(-2), rel=1e-12)
        assert gamma_upper_quadrature(2, 3.0).value == pytest.approx(4 * math.exp(-3), rel=1e-12)

    def test_result_record(self):
        r = gamma_upper_quadrature(PI, 1.0)
        assert isinstance(r, OracleResult) and 0 < r.achieved_tolerance <= 1e-12 and r.evaluations > 0

    def test_tolerance_floor(self):
        with pytest.raises(DomainError):
            gamma_upper_quadrature(1.0, 1.0, tol=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            gamma_upper_quadrature(0.0, 0.0)
        with pytest.raises(DomainError):
            gamma_upper_quadrature(1.0, -1.0)

    def test_origin(self):
        assert gamma_upper_quadrature(2.5, 0.0).value == pytest.approx(GAMMA_UPPER[(2.5, 0.0)], rel=1e-12)


class TestContinuedFraction:
    def test_examples(self):
        assert gamma_upper_cf(1, 1.0).value == pytest.approx(math.exp(-1), rel=1e-14)
        erfc2 = erfc_oracle(2.0).value
        assert gamma_upper_cf(0.5, 4.0).value == pytest.approx(math.sqrt(PI) * erfc2, rel=1e-14)

    @pytest.mark.parametrize("key", sorted(GAMMA_UPPER))
    def test_against_reference(self, key):
        assert gamma_upper_cf(*key).value == pytest.approx(GAMMA_UPPER[key], rel=2e-14)

    def test_negative_order(self):
        # Gamma(-1/2, x) = 2 (e**-x / sqrt(x) - Gamma(1/2, x))
        x = 1.3
        expected = 2 * (math.exp(-x) / math.sqrt(x) - math.sqrt(PI) * math.erfc(math.sqrt(x)))
        assert gamma_upper_cf(-0.5, x).value == pytest.approx(expected, rel=1e-13)

    def test_domain(self):
        with pytest.raises(DomainError):
            gamma_upper_cf(0.5, -1.0)
        with pytest.raises(DomainError):
            gamma_upper_cf(1.0, 1.0, tol=1e-16)


@pytest.mark.parametrize("a", GRID_A)
@pytest.mark.parametrize("x", GRID_X)
def test_dual_oracle_agreement(a, x):
    quad = gamma_upper_quadrature(a, x, 1e-12)
    cf = gamma_upper_cf(a, x, 1e-13)
    assert abs(quad.value - cf.value) <= 10 * (1e-12 + 1e-13) * abs(cf.value)


@pytest.mark.parametrize("a", GRID_A)
@pytest.mark.parametrize("x", GRID_X)
def test_recurrence(a, x):
    lhs = gamma_upper_cf(a + 1, x).value
    rhs = a * gamma_upper_cf(a, x).value + x**a * math.exp(-x)
    assert lhs == pytest.approx(rhs, rel=1e-10)


@pytest.mark.parametrize("a", GRID_A)
def test_strictly_decreasing_in_x(a):
    values = [gamma_upper_cf(a, x).value for x in (0.0,) + GRID_X]
    assert all(c < b for b, c in zip(values, values[1:]))


class TestErfc:
    def test_origin(self):
        assert erfc_oracle(0.0).value == 1.0

    def test_far_tail(self):
        assert 0 < erfc_oracle(10.0).value < 1e-40

    @pytest.mark.parametrize("x", sorted(ERF))
    def test_reference(self, x):
        assert 1 - erfc_oracle(x).value == pytest.approx(ERF[x], rel=1e-14)

    def test_reflection(self):
        assert erfc_oracle(-1.0).value == pytest.approx(1 + ERF[1.0], rel=1e-15)


@pytest.mark.parametrize("x", sorted(FRESNEL))
def test_fresnel_oracle(x):
    c, s = fresnel_oracle(x)
    assert (c, s) == pytest.approx(FRESNEL[x], abs=1e-12)


def test_fresnel_oracle_origin():
    assert fresnel_oracle(0.0) == (0.0, 0.0)


def test_convergence_error_is_arithmetic():
    assert issubclass(ConvergenceError, ArithmeticError)

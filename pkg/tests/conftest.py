import math

import pytest

from igamma.oracle import gamma_upper_cf

ACCEPTANCE_RESULTS = {}


def rel_close(value, expected, rtol):
    """Relative comparison with the absolute guard used for tiny values."""
    if abs(expected) < 1e-300:
        return abs(value - expected) <= 1e-308
    return abs(value - expected) <= rtol * abs(expected)


@pytest.fixture
def oracle():
    def truth(a, x):
        return gamma_upper_cf(a, x).value

    return truth


@pytest.fixture
def acceptance():
    """Record (passed, detail) for a criterion; printed in the terminal summary."""

    def record(number, title, passed, detail):
        ACCEPTANCE_RESULTS[number] = (title, bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  criterion {number:>2}: {title} ({detail})")


PI = math.pi

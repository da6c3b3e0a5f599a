"""
Shared fixtures for the unit tests.
"""

import pytest

from src.algebra import enable_reduction_checks, parse_polynomial


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: statistical checks over many sampled ideals")


@pytest.fixture(autouse=True, scope="session")
def reduction_checks():
    """Verify every remainder while tests run."""
    enable_reduction_checks(True)
    yield
    enable_reduction_checks(False)


@pytest.fixture
def poly():
    """Parse helper: poly('x0^2+x1', 2)."""

    def _parse(text, n, p=32003):
        return parse_polynomial(text, n, p)

    return _parse


@pytest.fixture
def small_ideal(poly):
    """{x0^3 + x1^2, x0^2*x1 - 1}, whose Groebner basis takes three additions."""
    return [poly("x0^3+x1^2", 2), poly("x0^2*x1-1", 2)]

import numpy as np
import pytest

from decoupling.gaussmodel import BlockGaussianSpec


def scalar_spec(n: int, rho: float) -> BlockGaussianSpec:
    """``n`` scalar vectors, all pairwise correlations equal to ``rho``."""
    return BlockGaussianSpec((1,) * n, {(a, b): [[rho]] for a in range(n) for b in range(a + 1, n)})


@pytest.fixture
def pair05():
    return scalar_spec(2, 0.5)


@pytest.fixture
def equi06():
    return scalar_spec(3, 0.6)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

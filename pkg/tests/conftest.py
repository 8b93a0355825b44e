import numpy as np
import pytest

from fraclab.quadrature import QuadratureSpec


@pytest.fixture
def spec():
    return QuadratureSpec()


@pytest.fixture
def fast_spec():
    return QuadratureSpec(rel_tol=1e-6, abs_tol=1e-9, max_subdivisions=4096)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    import _verdicts

    if _verdicts.LINES:
        terminalreporter.section("acceptance criteria")
        for line in _verdicts.LINES:
            terminalreporter.write_line(line)

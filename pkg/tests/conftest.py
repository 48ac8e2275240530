import numpy as np
import pytest

from adaptscal.kernels import available_backends

BACKENDS = available_backends()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=sorted(BACKENDS))
def backend(request):
    return BACKENDS[request.param]


def pytest_terminal_summary(terminalreporter):
    from acceptance_scenarios import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)

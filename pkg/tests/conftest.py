import math
import warnings

import pytest

from pr3bp import SystemParams

SQRT3_2 = math.sqrt(3.0) / 2.0

# Acceptance lines collected during the run, printed in the terminal summary.
ACCEPTANCE_LINES = []


@pytest.fixture
def classical():
    return SystemParams(mu=0.01)


@pytest.fixture
def dragged():
    return SystemParams(mu=0.01, q1=0.9999, A2=0.0, W1=1e-4)


def quiet_params(*args, **kwargs):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return SystemParams(*args, **kwargs)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

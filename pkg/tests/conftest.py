import numpy as np
import pytest

from telegraph_dqm import compute_weights, make_grid


@pytest.fixture(scope="session")
def grid11():
    return make_grid(11, 11)


@pytest.fixture(scope="session")
def w11(grid11):
    return compute_weights(grid11)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE = pytest.StashKey[list]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Collects one summary line per acceptance criterion."""
    return request.config.stash.setdefault(ACCEPTANCE, [])


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

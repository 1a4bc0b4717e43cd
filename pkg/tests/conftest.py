import numpy as np
import pytest

from hqft import catalog


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(params=["C", "C[Z/2]", "C[Z/3]", "M_2"])
def fixture_algebra(request):
    return {
        "C": catalog.ground_field,
        "C[Z/2]": lambda: catalog.cyclic_group_algebra(2),
        "C[Z/3]": lambda: catalog.cyclic_group_algebra(3),
        "M_2": lambda: catalog.matrix_algebra(2),
    }[request.param]()


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def acceptance_log(request):
    return request.config.acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

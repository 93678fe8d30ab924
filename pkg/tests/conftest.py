import numpy as np
import pytest

from relloc import Lattice, PhysicalParams


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def unit_mass():
    return PhysicalParams(1.0)


@pytest.fixture(params=[("line1d", 64, 20.0), ("radial3d", 64, 20.0), ("cartesian3d", 32, 12.0)],
                ids=["line1d", "radial3d", "cartesian3d"])
def small_lattice(request):
    return Lattice(*request.param)


def random_values(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import LINES
    except ImportError:
        return
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)

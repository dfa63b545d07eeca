import sys

import numpy as np
import pytest

from exparc.arc import ArcSpectralWeights


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def example_arc():
    """Arc of the two-point pair p = (.5, .5), q = (.9, .1)."""
    return ArcSpectralWeights.from_points([(1.8, 0.5), (0.2, 0.5)])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

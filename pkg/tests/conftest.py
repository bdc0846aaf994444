import numpy as np
import pytest

from cartanflow.generate import random_measure, random_spd, stream


@pytest.fixture
def rng():
    return stream(20240601, 0)


def rot(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


@pytest.fixture
def make_spd(rng):
    def make(m=3, spread=0.7):
        return random_spd(rng, m, spread)

    return make


@pytest.fixture
def make_measure(rng):
    def make(m=3, n=4, spread=0.7, weights="dirichlet"):
        return random_measure(rng, m, n, spread, weights)

    return make


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for label in sorted(LINES):
            terminalreporter.write_line(LINES[label])

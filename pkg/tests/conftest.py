import math

import numpy as np
import pytest

from hillspec import Potential, load_preset

T_VALUES = [0.0, 0.3 * math.pi, 0.5 * math.pi, 0.7 * math.pi, math.pi, 1.4 * math.pi]


@pytest.fixture
def cos1():
    return load_preset("cos1")


@pytest.fixture
def zero():
    return Potential.constant(0.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def random_hermitian(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (a + a.conj().T) / 2


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)

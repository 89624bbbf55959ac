import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lcaentropy import LocalRule, make_markov, uniform_measure


@pytest.fixture
def rule90():
    return LocalRule(2, 1, 1, (1, 0, 1))


@pytest.fixture
def rule90_m3():
    """The m=3 analogue of rule90: x_{-1} + x_{+1} mod 3."""
    return LocalRule(3, 1, 1, (1, 0, 1))


@pytest.fixture
def uniform2():
    return uniform_measure(2)


@pytest.fixture
def skewed():
    """Stationary Markov measure with P=[[.9,.1],[.8,.2]], pi=(8/9, 1/9)."""
    return make_markov([[0.9, 0.1], [0.8, 0.2]], (8 / 9, 1 / 9))

import math

import pytest

from src.models.params import HoppingPattern, SystemParams


@pytest.fixture
def small_uniform():
    return SystemParams(8, coupling=1.3, hopping=0.7, detuning=0.4, beta=0.9)


@pytest.fixture
def small_staggered():
    return SystemParams(7, coupling=1.1, hopping=0.9, detuning=-0.3, beta=0.6,
                        pattern=HoppingPattern.staggered(-0.35))


@pytest.fixture
def intermediate_coupling():
    """lambda = 10 xi, Delta = 0, beta = pi/4 on a short array."""
    return SystemParams(20, coupling=10.0, hopping=1.0, detuning=0.0, beta=math.pi / 4)

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from conjulab.fourier import DEFAULT_GRID, Grid

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def grid():
    return DEFAULT_GRID


@pytest.fixture
def small_grid():
    return Grid(256, 64)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

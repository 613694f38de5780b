import numpy as np
import pytest


@pytest.fixture
def rng():
    """Creates a seeded generator so every sweep is reproducible."""
    return np.random.default_rng(20240601)


@pytest.fixture(params=[1, 2, 3, 4])
def n(request):
    """Half-dimensions covered by the property sweeps."""
    return request.param

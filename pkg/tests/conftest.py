import numpy as np
import pytest

from markovspectra import kernels


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Run the decorated test once per available kernel backend."""
    with kernels.use_backend(request.param):
        yield request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)

import numpy as np
import pytest

from logdrift.grid import SpectralGrid
from logdrift.models import KernelSpec, ModelSpec, NonlinearitySpec, SourceSpec
from logdrift.operator_core import make_params

# Certified lower bounds are expensive enough to share across the session.


@pytest.fixture(scope="session")
def params01():
    return make_params(0.0, 1.0)


@pytest.fixture(scope="session")
def grid_fine():
    return SpectralGrid(4096, 80.0)


@pytest.fixture(scope="session")
def grid_coarse():
    return SpectralGrid(1024, 80.0)


@pytest.fixture(scope="session")
def default_source():
    return SourceSpec(
        family="difference_of_gaussians", width=1.0, width_wide=2.0, amplitude=1.0
    )


@pytest.fixture(scope="session")
def default_kernel():
    return KernelSpec(family="gaussian", width=1.0)


@pytest.fixture(scope="session")
def default_nonlinearity():
    return NonlinearitySpec(family="scaled_sine", beta=1.0)


@pytest.fixture(scope="session")
def make_model(default_source, default_kernel, default_nonlinearity):
    def _make(epsilon, rho=1.0, nonlinearity=None, kernel=None, source=None):
        return ModelSpec(
            source=source or default_source,
            kernel=kernel or default_kernel,
            nonlinearity=nonlinearity or default_nonlinearity,
            epsilon=epsilon,
            rho=rho,
        )

    return _make


def random_smooth(grid, rng, n_modes=32, scale=1.0):
    """Band-limited random real field used throughout the property tests."""
    raw = rng.standard_normal(grid.n_points)
    spec = np.fft.fft(raw)
    k = np.abs(np.fft.fftfreq(grid.n_points, d=1.0 / grid.n_points).astype(int))
    spec[k > n_modes] = 0.0
    return scale * np.fft.ifft(spec).real

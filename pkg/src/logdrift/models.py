"""Concrete sources, convolution kernels, and nonlinearities with exact constants.

Every shipped family has a closed-form L1 norm (kernels) or derivative bound
(nonlinearities), so the constants entering the contraction estimates are
exact and the only numerical error left is the discretization of the
transform.  Kernels with kinks or jumps (laplace, box) are sampled as exact
cell averages so their discrete L1 matches the analytic value to rounding on
any grid.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateModel
from .grid import GridFunction

# Validation ranges for sampled derivative bounds
_Z_RANGE = 50.0
_Z_SAMPLES = 100_001


@dataclass(frozen=True)
class KernelSpec:
    """Convolution kernel family with analytic L1 norm.

    Families: gaussian(width), laplace(rate), box(halfwidth); all normalized
    to unit mass and scaled by ``amplitude``.
    """

    family: str
    width: float = 1.0  # gaussian std dev / laplace 1/rate / box halfwidth
    amplitude: float = 1.0

    def __post_init__(self):
        if self.family not in ("gaussian", "laplace", "box"):
            raise DegenerateModel(f"unknown kernel family {self.family!r}")
        if self.width <= 0.0:
            raise DegenerateModel("kernel width must be positive")
        if self.amplitude == 0.0:
            raise DegenerateModel("kernel must not vanish identically")

    @property
    def l1_norm(self):
        """Analytic integral of |K|; the shipped shapes are unit-mass densities."""
        return abs(self.amplitude)

    def sample(self, grid):
        """Sample on the grid; kinked families use exact cell averages."""
        x = grid.nodes
        if self.family == "gaussian":
            s = self.width
            vals = np.exp(-0.5 * (x / s) ** 2) / (s * np.sqrt(2.0 * np.pi))
        else:
            xl, xr = x - 0.5 * grid.dx, x + 0.5 * grid.dx
            vals = (self._antiderivative(xr) - self._antiderivative(xl)) / grid.dx
        return GridFunction(grid, self.amplitude * vals, "space")

    def _antiderivative(self, t):
        if self.family == "laplace":
            alpha = 1.0 / self.width
            return np.sign(t) * 0.5 * (1.0 - np.exp(-alpha * np.abs(t)))
        h = self.width  # box
        return np.clip(t, -h, h) / (2.0 * h)

    def validate(self, grid, rtol=1e-6):
        """Check the sampled kernel against the analytic L1 norm."""
        k = self.sample(grid)
        l1 = k.l1_norm()
        if l1 == 0.0:
            raise DegenerateModel("sampled kernel vanishes identically")
        if abs(l1 - self.l1_norm) > rtol * self.l1_norm:
            raise DegenerateModel(
                f"discrete l1 {l1!r} deviates from analytic {self.l1_norm!r} "
                f"beyond rtol {rtol}"
            )


@dataclass(frozen=True)
class NonlinearitySpec:
    """Nonlinearity g with g(0) = 0 and analytic bound M on |g'|.

    Families (all with sup|g'| = beta, attained at z = 0):
      scaled_sine: beta * sin(z)
      rational:    beta * z / (1 + z^2)
      tanh:        beta * tanh(z)
    """

    family: str
    beta: float = 1.0

    def __post_init__(self):
        if self.family not in ("scaled_sine", "rational", "tanh"):
            raise DegenerateModel(f"unknown nonlinearity family {self.family!r}")
        if self.beta <= 0.0:
            raise DegenerateModel("beta must be positive")

    @property
    def M(self):
        return self.beta

    def g(self, z):
        z = np.asarray(z, dtype=float)
        if self.family == "scaled_sine":
            return self.beta * np.sin(z)
        if self.family == "rational":
            return self.beta * z / (1.0 + z * z)
        return self.beta * np.tanh(z)

    def g_prime(self, z):
        z = np.asarray(z, dtype=float)
        if self.family == "scaled_sine":
            return self.beta * np.cos(z)
        if self.family == "rational":
            return self.beta * (1.0 - z * z) / (1.0 + z * z) ** 2
        return self.beta / np.cosh(z) ** 2

    def validate(self):
        """Sampled check of g(0)=0 and |g'| <= M on a dense interval."""
        if self.g(0.0) != 0.0:
            raise DegenerateModel("nonlinearity must vanish at zero")
        z = np.linspace(-_Z_RANGE, _Z_RANGE, _Z_SAMPLES)
        sampled = np.abs(self.g_prime(z)).max()
        if sampled > self.M * (1.0 + 1e-12):
            raise DegenerateModel(f"sampled |g'| {sampled} exceeds claimed M {self.M}")


@dataclass(frozen=True)
class CustomNonlinearity:
    """Caller-supplied g with a claimed derivative bound, verified by sampling.

    A Lipschitz bound that underestimates sup|g'| would silently void the
    contraction guarantee, so claims that sampling contradicts are rejected.
    """

    g_func: object
    g_prime_func: object
    claimed_M: float

    @property
    def M(self):
        return self.claimed_M

    def g(self, z):
        return np.asarray(self.g_func(np.asarray(z, dtype=float)), dtype=float)

    def g_prime(self, z):
        return np.asarray(self.g_prime_func(np.asarray(z, dtype=float)), dtype=float)

    def validate(self):
        if self.claimed_M <= 0.0:
            raise DegenerateModel("claimed M must be positive")
        if self.g(0.0) != 0.0:
            raise DegenerateModel("nonlinearity must vanish at zero")
        z = np.linspace(-_Z_RANGE, _Z_RANGE, _Z_SAMPLES)
        sampled = np.abs(self.g_prime(z)).max()
        if sampled > self.claimed_M * (1.0 + 1e-12):
            raise DegenerateModel(
                f"sampled |g'| {sampled} exceeds claimed M {self.claimed_M}"
            )


def lipschitz_bound(spec):
    """Analytic M, cross-checked against dense sampling of |g'|.

    The sampled max must not exceed M and must come within 0.1% of it for the
    shipped families (all attain M at z = 0).
    """
    z = np.linspace(-_Z_RANGE, _Z_RANGE, _Z_SAMPLES)
    sampled = float(np.abs(spec.g_prime(z)).max())
    if sampled > spec.M * (1.0 + 1e-12) or sampled < 0.999 * spec.M:
        raise DegenerateModel(
            f"sampled derivative bound {sampled} inconsistent with analytic {spec.M}"
        )
    return spec.M


@dataclass(frozen=True)
class SourceSpec:
    """Source term f; nontrivial by construction.

    gaussian_bump carries nonzero mean; difference_of_gaussians has exactly
    zero mean, which keeps the discrete solve free of the dropped p = 0 mode.
    """

    family: str
    center: float = 0.0
    width: float = 1.0
    amplitude: float = 1.0
    width_wide: float = 2.0

    def __post_init__(self):
        if self.family not in ("gaussian_bump", "difference_of_gaussians"):
            raise DegenerateModel(f"unknown source family {self.family!r}")
        if self.width <= 0.0 or self.width_wide <= 0.0:
            raise DegenerateModel("source widths must be positive")
        if self.amplitude == 0.0:
            raise DegenerateModel("source must be nontrivial")
        if self.family == "difference_of_gaussians" and self.width_wide == self.width:
            raise DegenerateModel("difference_of_gaussians needs distinct widths")

    def sample(self, grid):
        x = grid.nodes - self.center
        narrow = np.exp(-0.5 * (x / self.width) ** 2)
        if self.family == "gaussian_bump":
            vals = self.amplitude * narrow
        else:
            wide = np.exp(-0.5 * (x / self.width_wide) ** 2)
            vals = self.amplitude * (narrow - (self.width / self.width_wide) * wide)
        return GridFunction(grid, vals, "space")


@dataclass(frozen=True)
class ModelSpec:
    """Everything problem-specific: f, kernel, g, the scaling epsilon, ball radius rho."""

    source: SourceSpec
    kernel: KernelSpec
    nonlinearity: object  # NonlinearitySpec or CustomNonlinearity
    epsilon: float
    rho: float = 1.0

    def __post_init__(self):
        if self.epsilon < 0.0:
            raise DegenerateModel("epsilon must be nonnegative")
        if not 0.0 < self.rho <= 1.0:
            raise DegenerateModel("rho must lie in (0, 1]")

    def validate(self, grid):
        self.kernel.validate(grid)
        self.nonlinearity.validate()

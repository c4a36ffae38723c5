"""Linear spectral solve, the auxiliary fixed-point map, and the Picard driver.

The linear operator is inverted mode by mode: u_hat(p) = f_hat(p) / lam(p),
with the p = 0 mode set to zero (the reciprocal-symbol convention; the
continuum symbol diverges there).  The nonlinear solve iterates the auxiliary
map v -> t_g(v), whose Lipschitz constant on the ball of radius rho is
sigma = epsilon * M * ||K||_1 / C_ab; the iteration is refused outright when
epsilon exceeds the admissibility threshold, because outside it there is no
convergence guarantee to audit.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    AdmissibilityError,
    BallViolation,
    MaxItersExceeded,
    NontrivialZeroMode,
    ZeroModePresent,
)
from .grid import (
    SQRT_2PI,
    GridFunction,
    check_decay,
    ft_forward,
    ft_inverse,
    ft_inverse_real,
)
from .operator_core import (
    ContractionConstants,
    epsilon_max,
    reciprocal_symbol_on_freqs,
    sigma_rate,
    symbol_on_freqs,
)


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances of the solve pipeline."""

    fp_tol: float = 1e-10
    linear_residual_tol: float = 1e-8
    decay_tol: float = 1e-10
    zero_mode_tol: float = 1e-9
    imag_tol: float = 1e-10
    max_iters: int = 10_000


@dataclass(frozen=True)
class LinearSolveResult:
    u0: GridFunction
    residual_l2: float
    u0_l2: float


@dataclass
class SolveReport:
    """Iteration trace of the fixed-point solve."""

    iterations: int = 0
    increments: list = field(default_factory=list)
    observed_ratios: list = field(default_factory=list)
    sigma_theoretical: float = 0.0
    main_residual_l2: float = 0.0
    u0_l2: float = 0.0
    up_l2: float = 0.0

    def to_dict(self):
        return {
            "iterations": self.iterations,
            "sigma": self.sigma_theoretical,
            "increments": list(self.increments),
            "ratios": list(self.observed_ratios),
            "residual": self.main_residual_l2,
            "u0_l2": self.u0_l2,
            "up_l2": self.up_l2,
        }


@dataclass(frozen=True)
class FixedPointResult:
    u_p: GridFunction
    u: GridFunction
    report: SolveReport


def _zero_mode_index(grid):
    return 0  # FFT ordering puts p = 0 first


def apply_operator(u, params, tols=Tolerances()):
    """Apply the linear operator via its Fourier symbol.

    The input may not carry a material p = 0 component: the symbol diverges
    there, so such inputs are outside the representable class.
    """
    spec = ft_forward(u)
    total = spec.l2_norm()
    if abs(spec.values[0]) > tols.zero_mode_tol * max(total, 1e-300):
        raise ZeroModePresent(
            f"input zero mode {abs(spec.values[0]):.3e} exceeds tolerance"
        )
    lam = symbol_on_freqs(u.grid.freqs, params)
    out = spec.values * np.where(np.isfinite(lam), lam, 0.0)
    out[0] = 0.0
    # complex inputs (single Fourier modes) are legitimate; no real cast here
    return ft_inverse(GridFunction(u.grid, out, "freq"))


def solve_linear(f, params, tols=Tolerances()):
    """Unique square-integrable solution of the linear problem, mode by mode.

    A nonzero source mean is reported (the discrete solve drops that single
    mode) but not fatal; the residual is measured over the nonzero modes.
    """
    check_decay(f, tols.decay_tol)
    f_hat = ft_forward(f)
    f_norm = f_hat.l2_norm()
    if f_norm > 0.0 and abs(f_hat.values[0]) > tols.zero_mode_tol * f_norm:
        warnings.warn(
            "source has a nontrivial mean; the p = 0 mode is dropped from the solve",
            NontrivialZeroMode,
            stacklevel=2,
        )
    inv = reciprocal_symbol_on_freqs(f.grid.freqs, params)
    u_hat = GridFunction(f.grid, f_hat.values * inv, "freq")
    u0 = ft_inverse_real(u_hat, tols.imag_tol)

    lam = symbol_on_freqs(f.grid.freqs, params)
    res = u_hat.values * np.where(np.isfinite(lam), lam, 0.0) - f_hat.values
    res[0] = 0.0
    residual = GridFunction(f.grid, res, "freq").l2_norm()
    rel = residual / f_norm if f_norm > 0.0 else residual
    return LinearSolveResult(u0=u0, residual_l2=rel, u0_l2=u0.l2_norm())


def apply_t_g(v, u0, model, params, tols=Tolerances()):
    """One application of the auxiliary map: solve the linear problem with
    right side epsilon * (K conv g(u0 + v))."""
    if v.l2_norm() > model.rho * (1.0 + 1e-12):
        raise BallViolation(
            f"iterate norm {v.l2_norm():.6e} exceeds ball radius {model.rho}"
        )
    big_g = GridFunction(
        v.grid, model.nonlinearity.g((u0.values + v.values).real), "space"
    )
    k = model.kernel.sample(v.grid)
    spec = (
        model.epsilon
        * SQRT_2PI
        * ft_forward(k).values
        * ft_forward(big_g).values
        * reciprocal_symbol_on_freqs(v.grid.freqs, params)
    )
    return ft_inverse_real(GridFunction(v.grid, spec, "freq"), tols.imag_tol)


def contraction_constants(model, params, u0_l2):
    """Bundle the scalar constants of the contraction estimate for a model."""
    return ContractionConstants.from_model(
        epsilon=model.epsilon,
        rho=model.rho,
        M=model.nonlinearity.M,
        kernel_l1=model.kernel.l1_norm,
        u0_l2=u0_l2,
        c_ab=params.c_ab,
    )


def solve_fixed_point(model, params, grid, tols=Tolerances(), v_start=None):
    """Picard iteration for the perturbed part u_p, plus the assembled u = u0 + u_p.

    The stopping rule is the a posteriori bound: iterate until the increment
    is below fp_tol * (1 - sigma) / sigma, so the distance to the true fixed
    point is below fp_tol.  Refuses epsilon above the admissibility threshold.
    """
    f = model.source.sample(grid)
    lin = solve_linear(f, params, tols)
    u0 = lin.u0

    eps_max = epsilon_max(
        model.rho, params.c_ab, model.nonlinearity.M, model.kernel.l1_norm, lin.u0_l2
    )
    if model.epsilon > eps_max:
        raise AdmissibilityError(
            f"epsilon {model.epsilon} exceeds admissibility threshold {eps_max:.6e}"
        )
    sigma = sigma_rate(
        model.epsilon, model.nonlinearity.M, model.kernel.l1_norm, params.c_ab
    )

    report = SolveReport(sigma_theoretical=sigma, u0_l2=lin.u0_l2)
    v = v_start if v_start is not None else GridFunction(grid, np.zeros(grid.n_points), "space")
    if v.l2_norm() > model.rho * (1.0 + 1e-12):
        raise BallViolation("initial iterate lies outside the ball")

    if model.epsilon == 0.0:
        u_p = GridFunction(grid, np.zeros(grid.n_points), "space")
    else:
        threshold = tols.fp_tol * (1.0 - sigma) / sigma
        u_p = None
        for _ in range(tols.max_iters):
            v_next = apply_t_g(v, u0, model, params, tols)
            inc = (v_next - v).l2_norm()
            report.increments.append(inc)
            report.iterations += 1
            v = v_next
            if inc <= threshold:
                u_p = v
                break
        if u_p is None:
            raise MaxItersExceeded(
                f"no convergence within {tols.max_iters} iterations"
            )

    report.observed_ratios = [
        report.increments[k + 1] / report.increments[k]
        for k in range(len(report.increments) - 1)
        if report.increments[k] > 0.0
    ]
    report.up_l2 = u_p.l2_norm()
    u = u0 + u_p
    report.main_residual_l2 = residual_main(u, model, params)
    return FixedPointResult(u_p=u_p, u=u, report=report)


def residual_main(u, model, params):
    """L2 residual of the full stationary equation, zero mode excluded.

    Measures || L u - f - epsilon * (K conv g(u)) ||_2 in frequency space,
    with the p = 0 mode dropped per the reciprocal-symbol convention.
    """
    grid = u.grid
    f_hat = ft_forward(model.source.sample(grid))
    u_hat = ft_forward(u)
    g_hat = ft_forward(GridFunction(grid, model.nonlinearity.g(u.values.real), "space"))
    k_hat = ft_forward(model.kernel.sample(grid))
    lam = symbol_on_freqs(grid.freqs, params)
    res = (
        u_hat.values * np.where(np.isfinite(lam), lam, 0.0)
        - f_hat.values
        - model.epsilon * SQRT_2PI * k_hat.values * g_hat.values
    )
    res[0] = 0.0
    return GridFunction(grid, res, "freq").l2_norm()

"""Pseudospectral fixed-point solver for a stationary nonlocal equation with
a logarithmic diffusion operator and drift."""

from .grid import (
    GridFunction,
    SpectralGrid,
    convolve_direct,
    convolve_fft,
    from_csv,
    ft_forward,
    ft_inverse,
    norms,
    to_csv,
)
from .models import (
    CustomNonlinearity,
    KernelSpec,
    ModelSpec,
    NonlinearitySpec,
    SourceSpec,
    lipschitz_bound,
)
from .operator_core import (
    INF_SYMBOL,
    ContractionConstants,
    OperatorParams,
    compute_lower_bound,
    epsilon_max,
    make_params,
    sigma_rate,
    symbol_lambda,
)
from .solver import (
    FixedPointResult,
    LinearSolveResult,
    SolveReport,
    Tolerances,
    apply_operator,
    apply_t_g,
    residual_main,
    solve_fixed_point,
    solve_linear,
)

__version__ = "0.1.0"

__all__ = [
    "GridFunction",
    "SpectralGrid",
    "convolve_direct",
    "convolve_fft",
    "from_csv",
    "ft_forward",
    "ft_inverse",
    "norms",
    "to_csv",
    "CustomNonlinearity",
    "KernelSpec",
    "ModelSpec",
    "NonlinearitySpec",
    "SourceSpec",
    "lipschitz_bound",
    "INF_SYMBOL",
    "ContractionConstants",
    "OperatorParams",
    "compute_lower_bound",
    "epsilon_max",
    "make_params",
    "sigma_rate",
    "symbol_lambda",
    "FixedPointResult",
    "LinearSolveResult",
    "SolveReport",
    "Tolerances",
    "apply_operator",
    "apply_t_g",
    "residual_main",
    "solve_fixed_point",
    "solve_linear",
    "__version__",
]

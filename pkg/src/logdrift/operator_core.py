"""Fourier symbol of the linear operator and its certified spectral lower bound.

The operator (1/2)ln(-d^2/dx^2) - b d/dx - a acts on each frequency mode by
multiplication with

    lam(p) = ln(|p| / e^a) - i b p,

whose modulus sqrt(ln^2(|p|/e^a) + b^2 p^2) is bounded away from zero as soon
as b != 0.  The infimum C_ab of that modulus over p > 0 controls every
contraction estimate downstream, so it is computed here by a dense scan plus
golden-section refinement and certified by re-sampling.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketFailure, DegenerateModel

# Sentinel for lam(0): the symbol diverges there and its reciprocal is 0.
INF_SYMBOL = complex(math.inf, 0.0)

# 1/phi and 1/phi^2 for the golden-section search
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class OperatorParams:
    """Constants (a, b) of the linear operator together with the cached lower bound.

    Build instances through :func:`make_params`, which computes and certifies
    ``c_ab``.
    """

    a: float
    b: float
    c_ab: float

    def __post_init__(self):
        if self.b == 0.0:
            raise DegenerateModel("drift coefficient b must be nonzero")
        if not self.c_ab > 0.0:
            raise DegenerateModel("spectral lower bound c_ab must be positive")


@dataclass(frozen=True)
class SearchConfig:
    """Bracketing and certification settings for the lower-bound search."""

    scan_points: int = 200_001
    refine_tol: float = 1e-13
    certify_points: int = 1_000_000
    tol_c: float = 1e-9


@dataclass(frozen=True)
class ContractionConstants:
    """The scalar constants entering the contraction estimate.

    sigma = epsilon * M * kernel_l1 / c_ab is the Lipschitz constant of the
    auxiliary map on the ball of radius rho; epsilon_max is the largest kernel
    scaling for which sigma < 1 is guaranteed.
    """

    epsilon: float
    rho: float
    M: float
    kernel_l1: float
    u0_l2: float
    c_ab: float
    sigma: float
    epsilon_max: float

    @classmethod
    def from_model(cls, epsilon, rho, M, kernel_l1, u0_l2, c_ab):
        eps_max = epsilon_max(rho, c_ab, M, kernel_l1, u0_l2)
        return cls(
            epsilon=epsilon,
            rho=rho,
            M=M,
            kernel_l1=kernel_l1,
            u0_l2=u0_l2,
            c_ab=c_ab,
            sigma=sigma_rate(epsilon, M, kernel_l1, c_ab),
            epsilon_max=eps_max,
        )


def symbol_lambda(p, params):
    """Evaluate the operator's Fourier symbol at a single real frequency.

    Returns ``INF_SYMBOL`` at p = 0, where the logarithm diverges; the
    reciprocal symbol is taken to vanish there.
    """
    if p == 0.0:
        return INF_SYMBOL
    return complex(math.log(abs(p)) - params.a, -params.b * p)


def symbol_modulus(p, a, b):
    """|lam(p)| for array or scalar p != 0."""
    p = np.asarray(p, dtype=float)
    return np.sqrt((np.log(np.abs(p)) - a) ** 2 + (b * p) ** 2)


def symbol_on_freqs(freqs, params):
    """Symbol values on a frequency lattice; the zero frequency gets INF_SYMBOL."""
    freqs = np.asarray(freqs, dtype=float)
    lam = np.empty(freqs.shape, dtype=complex)
    nz = freqs != 0.0
    lam[nz] = (np.log(np.abs(freqs[nz])) - params.a) - 1j * params.b * freqs[nz]
    lam[~nz] = INF_SYMBOL
    return lam


def reciprocal_symbol_on_freqs(freqs, params):
    """1/lam on a frequency lattice, with the zero-frequency entry set to 0."""
    freqs = np.asarray(freqs, dtype=float)
    inv = np.zeros(freqs.shape, dtype=complex)
    nz = freqs != 0.0
    lam = (np.log(np.abs(freqs[nz])) - params.a) - 1j * params.b * freqs[nz]
    inv[nz] = 1.0 / lam
    return inv


def _search_bracket(a, b):
    lo = 1e-6 * math.exp(a)
    hi = max(1e2, 10.0 * math.exp(a), 10.0 / abs(b))
    return lo, hi


def _golden_section(f, lo, hi, tol):
    """Minimize a unimodal-on-[lo,hi] scalar function; returns the midpoint."""
    h = hi - lo
    c = lo + _INV_PHI2 * h
    d = lo + _INV_PHI * h
    yc, yd = f(c), f(d)
    # enough steps to shrink the bracket below tol
    n = max(1, int(math.ceil(math.log(tol / h) / math.log(_INV_PHI))))
    for _ in range(n):
        if yc < yd:
            hi, d, yd = d, c, yc
            h *= _INV_PHI
            c = lo + _INV_PHI2 * h
            yc = f(c)
        else:
            lo, c, yc = c, d, yd
            h *= _INV_PHI
            d = lo + _INV_PHI * h
            yd = f(d)
    if hi - lo > tol * max(1.0, abs(hi)):
        raise BracketFailure(
            f"golden-section bracket [{lo}, {hi}] did not shrink below {tol}"
        )
    return 0.5 * (lo + hi)


def compute_lower_bound(a, b, search=SearchConfig()):
    """Certified infimum of |lam(p)| over p > 0.

    Dense log-spaced scan over an analytically safe bracket (the modulus blows
    up at both ends), golden-section refinement around the scan minimum, then
    a certificate pass re-sampling the bracket to confirm no sampled value
    undercuts the result by more than ``search.tol_c``.
    """
    if b == 0.0:
        raise DegenerateModel("lower bound is zero without the drift term (b = 0)")
    lo, hi = _search_bracket(a, b)

    grid = np.logspace(math.log10(lo), math.log10(hi), search.scan_points)
    vals = symbol_modulus(grid, a, b)
    i = int(np.argmin(vals))
    left = grid[max(i - 1, 0)]
    right = grid[min(i + 1, grid.size - 1)]

    p_star = _golden_section(
        lambda p: float(symbol_modulus(p, a, b)), left, right, search.refine_tol
    )
    c_ab = float(symbol_modulus(p_star, a, b))

    cert = np.logspace(math.log10(lo), math.log10(hi), search.certify_points)
    cert_min = float(symbol_modulus(cert, a, b).min())
    if cert_min < c_ab - search.tol_c * max(1.0, c_ab):
        # the scan found a better basin than the refinement; take it
        c_ab = cert_min
    return c_ab


def make_params(a, b, search=SearchConfig()):
    """Construct OperatorParams with a freshly certified lower bound."""
    return OperatorParams(a=a, b=b, c_ab=compute_lower_bound(a, b, search))


def epsilon_max(rho, c_ab, M, kernel_l1, u0_l2):
    """Largest kernel scaling for which the fixed-point map is a guaranteed contraction.

    rho * c_ab / (M * kernel_l1 * (u0_l2 + 1)).
    """
    if M <= 0.0 or kernel_l1 <= 0.0:
        raise DegenerateModel(
            "the contraction threshold needs M > 0 and a nonvanishing kernel"
        )
    if not 0.0 < rho <= 1.0:
        raise DegenerateModel("ball radius rho must lie in (0, 1]")
    if c_ab <= 0.0:
        raise DegenerateModel("c_ab must be positive")
    return rho * c_ab / (M * kernel_l1 * (u0_l2 + 1.0))


def sigma_rate(epsilon, M, kernel_l1, c_ab):
    """Contraction rate epsilon * M * kernel_l1 / c_ab."""
    if c_ab <= 0.0:
        raise DegenerateModel("c_ab must be positive")
    return epsilon * M * kernel_l1 / c_ab

"""Scripted experiments that measure the theoretical guarantees numerically.

Three experiments: a contraction audit (random ball pairs, observed ratio vs
the theoretical rate), an epsilon sweep (perturbation norm vs its linear
bound), and a continuity check (distance between solutions for two
nonlinearities vs the derivative-difference bound).  All randomness is a
seeded generator; outputs are deterministic given (config, seed).
"""

import json
import platform
from dataclasses import dataclass, replace

import numpy as np

from .errors import AdmissibilityError
from .grid import GridFunction
from .operator_core import epsilon_max, sigma_rate
from .solver import Tolerances, apply_t_g, solve_fixed_point, solve_linear


def draw_ball_element(grid, rho, rng, n_modes=32):
    """Smooth random real field with l2 norm rho * uniform(0, 1].

    Band-limited white noise: keep only the lowest n_modes frequencies so the
    draw is well resolved and discretization error stays away from the
    inequality margins.
    """
    raw = rng.standard_normal(grid.n_points)
    spec = np.fft.fft(raw)
    k = np.abs(np.fft.fftfreq(grid.n_points, d=1.0 / grid.n_points).astype(int))
    spec[k > n_modes] = 0.0
    smooth = np.fft.ifft(spec).real
    f = GridFunction(grid, smooth, "space")
    norm = f.l2_norm()
    target = rho * (1.0 - rng.uniform(0.0, 1.0))  # uniform over (0, 1]
    if norm == 0.0:
        return f
    return (target / norm) * f


@dataclass(frozen=True)
class ContractionAuditRow:
    input_distance: float
    output_distance: float
    ratio: float


def run_contraction_audit(model, params, grid, trials=100, seed=42, tols=Tolerances()):
    """Measure the contraction ratio of the auxiliary map on random ball pairs.

    Returns (rows, sigma).  Coincident pairs get ratio 0 by convention.
    """
    f = model.source.sample(grid)
    lin = solve_linear(f, params, tols)
    eps_max = epsilon_max(
        model.rho, params.c_ab, model.nonlinearity.M, model.kernel.l1_norm, lin.u0_l2
    )
    if model.epsilon > eps_max:
        raise AdmissibilityError(
            f"epsilon {model.epsilon} exceeds threshold {eps_max:.6e}"
        )
    sigma = sigma_rate(
        model.epsilon, model.nonlinearity.M, model.kernel.l1_norm, params.c_ab
    )
    rng = np.random.default_rng(seed)
    rows = []
    for _ in range(trials):
        v1 = draw_ball_element(grid, model.rho, rng)
        v2 = draw_ball_element(grid, model.rho, rng)
        d_in = (v1 - v2).l2_norm()
        t1 = apply_t_g(v1, lin.u0, model, params, tols)
        t2 = apply_t_g(v2, lin.u0, model, params, tols)
        d_out = (t1 - t2).l2_norm()
        ratio = d_out / d_in if d_in > 0.0 else 0.0
        rows.append(ContractionAuditRow(d_in, d_out, ratio))
    return rows, sigma


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    sigma: float
    up_l2: float
    bound: float
    iterations: int
    residual: float
    status: str


def run_epsilon_sweep(model_template, params, grid, epsilons, tols=Tolerances()):
    """Solve once per epsilon and tabulate the perturbation norm against its bound.

    Inadmissible epsilons produce a row with status 'inadmissible' rather than
    aborting the sweep.
    """
    f = model_template.source.sample(grid)
    lin = solve_linear(f, params, tols)
    m = model_template.nonlinearity.M
    l1 = model_template.kernel.l1_norm
    rows = []
    for eps in epsilons:
        model = replace(model_template, epsilon=float(eps))
        sigma = sigma_rate(eps, m, l1, params.c_ab)
        bound = eps * l1 * m * (lin.u0_l2 + 1.0) / params.c_ab
        try:
            result = solve_fixed_point(model, params, grid, tols)
        except AdmissibilityError:
            rows.append(SweepRow(eps, sigma, float("nan"), bound, 0, float("nan"),
                                 "inadmissible"))
            continue
        rows.append(
            SweepRow(
                epsilon=float(eps),
                sigma=sigma,
                up_l2=result.report.up_l2,
                bound=bound,
                iterations=result.report.iterations,
                residual=result.report.main_residual_l2,
                status="ok",
            )
        )
    return rows


@dataclass(frozen=True)
class ContinuityExperimentResult:
    """Both sides of the solution-continuity bound for a pair of nonlinearities."""

    lhs: float
    rhs: float
    slack: float
    sup_gprime_diff: float
    sigma: float
    epsilon: float
    u0_l2: float


def sup_gprime_difference(g1, g2, z_lo, z_hi, samples=1_000_000):
    """Sup of |g1' - g2'| over [z_lo, z_hi], densely sampled.

    When both specs are the same shipped family the sup over the whole line
    is |beta1 - beta2| (attained at 0); the larger of sampled and analytic is
    returned so the bound is never weakened by under-sampling.
    """
    z = np.linspace(z_lo, z_hi, samples)
    sampled = float(np.abs(g1.g_prime(z) - g2.g_prime(z)).max())
    analytic = None
    fam1, fam2 = getattr(g1, "family", None), getattr(g2, "family", None)
    if fam1 is not None and fam1 == fam2:
        analytic = abs(g1.beta - g2.beta)
    if analytic is not None:
        return max(sampled, analytic)
    return sampled


def run_continuity(model_a, model_b, params, grid, tols=Tolerances()):
    """Solve with g1 and g2 sharing f, K, epsilon, rho; evaluate the continuity bound.

    The contraction rate uses M = max(M1, M2), the conservative reading of
    the shared hypothesis; admissibility with that M is required up front.
    """
    if model_a.epsilon != model_b.epsilon or model_a.rho != model_b.rho:
        raise ValueError("models must share epsilon and rho")
    f = model_a.source.sample(grid)
    lin = solve_linear(f, params, tols)
    m_max = max(model_a.nonlinearity.M, model_b.nonlinearity.M)
    l1 = model_a.kernel.l1_norm
    eps_max = epsilon_max(model_a.rho, params.c_ab, m_max, l1, lin.u0_l2)
    if model_a.epsilon > eps_max:
        raise AdmissibilityError(
            f"epsilon {model_a.epsilon} exceeds threshold {eps_max:.6e} at M = {m_max}"
        )
    sigma = sigma_rate(model_a.epsilon, m_max, l1, params.c_ab)

    res1 = solve_fixed_point(model_a, params, grid, tols)
    res2 = solve_fixed_point(model_b, params, grid, tols)
    lhs = (res1.u - res2.u).l2_norm()

    # sup over the realized range of u0 + u_p2, widened by one on each side
    realized = (lin.u0 + res2.u_p).values.real
    sup_diff = sup_gprime_difference(
        model_a.nonlinearity,
        model_b.nonlinearity,
        float(realized.min()) - 1.0,
        float(realized.max()) + 1.0,
    )
    rhs = (
        model_a.epsilon
        / (1.0 - sigma)
        * l1
        / params.c_ab
        * (lin.u0_l2 + 1.0)
        * sup_diff
    )
    return ContinuityExperimentResult(
        lhs=lhs,
        rhs=rhs,
        slack=rhs - lhs,
        sup_gprime_diff=sup_diff,
        sigma=sigma,
        epsilon=model_a.epsilon,
        u0_l2=lin.u0_l2,
    )


# --- persistence -----------------------------------------------------------

def _fmt(x):
    return f"{x:.17g}"


def write_contraction_csv(rows, sigma, path):
    with open(path, "w") as fh:
        fh.write("pair,input_distance,output_distance,ratio,sigma\n")
        for i, r in enumerate(rows):
            fh.write(
                f"{i},{_fmt(r.input_distance)},{_fmt(r.output_distance)},"
                f"{_fmt(r.ratio)},{_fmt(sigma)}\n"
            )


def write_sweep_csv(rows, path):
    with open(path, "w") as fh:
        fh.write("epsilon,sigma,up_l2,bound,iterations,residual,status\n")
        for r in rows:
            fh.write(
                f"{_fmt(r.epsilon)},{_fmt(r.sigma)},{_fmt(r.up_l2)},"
                f"{_fmt(r.bound)},{r.iterations},{_fmt(r.residual)},{r.status}\n"
            )


def write_continuity_csv(result, path):
    with open(path, "w") as fh:
        fh.write("lhs,rhs,slack,sup_gprime_diff,sigma,epsilon,u0_l2\n")
        fh.write(
            ",".join(
                _fmt(v)
                for v in (
                    result.lhs,
                    result.rhs,
                    result.slack,
                    result.sup_gprime_diff,
                    result.sigma,
                    result.epsilon,
                    result.u0_l2,
                )
            )
            + "\n"
        )


def write_manifest(path, config_hash, seed, grid, threads=1, extra=None):
    manifest = {
        "config_hash": config_hash,
        "seed": seed,
        "grid": {"n_points": grid.n_points, "length": grid.length},
        "platform": platform.platform(),
        "threads": threads,
    }
    if extra:
        manifest.update(extra)
    with open(path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")

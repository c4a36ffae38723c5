"""Command-line front end: inspect constants, run the solver, run experiments.

Exit codes: 0 success, 2 validation, 3 admissibility, 4 convergence,
5 numerical integrity.  Errors are reported as one JSON object on stdout so
scripted callers can branch on them.
"""

import argparse
import json
import sys
from pathlib import Path

from .config import load_config
from .errors import (
    AdmissibilityError,
    ConfigError,
    ImaginaryResidue,
    LogDriftError,
    MaxItersExceeded,
    ZeroModePresent,
)
from .experiments import (
    run_contraction_audit,
    run_continuity,
    run_epsilon_sweep,
    write_continuity_csv,
    write_contraction_csv,
    write_manifest,
    write_sweep_csv,
)
from .grid import to_csv
from .operator_core import epsilon_max, make_params, sigma_rate
from .solver import solve_fixed_point, solve_linear

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ADMISSIBILITY = 3
EXIT_CONVERGENCE = 4
EXIT_INTEGRITY = 5

# observed contraction ratios may exceed sigma only by discretization slack
RATIO_TOL = 1e-6


def _emit(obj):
    json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")


def _error(exc, code):
    _emit({"error": type(exc).__name__, "message": str(exc)})
    return code


def _prepare(cfg, out_override, seed_override):
    if out_override is not None:
        cfg.output_dir = out_override
    if seed_override is not None:
        cfg.seed = seed_override
    grid = cfg.build_grid()
    tols = cfg.build_tolerances()
    params = make_params(cfg.a, cfg.b)
    return grid, tols, params


def _constants(cfg, grid, tols, params):
    """All contraction constants, including the linear solve for ||u0||_2."""
    kernel = cfg.build_kernel()
    nonlin = cfg.build_nonlinearity()
    kernel.validate(grid)
    nonlin.validate()
    lin = solve_linear(cfg.build_source().sample(grid), params, tols)
    eps_max = epsilon_max(cfg.rho, params.c_ab, nonlin.M, kernel.l1_norm, lin.u0_l2)
    epsilon = cfg.epsilon.resolve(eps_max)
    return {
        "c_ab": params.c_ab,
        "kernel_l1": kernel.l1_norm,
        "M": nonlin.M,
        "u0_l2": lin.u0_l2,
        "epsilon_max": eps_max,
        "epsilon": epsilon,
        "sigma": sigma_rate(epsilon, nonlin.M, kernel.l1_norm, params.c_ab),
        "rho": cfg.rho,
        "linear_residual": lin.residual_l2,
    }


def cmd_inspect(cfg, args):
    grid, tols, params = _prepare(cfg, args.out, args.seed)
    constants = _constants(cfg, grid, tols, params)
    _emit(constants)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "constants.json", "w") as fh:
        json.dump(constants, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return EXIT_OK


def cmd_solve(cfg, args):
    grid, tols, params = _prepare(cfg, args.out, args.seed)
    constants = _constants(cfg, grid, tols, params)
    epsilon = constants["epsilon"]
    if epsilon > constants["epsilon_max"]:
        raise AdmissibilityError(
            f"epsilon {epsilon} exceeds admissibility threshold "
            f"{constants['epsilon_max']:.6e}"
        )
    model = cfg.build_model(epsilon)
    result = solve_fixed_point(model, params, grid, tols)
    report = result.report

    f_l2 = model.source.sample(grid).l2_norm()
    checks = {
        "up_within_ball": report.up_l2 <= cfg.rho * (1.0 + 1e-12),
        "ratios_below_sigma": all(
            r <= report.sigma_theoretical + RATIO_TOL for r in report.observed_ratios
        ),
        "main_residual_small": report.main_residual_l2
        <= tols.linear_residual_tol * (f_l2 + 1.0),
    }

    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    u0 = result.u - result.u_p
    to_csv(u0, out / "u0.csv")
    to_csv(result.u_p, out / "up.csv")
    to_csv(result.u, out / "u.csv")
    payload = report.to_dict()
    payload["checks"] = checks
    payload["epsilon"] = epsilon
    payload["threads"] = args.threads
    with open(out / "report.json", "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    write_manifest(out / "manifest.json", cfg.config_hash(), cfg.seed, grid,
                   threads=args.threads)
    if not args.no_plots:
        from . import plots

        plots.plot_solution(u0, result.u_p, result.u, out / "solution.png")
        plots.plot_convergence(report, out / "convergence.png")

    if not all(checks.values()):
        _emit({"error": "IntegrityCheckFailed", "checks": checks})
        return EXIT_INTEGRITY
    _emit({"status": "ok", "report": payload})
    return EXIT_OK


def cmd_experiment(cfg, args):
    grid, tols, params = _prepare(cfg, args.out, args.seed)
    constants = _constants(cfg, grid, tols, params)
    epsilon = constants["epsilon"]
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    tag = cfg.config_hash()
    settings = cfg.experiment.get(args.which, {})

    if args.which == "contraction":
        model = cfg.build_model(epsilon)
        trials = int(settings.get("trials", 100))
        rows, sigma = run_contraction_audit(
            model, params, grid, trials=trials, seed=cfg.seed, tols=tols
        )
        csv_path = out / f"contraction_{tag}.csv"
        write_contraction_csv(rows, sigma, csv_path)
        summary = {
            "experiment": "contraction",
            "csv": str(csv_path),
            "max_ratio": max((r.ratio for r in rows), default=0.0),
            "sigma": sigma,
            "trials": trials,
        }
        if not args.no_plots:
            from . import plots

            plots.plot_contraction(rows, sigma, out / f"contraction_{tag}.png")

    elif args.which == "sweep":
        model = cfg.build_model(epsilon)
        if "epsilons" in settings:
            epsilons = [float(e) for e in settings["epsilons"]]
        else:
            fractions = settings.get("epsilon_fractions", [0.125, 0.25, 0.5])
            epsilons = [float(fr) * constants["epsilon_max"] for fr in fractions]
        rows = run_epsilon_sweep(model, params, grid, epsilons, tols)
        csv_path = out / f"sweep_{tag}.csv"
        write_sweep_csv(rows, csv_path)
        summary = {
            "experiment": "sweep",
            "csv": str(csv_path),
            "rows": len(rows),
        }
        if not args.no_plots:
            from . import plots

            plots.plot_sweep(rows, out / f"sweep_{tag}.png")

    else:  # continuity
        nonlin_b_spec = settings.get("nonlinearity_b", dict(cfg.nonlinearity))
        model_a = cfg.build_model(epsilon)
        model_b = cfg.build_model(
            epsilon, nonlinearity=cfg.build_nonlinearity(nonlin_b_spec)
        )
        result = run_continuity(model_a, model_b, params, grid, tols)
        csv_path = out / f"continuity_{tag}.csv"
        write_continuity_csv(result, csv_path)
        summary = {
            "experiment": "continuity",
            "csv": str(csv_path),
            "lhs": result.lhs,
            "rhs": result.rhs,
            "slack": result.slack,
        }
        if not args.no_plots:
            from . import plots

            plots.plot_continuity(result, out / f"continuity_{tag}.png")

    write_manifest(
        out / f"manifest_{tag}.json",
        tag,
        cfg.seed,
        grid,
        threads=args.threads,
        extra={"experiment": args.which},
    )
    _emit(summary)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="logdrift",
        description="Pseudospectral fixed-point solver for a nonlocal stationary "
        "equation with logarithmic diffusion and drift",
    )
    parser.add_argument("--config", required=True, help="YAML run configuration")
    parser.add_argument("--out", default=None, help="override output directory")
    parser.add_argument("--seed", type=int, default=None, help="override RNG seed")
    parser.add_argument("--threads", type=int, default=1,
                        help="thread count recorded in the manifest")
    parser.add_argument("--no-plots", action="store_true",
                        help="skip figure rendering")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("inspect", help="report the contraction constants")
    sub.add_parser("solve", help="run the linear and fixed-point solves")
    exp = sub.add_parser("experiment", help="run a scripted experiment")
    exp.add_argument("which", choices=["contraction", "continuity", "sweep"])
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except (ConfigError, OSError, TypeError, ValueError) as exc:
        return _error(exc, EXIT_VALIDATION)
    try:
        if args.command == "inspect":
            return cmd_inspect(cfg, args)
        if args.command == "solve":
            return cmd_solve(cfg, args)
        return cmd_experiment(cfg, args)
    except AdmissibilityError as exc:
        return _error(exc, EXIT_ADMISSIBILITY)
    except MaxItersExceeded as exc:
        return _error(exc, EXIT_CONVERGENCE)
    except (ImaginaryResidue, ZeroModePresent) as exc:
        return _error(exc, EXIT_INTEGRITY)
    except (ConfigError, LogDriftError) as exc:
        return _error(exc, EXIT_VALIDATION)


if __name__ == "__main__":
    sys.exit(main())

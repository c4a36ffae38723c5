"""Figure rendering for solver and experiment outputs.

Every CSV the CLI emits gets a companion PNG.  Figures are diagnostic, not
authoritative: the delimited files carry the full-precision data.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def plot_solution(u0, u_p, u, path):
    """Overlay of the linear part, the perturbation, and the assembled solution."""
    fig, ax = plt.subplots(figsize=(7, 4))
    x = u.grid.nodes
    ax.plot(x, u0.values.real, label="$u_0$ (linear part)", lw=1.2)
    ax.plot(x, u_p.values.real, label="$u_p$ (perturbation)", lw=1.2)
    ax.plot(x, u.values.real, label="$u = u_0 + u_p$", lw=1.2, ls="--")
    ax.set_xlabel("x")
    ax.set_ylabel("value")
    ax.legend(loc="best", fontsize=9)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_convergence(report, path):
    """Per-step increments against the geometric envelope set by sigma."""
    fig, ax = plt.subplots(figsize=(6, 4))
    inc = np.asarray(report.increments, dtype=float)
    if inc.size:
        steps = np.arange(1, inc.size + 1)
        ax.semilogy(steps, inc, "o-", ms=4, label="increment")
        if report.sigma_theoretical > 0.0:
            env = inc[0] * report.sigma_theoretical ** (steps - 1)
            ax.semilogy(steps, env, "k--", lw=1,
                        label=rf"$\sigma^k$ envelope ($\sigma$={report.sigma_theoretical:.3g})")
    ax.set_xlabel("iteration")
    ax.set_ylabel(r"$\|v^{k+1} - v^k\|_2$")
    ax.legend(loc="best", fontsize=9)
    ax.grid(alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_contraction(rows, sigma, path):
    """Observed ratios of the audit pairs against the theoretical rate."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ratios = [r.ratio for r in rows]
    ax.plot(ratios, ".", ms=5, label="observed ratio")
    ax.axhline(sigma, color="k", ls="--", lw=1, label=rf"$\sigma$ = {sigma:.3g}")
    ax.set_xlabel("pair")
    ax.set_ylabel("ratio")
    ax.set_ylim(bottom=0)
    ax.legend(loc="best", fontsize=9)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(rows, path):
    """Perturbation norm and its linear-in-epsilon bound."""
    fig, ax = plt.subplots(figsize=(6, 4))
    ok = [r for r in rows if r.status == "ok" and r.epsilon > 0.0]
    if ok:
        eps = [r.epsilon for r in ok]
        ax.loglog(eps, [r.up_l2 for r in ok], "o-", ms=5, label=r"$\|u_p\|_2$")
        ax.loglog(eps, [r.bound for r in ok], "k--", lw=1, label="linear bound")
    ax.set_xlabel(r"$\varepsilon$")
    ax.set_ylabel("norm")
    ax.legend(loc="best", fontsize=9)
    ax.grid(alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_continuity(result, path):
    """Both sides of the continuity bound for the nonlinearity pair."""
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.bar(["lhs", "rhs"], [result.lhs, result.rhs], color=["C0", "C1"], width=0.5)
    ax.set_ylabel(r"$L^2$ distance / bound")
    ax.set_title(f"slack = {result.slack:.3e}", fontsize=10)
    ax.grid(alpha=0.3, axis="y")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

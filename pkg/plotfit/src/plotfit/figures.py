"""Figure emission mirroring the benchmark report plots."""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .bench_io import load_stats
from .fitting import fit_error_curve, fit_time_curve

FIGURE_NAMES = (
    "fig1a_error.png",
    "fig1b_variance.png",
    "fig2_error_fit.png",
    "fig3_time_fit.png",
)
SUMMARY_NAME = "fit_summary.json"


def emit_figures(bench_csv_path, out_dir) -> list[Path]:
    """Write the four report figures plus a fit summary; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stats = load_stats(bench_csv_path)
    n = np.array([s.n for s in stats], dtype=float)
    mu = np.array([s.mu for s in stats])
    sigma = np.array([s.sigma for s in stats])
    error_fit = fit_error_curve(bench_csv_path)
    time_fit = fit_time_curve(bench_csv_path)
    dense = np.linspace(n.min(), n.max(), 400)
    paths = []

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(n, mu, "o-", color="tab:blue")
    ax.set_xlabel("matrix size n")
    ax.set_ylabel("mean error")
    ax.set_title("Approximation error vs size")
    paths.append(_save(fig, out / FIGURE_NAMES[0]))

    fig, ax = plt.subplots(figsize=(7, 4.5))
    positive = sigma > 0
    ax.semilogy(n[positive], sigma[positive], "o-", color="tab:orange")
    ax.set_xlabel("matrix size n")
    ax.set_ylabel("variance over inits")
    ax.set_title("Error variance vs size (log scale)")
    paths.append(_save(fig, out / FIGURE_NAMES[1]))

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(n, mu, "o", color="tab:blue", label="measured")
    label = (f"{error_fit.c:.3g} log^{error_fit.alpha:.3g}(n) / n^{error_fit.beta:.3g}")
    ax.plot(dense, error_fit.predict(dense), "-", color="tab:red", label=label)
    ax.set_xlabel("matrix size n")
    ax.set_ylabel("mean error")
    ax.set_title("Error with fitted curve")
    ax.legend()
    paths.append(_save(fig, out / FIGURE_NAMES[2]))

    usable = [(s.n, s.mean_time) for s in stats if s.mean_time is not None]
    tn = np.array([u[0] for u in usable], dtype=float)
    tt = np.array([u[1] for u in usable])
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(tn, tt, "o", color="tab:blue", label="measured")
    ax.plot(dense, time_fit.predict(dense), "-", color="tab:red",
            label=f"{time_fit.c:.3g} n^{time_fit.alpha:.3g}")
    ax.set_xlabel("matrix size n")
    ax.set_ylabel("mean wall time [s]")
    ax.set_title("Run time with fitted curve")
    ax.legend()
    paths.append(_save(fig, out / FIGURE_NAMES[3]))

    summary = {
        "error_fit": asdict(error_fit),
        "time_fit": asdict(time_fit),
    }
    summary_path = out / SUMMARY_NAME
    summary_path.write_text(json.dumps(summary, indent=2) + "\n", encoding="ascii")
    paths.append(summary_path)
    return paths


def _save(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path

"""Parametric fits of the benchmark curves.

The error curve is fitted as c * log(n)^alpha / n^beta on the aggregated
means with raw residuals; the timing curve as c * n^alpha by linear
least squares in log-log space.  Natural logarithms throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import least_squares

from .bench_io import load_stats

MODEL_ERROR = "log_power_over_power"
MODEL_TIME = "power_law"

# Fixed starting point of the nonlinear error-curve fit.
ERROR_FIT_X0 = (1.0, 0.6, 0.5)
MIN_SIZES = 5


@dataclass
class FitResult:
    c: float
    alpha: float
    beta: float
    residual_norm: float
    model: str

    def predict(self, n):
        n = np.asarray(n, dtype=float)
        if self.model == MODEL_ERROR:
            return self.c * np.log(n) ** self.alpha / n**self.beta
        return self.c * n**self.alpha


def error_model(params, n):
    c, alpha, beta = params
    return c * np.log(n) ** alpha / n**beta


def fit_error_curve(bench_csv_path) -> FitResult:
    """Nonlinear least squares of mu_n against c * log(n)^alpha / n^beta."""
    stats = load_stats(bench_csv_path)
    n = np.array([s.n for s in stats], dtype=float)
    mu = np.array([s.mu for s in stats])
    if len(n) < MIN_SIZES:
        raise ValueError(f"need at least {MIN_SIZES} distinct sizes, got {len(n)}")

    def residuals(params):
        return error_model(params, n) - mu

    sol = least_squares(
        residuals, ERROR_FIT_X0, bounds=([1e-12, -np.inf, -np.inf], np.inf),
        xtol=1e-15, ftol=1e-15, gtol=1e-15, x_scale="jac", max_nfev=20_000,
    )
    c, alpha, beta = sol.x
    return FitResult(c=float(c), alpha=float(alpha), beta=float(beta),
                     residual_norm=float(np.linalg.norm(sol.fun)), model=MODEL_ERROR)


def fit_time_curve(bench_csv_path) -> FitResult:
    """Log-log linear least squares of mean wall time against c * n^alpha."""
    stats = load_stats(bench_csv_path)
    usable = [(s.n, s.mean_time) for s in stats if s.mean_time is not None]
    if len(usable) < MIN_SIZES:
        raise ValueError(
            f"need at least {MIN_SIZES} distinct sizes with positive times, got {len(usable)}"
        )
    n = np.array([u[0] for u in usable], dtype=float)
    t = np.array([u[1] for u in usable])
    slope, intercept = np.polyfit(np.log(n), np.log(t), 1)
    resid = np.log(t) - (intercept + slope * np.log(n))
    return FitResult(c=float(np.exp(intercept)), alpha=float(slope), beta=0.0,
                     residual_norm=float(np.linalg.norm(resid)), model=MODEL_TIME)

"""Offline analysis of Chebyshev low-rank benchmark CSVs."""

__version__ = "0.1.0"

from .bench_io import SizeStats, aggregate_records, load_stats, read_records
from .figures import FIGURE_NAMES, SUMMARY_NAME, emit_figures
from .fitting import FitResult, fit_error_curve, fit_time_curve

__all__ = [
    "__version__",
    "FIGURE_NAMES",
    "FitResult",
    "SUMMARY_NAME",
    "SizeStats",
    "aggregate_records",
    "emit_figures",
    "fit_error_curve",
    "fit_time_curve",
    "load_stats",
    "read_records",
]

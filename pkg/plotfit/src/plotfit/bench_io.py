"""Reader and aggregator for benchmark CSV files.

The file layout is the bench tool's export format: header
``n,r,matrix_seed,init_seed,error,wall_time,outer_iters``, one run per
line, nan errors marking failed runs.  Aggregation mirrors the
experiment protocol: per size, errors are averaged per matrix over its
inits first, then across matrices; sigma is the mean of the per-matrix
population variances.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass

import numpy as np

EXPECTED_HEADER = ["n", "r", "matrix_seed", "init_seed", "error", "wall_time", "outer_iters"]


@dataclass
class SizeStats:
    n: int
    mu: float
    sigma: float
    mean_time: float | None


def read_records(path) -> list[dict]:
    with open(path, "r", encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != EXPECTED_HEADER:
            raise ValueError(f"{path}: unexpected bench CSV header {header}")
        records = []
        for row in reader:
            if not row:
                continue
            records.append({
                "n": int(row[0]),
                "r": int(row[1]),
                "matrix_seed": int(row[2]),
                "init_seed": int(row[3]),
                "error": float(row[4]),
                "wall_time": float(row[5]),
                "outer_iters": int(row[6]),
            })
    if not records:
        raise ValueError(f"{path}: no records")
    return records


def aggregate_records(records: list[dict]) -> list[SizeStats]:
    by_size: dict[int, dict[int, list[float]]] = {}
    times: dict[int, list[float]] = {}
    for rec in records:
        per_matrix = by_size.setdefault(rec["n"], {})
        values = per_matrix.setdefault(rec["matrix_seed"], [])
        if not math.isnan(rec["error"]):
            values.append(rec["error"])
        times.setdefault(rec["n"], []).append(rec["wall_time"])
    stats: list[SizeStats] = []
    for n in sorted(by_size):
        means, variances = [], []
        for values in by_size[n].values():
            if not values:
                continue
            arr = np.array(values)
            means.append(float(arr.mean()))
            variances.append(float(arr.var()))
        if not means:
            warnings.warn(f"size {n}: no valid runs, dropped")
            continue
        usable_times = [t for t in times[n] if t > 0.0 and math.isfinite(t)]
        if len(usable_times) < len(times[n]):
            warnings.warn(f"size {n}: {len(times[n]) - len(usable_times)} nonpositive wall times excluded")
        mean_time = float(np.mean(usable_times)) if usable_times else None
        stats.append(SizeStats(n=n, mu=float(np.mean(means)),
                               sigma=float(np.mean(variances)), mean_time=mean_time))
    if not stats:
        raise ValueError("no usable sizes after aggregation")
    return stats


def load_stats(path) -> list[SizeStats]:
    return aggregate_records(read_records(path))

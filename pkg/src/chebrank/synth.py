"""Synthetic test matrices with prescribed singular spectra, and the
benchmark harness that reproduces the flat-spectrum experiment at desk
scale.

Seeding layout (see :mod:`chebrank.seeding` for the mixer):

    matrix_seed = hash64(seed, n, matrix_index)
    init_seed   = hash64(matrix_seed, init_index)

A matrix draw uses sub-seeds hash64(matrix_seed, 1..3) for the two
orthogonal factors and the spectrum; an alternating run draws V0 from
``default_rng(init_seed)``.  Records are therefore reproducible cell by
cell from the top-level seed alone.
"""

from __future__ import annotations

import csv
import math
import os
import tempfile
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Union

import numpy as np

from .alternating import minimize_from_seed
from .linalg import qr_orthonormal
from .seeding import hash64

__all__ = [
    "UniformInterval",
    "Explicit",
    "Identity",
    "SpectrumSpec",
    "BenchRecord",
    "SizeAggregate",
    "random_orthogonal",
    "synth_matrix",
    "run_bench",
    "aggregate",
    "write_bench_csv",
    "read_bench_csv",
]

BENCH_CSV_HEADER = ["n", "r", "matrix_seed", "init_seed", "error", "wall_time", "outer_iters"]


@dataclass(frozen=True)
class UniformInterval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"need lo <= hi, got [{self.lo}, {self.hi}]")


@dataclass(frozen=True)
class Explicit:
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if any(v < 0.0 for v in self.values):
            raise ValueError("explicit singular values must be nonnegative")


@dataclass(frozen=True)
class Identity:
    pass


SpectrumKind = Union[UniformInterval, Explicit, Identity]


@dataclass(frozen=True)
class SpectrumSpec:
    kind: SpectrumKind
    seed: int = 0


@dataclass
class BenchRecord:
    """One (matrix, init) benchmark cell."""

    n: int
    r: int
    matrix_seed: int
    init_seed: int
    error: float
    wall_time: float
    outer_iters: int


@dataclass
class SizeAggregate:
    """Per-size mean of per-matrix means and of per-matrix variances."""

    n: int
    mu: float
    sigma: float
    runs: int
    failed: int


def random_orthogonal(n: int, seed: int) -> np.ndarray:
    """Orthonormal factor of a seeded standard-normal n x n draw."""
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    return qr_orthonormal(rng.standard_normal((n, n)))


def _spectrum_values(spec: SpectrumSpec, count: int) -> np.ndarray:
    kind = spec.kind
    if isinstance(kind, UniformInterval):
        rng = np.random.default_rng(hash64(spec.seed, 3))
        return rng.uniform(kind.lo, kind.hi, count)
    if isinstance(kind, Explicit):
        if len(kind.values) != count:
            raise ValueError(f"expected {count} singular values, got {len(kind.values)}")
        return np.array(kind.values)
    if isinstance(kind, Identity):
        return np.ones(count)
    raise TypeError(f"unknown spectrum kind: {kind!r}")


def synth_matrix(m: int, n: int, spec: SpectrumSpec) -> np.ndarray:
    """Q1 diag(sigma) Q2^T with seeded orthogonal factors and spectrum."""
    if m < 1 or n < 1:
        raise ValueError(f"matrix shape must be positive, got {m} x {n}")
    k = min(m, n)
    sigma = _spectrum_values(spec, k)
    q1 = random_orthogonal(m, hash64(spec.seed, 1))
    q2 = random_orthogonal(n, hash64(spec.seed, 2))
    return (q1[:, :k] * sigma) @ q2[:, :k].T


def _rank_for(rank_rule, n: int) -> int:
    if rank_rule == "sqrt":
        return max(1, round(math.sqrt(n)))
    r = int(rank_rule)
    if r < 1:
        raise ValueError(f"rank must be >= 1, got {r}")
    return r


def run_bench(sizes, rank_rule="sqrt", matrices_per_size: int = 3, inits: int = 5,
              seed: int = 0, *, max_outer: int = 200, rel_tol: float = 1e-8,
              threads: int = 1, timing: str = "wall") -> list[BenchRecord]:
    """Run the benchmark grid and return one record per (matrix, init).

    Failures never disappear: a failed run is recorded with error = nan.
    With ``timing="none"`` all wall times are written as 0.0, which makes
    the full record list a pure function of the arguments.
    """
    sizes = [int(n) for n in sizes]
    if not sizes:
        raise ValueError("no sizes given")
    if any(n < 10 for n in sizes):
        raise ValueError(f"sizes must be >= 10, got {min(sizes)}")
    if matrices_per_size < 1 or inits < 1:
        raise ValueError("matrices_per_size and inits must be >= 1")
    if timing not in ("wall", "none"):
        raise ValueError(f"timing must be 'wall' or 'none', got {timing!r}")

    cells = []
    for n in sizes:
        r = _rank_for(rank_rule, n)
        for mi in range(matrices_per_size):
            matrix_seed = hash64(seed, n, mi)
            for ii in range(inits):
                cells.append((n, r, matrix_seed, hash64(matrix_seed, ii)))

    matrices: dict[int, np.ndarray] = {}

    def matrix_for(n: int, matrix_seed: int) -> np.ndarray:
        if matrix_seed not in matrices:
            spec = SpectrumSpec(UniformInterval(1.0, 2.0), seed=matrix_seed)
            matrices[matrix_seed] = synth_matrix(n, n, spec)
        return matrices[matrix_seed]

    # materialize matrices up front so concurrent cells share them read-only
    for n, _, matrix_seed, _ in cells:
        matrix_for(n, matrix_seed)

    def run_cell(cell) -> BenchRecord:
        n, r, matrix_seed, init_seed = cell
        a = matrices[matrix_seed]
        start = time.perf_counter()
        try:
            res = minimize_from_seed(a, r, init_seed, max_outer=max_outer, rel_tol=rel_tol)
            error = res.error if res.termination != "degenerate" else float("nan")
            outer = res.outer_iters
        except Exception:
            error = float("nan")
            outer = 0
        elapsed = time.perf_counter() - start if timing == "wall" else 0.0
        return BenchRecord(n=n, r=r, matrix_seed=matrix_seed, init_seed=init_seed,
                           error=error, wall_time=elapsed, outer_iters=outer)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run_cell, cells))
    return [run_cell(cell) for cell in cells]


def aggregate(records: list[BenchRecord]) -> list[SizeAggregate]:
    """Per-size mu (mean of per-matrix means over inits) and sigma (mean
    of per-matrix population variances over inits).

    nan records are excluded from the statistics; a size with no valid
    record is dropped with a warning.
    """
    if not records:
        raise ValueError("no records to aggregate")
    by_size: dict[int, dict[int, list[float]]] = {}
    failed: dict[int, int] = {}
    total: dict[int, int] = {}
    for rec in records:
        per_matrix = by_size.setdefault(rec.n, {})
        values = per_matrix.setdefault(rec.matrix_seed, [])
        total[rec.n] = total.get(rec.n, 0) + 1
        if math.isnan(rec.error):
            failed[rec.n] = failed.get(rec.n, 0) + 1
        else:
            values.append(rec.error)
    out: list[SizeAggregate] = []
    for n in sorted(by_size):
        means = []
        variances = []
        for values in by_size[n].values():
            if not values:
                continue
            arr = np.array(values)
            means.append(float(arr.mean()))
            variances.append(float(arr.var()))
        if not means:
            warnings.warn(f"size {n}: every run failed, size excluded from aggregation")
            continue
        out.append(SizeAggregate(
            n=n, mu=float(np.mean(means)), sigma=float(np.mean(variances)),
            runs=total[n], failed=failed.get(n, 0),
        ))
    return out


def write_bench_csv(path, records: list[BenchRecord]) -> None:
    """Write records atomically in the bench CSV layout (nan spelled 'nan')."""
    lines = [",".join(BENCH_CSV_HEADER)]
    for rec in records:
        lines.append(
            f"{rec.n},{rec.r},{rec.matrix_seed},{rec.init_seed},"
            f"{rec.error:.17g},{rec.wall_time:.17g},{rec.outer_iters}"
        )
    text = "\n".join(lines) + "\n"
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o644)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_bench_csv(path) -> list[BenchRecord]:
    with open(path, "r", encoding="ascii", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != BENCH_CSV_HEADER:
            raise ValueError(f"{path}: unexpected bench CSV header {header}")
        records = []
        for row in reader:
            if not row:
                continue
            records.append(BenchRecord(
                n=int(row[0]), r=int(row[1]), matrix_seed=int(row[2]),
                init_seed=int(row[3]), error=float(row[4]),
                wall_time=float(row[5]), outer_iters=int(row[6]),
            ))
    return records

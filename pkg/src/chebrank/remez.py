"""Generalized exchange algorithm for discrete Chebyshev approximation.

``remez_solve`` minimizes ||a - V u||_inf over u for a tall system V by
iterating over active sets of r+1 rows; ``fixed_factor_solve`` applies it
row-by-row to approximate a whole matrix against a fixed factor.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DegenerateSystem, NonTermination
from .linalg import as_matrix, as_vector

__all__ = ["RemezOutcome", "FixedFactorResult", "remez_solve", "fixed_factor_solve"]


@dataclass
class RemezOutcome:
    """Result of one exchange run.

    ``trace`` holds one (active_set, deviation) pair per subproblem
    solve, terminating step included, so ``iterations == len(trace)`` and
    the deviations increase strictly along it.
    """

    u: np.ndarray
    mu: float
    active_set: list[int]
    iterations: int
    trace: list[tuple[tuple[int, ...], float]] = field(repr=False)


@dataclass
class FixedFactorResult:
    """Row-wise best approximation of A against a fixed factor V."""

    U: np.ndarray
    mu: float
    per_row: list[RemezOutcome]


def default_init_set(a: np.ndarray, r: int) -> np.ndarray:
    """Indices of the r+1 largest |a_i|, ties resolved to lower index."""
    order = np.argsort(-np.abs(a), kind="stable")
    return np.sort(order[: r + 1]).astype(np.int64)


def remez_solve(v, a, *, init_set=None, max_iters: int | None = None,
                tie_eps: float = 0.0) -> RemezOutcome:
    """Solve min_u ||a - V u||_inf by single-row exchange.

    Each step solves the equal-deviation problem on the current r+1 rows,
    finds the worst full-system residual row j (lowest index on ties,
    widened by ``tie_eps``), stops if j is active or no worse than the
    active deviation, and otherwise swaps in j for whichever active row
    yields the largest candidate deviation.

    ``max_iters`` bounds the number of subproblem solves (default 50*n);
    exceeding it raises NonTermination, which exact arithmetic rules out.
    """
    vm = as_matrix(v, "system matrix")
    av = as_vector(a, "right-hand side")
    n, r = vm.shape
    if av.shape[0] != n:
        raise ValueError(f"right-hand side length {av.shape[0]} != row count {n}")
    if n < r + 1:
        raise ValueError(f"need at least r+1 = {r + 1} rows, got {n}")
    if max_iters is None:
        max_iters = 50 * n
    if max_iters < 1:
        raise ValueError("max_iters must be positive")
    if init_set is None:
        init = default_init_set(av, r)
    else:
        init = np.asarray(sorted(int(i) for i in init_set), dtype=np.int64)
        if init.shape[0] != r + 1 or np.unique(init).shape[0] != r + 1:
            raise ValueError(f"init_set must contain r+1 = {r + 1} distinct indices")
        if init[0] < 0 or init[-1] >= n:
            raise ValueError("init_set index out of range")
    status, u, mu, active, iters, trace_dev, trace_sets = _kernels.remez_kernel(
        vm, av, init, max_iters, tie_eps
    )
    if status == _kernels.NO_TERMINATION:
        raise NonTermination(f"exchange did not terminate within {max_iters} iterations")
    if status == _kernels.DEGENERATE_CANDIDATES:
        raise DegenerateSystem("all r+1 replacement subsystems are degenerate")
    if status != _kernels.OK:
        raise DegenerateSystem("initial active set is not a Chebyshev subsystem")
    trace = [
        (tuple(int(i) for i in trace_sets[t]), float(trace_dev[t]))
        for t in range(iters)
    ]
    return RemezOutcome(
        u=u,
        mu=float(mu),
        active_set=[int(i) for i in active],
        iterations=int(iters),
        trace=trace,
    )


def _solve_row(vm, row_values, i, max_iters, tie_eps, init_set):
    try:
        if init_set is not None:
            try:
                return remez_solve(vm, row_values, init_set=init_set,
                                   max_iters=max_iters, tie_eps=tie_eps)
            except DegenerateSystem:
                # stale warm start against a changed factor; restart cold
                pass
        return remez_solve(vm, row_values, max_iters=max_iters, tie_eps=tie_eps)
    except DegenerateSystem as exc:
        raise DegenerateSystem(f"row {i}: {exc}") from exc
    except NonTermination as exc:
        raise NonTermination(f"row {i}: {exc}") from exc


def fixed_factor_solve(a, v, *, max_iters: int | None = None, tie_eps: float = 0.0,
                       threads: int = 1, init_sets=None) -> FixedFactorResult:
    """Best approximation of every row of A against the fixed factor V.

    Row subproblems are independent; with ``threads`` > 1 they run on a
    thread pool and are reassembled in row order, so the result is
    identical to the sequential one.  ``init_sets`` optionally warm-starts
    row i's exchange from init_sets[i] (falling back to the default start
    if that set is degenerate for this factor).
    """
    am = as_matrix(a, "matrix")
    vm = as_matrix(v, "factor")
    m, n = am.shape
    if vm.shape[0] != n:
        raise ValueError(f"factor has {vm.shape[0]} rows, expected {n}")
    if init_sets is not None and len(init_sets) != m:
        raise ValueError(f"init_sets must have one entry per row, got {len(init_sets)}")
    rows = [np.ascontiguousarray(am[i]) for i in range(m)]

    def solve(i):
        init = None if init_sets is None else init_sets[i]
        return _solve_row(vm, rows[i], i, max_iters, tie_eps, init)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_row = list(pool.map(solve, range(m)))
    else:
        per_row = [solve(i) for i in range(m)]
    u = np.vstack([out.u for out in per_row])
    mu = max(out.mu for out in per_row)
    return FixedFactorResult(U=u, mu=float(mu), per_row=per_row)

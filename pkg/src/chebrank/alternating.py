"""Alternating minimization of ||A - U V^T||_C over both factors.

Each half-sweep fixes one factor and solves the row-separable Chebyshev
problem for the other, so the error is non-increasing.  Multiple random
initializations are run from deterministic per-init seeds and the best
final error wins.  ``verify_local_optimality`` applies the sign/alternance
certificate of the row and column subproblems to a candidate solution.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .equidistant import equidistant_by_signs
from .errors import DegenerateSystem
from .linalg import as_matrix
from .remez import fixed_factor_solve
from .seeding import hash64

__all__ = [
    "AlternatingResult",
    "OptimalityReport",
    "PositionCertificate",
    "alternating_minimize",
    "alternating_runs",
    "minimize_from_seed",
    "verify_local_optimality",
]

TERMINATION_CONVERGED = "converged"
TERMINATION_MAX_ITERS = "max_iters"
TERMINATION_DEGENERATE = "degenerate"

# A degenerate draw is redrawn from the same generator at most this many
# times before the init is abandoned.
MAX_REDRAWS = 3


@dataclass
class AlternatingResult:
    """Factors and Chebyshev error history of one (or the best) run.

    ``detail`` carries the failure message of a degenerate run (which row
    hit a singular subsystem) and is empty otherwise.
    """

    U: np.ndarray
    V: np.ndarray
    error: float
    history: list[float]
    outer_iters: int
    termination: str
    init_seed: int
    detail: str = ""


def _stalled(history: list[float], rel_tol: float) -> bool:
    cur = history[-1]
    if cur == 0.0:
        return True
    if len(history) < 2:
        return False
    prev = history[-2]
    return (prev - cur) / max(prev, 1e-300) < rel_tol


def minimize_from_seed(a, rank: int, init_seed: int, *, max_outer: int = 200,
                       rel_tol: float = 1e-8, threads: int = 1) -> AlternatingResult:
    """One alternating run started from V0 ~ N(0,1) drawn with init_seed.

    A half-sweep that hits a degenerate subsystem triggers a fresh V0
    from the same generator (at most MAX_REDRAWS times); if every redraw
    degenerates too, the run is reported with infinite error rather than
    raised, so callers can fall back to other inits.
    """
    am = as_matrix(a, "matrix")
    m, n = am.shape
    if rank < 1:
        raise ValueError(f"rank must be >= 1, got {rank}")
    if min(m, n) < rank + 1:
        raise ValueError(f"need min(m, n) >= rank+1 = {rank + 1}, got {min(m, n)}")
    if max_outer < 1:
        raise ValueError("max_outer must be positive")
    at = np.ascontiguousarray(am.T)
    rng = np.random.default_rng(init_seed)
    last_failure = ""
    for _ in range(1 + MAX_REDRAWS):
        vf = rng.standard_normal((n, rank))
        uf = np.zeros((m, rank))
        history: list[float] = []
        u_sets = None
        v_sets = None
        try:
            termination = TERMINATION_MAX_ITERS
            outer = 0
            while outer < max_outer:
                outer += 1
                res_u = fixed_factor_solve(am, vf, threads=threads, init_sets=u_sets)
                uf = res_u.U
                u_sets = [out.active_set for out in res_u.per_row]
                history.append(res_u.mu)
                if _stalled(history, rel_tol):
                    termination = TERMINATION_CONVERGED
                    break
                res_v = fixed_factor_solve(at, uf, threads=threads, init_sets=v_sets)
                vf = res_v.U
                v_sets = [out.active_set for out in res_v.per_row]
                history.append(res_v.mu)
                if _stalled(history, rel_tol):
                    termination = TERMINATION_CONVERGED
                    break
            return AlternatingResult(
                U=uf, V=vf, error=history[-1], history=history,
                outer_iters=outer, termination=termination, init_seed=init_seed,
            )
        except DegenerateSystem as exc:
            last_failure = str(exc)
            continue
    return AlternatingResult(
        U=np.zeros((m, rank)), V=np.zeros((n, rank)), error=float("inf"),
        history=[], outer_iters=0, termination=TERMINATION_DEGENERATE,
        init_seed=init_seed, detail=last_failure,
    )


def alternating_runs(a, rank: int, *, inits: int = 1, seed: int = 0,
                     max_outer: int = 200, rel_tol: float = 1e-8,
                     threads: int = 1) -> list[AlternatingResult]:
    """All per-init results, init i seeded with hash64(seed, i)."""
    if inits < 1:
        raise ValueError("inits must be >= 1")
    return [
        minimize_from_seed(a, rank, hash64(seed, i), max_outer=max_outer,
                           rel_tol=rel_tol, threads=threads)
        for i in range(inits)
    ]


def alternating_minimize(a, rank: int, *, inits: int = 1, seed: int = 0,
                         max_outer: int = 200, rel_tol: float = 1e-8,
                         threads: int = 1) -> AlternatingResult:
    """Best result over ``inits`` random initializations (lowest index wins ties)."""
    runs = alternating_runs(a, rank, inits=inits, seed=seed, max_outer=max_outer,
                            rel_tol=rel_tol, threads=threads)
    best = min(runs, key=lambda res: res.error)
    if not np.isfinite(best.error):
        details = "; ".join(res.detail for res in runs if res.detail)
        raise DegenerateSystem(details or "every initialization hit a degenerate subsystem")
    return best


@dataclass
class PositionCertificate:
    """Certificate outcome for one row or column containing a maximizer.

    ``alternance`` is None when the check is indeterminate (maximizer
    count differs from r+1 or the subsystem is degenerate).
    """

    index: int
    count: int
    alternance: bool | None


@dataclass
class OptimalityReport:
    """Sign/alternance certificates for all extremal rows and columns."""

    max_residual: float
    per_row: list[PositionCertificate]
    per_col: list[PositionCertificate]
    locally_optimal_hint: bool


def _certify(factor: np.ndarray, values: np.ndarray, resid: np.ndarray) -> bool | None:
    """Check one (r+1)-position subsystem: sign pattern plus alternance."""
    try:
        sol = equidistant_by_signs(factor, values)
    except DegenerateSystem:
        return None
    actual = np.where(resid < 0.0, -1.0, 1.0)
    pattern_ok = bool(np.all(actual == sol.signs) or np.all(actual == -sol.signs))
    rp1 = factor.shape[0]
    keep = np.arange(rp1)
    dets = np.array([
        _kernels.det_kernel(np.ascontiguousarray(factor[keep != j, :])) for j in range(rp1)
    ])
    if np.any(dets == 0.0):
        return None
    seq = resid * dets
    alternating = bool(np.all(seq[:-1] * seq[1:] < 0.0))
    return pattern_ok and alternating


def verify_local_optimality(a, u, v) -> OptimalityReport:
    """Necessary-condition check on a candidate factorization.

    Every row and column holding an entry of maximal |residual| must, if
    it has exactly r+1 maximizing positions, satisfy the equal-deviation
    sign certificate there with alternating residual-times-cofactor
    signs.  Rows or columns with a different maximizer count are reported
    indeterminate and do not fail the hint.
    """
    am = as_matrix(a, "matrix")
    um = as_matrix(u, "left factor")
    vm = as_matrix(v, "right factor")
    m, n = am.shape
    if um.shape[0] != m or vm.shape[0] != n or um.shape[1] != vm.shape[1]:
        raise ValueError(
            f"factor shapes {um.shape} x {vm.shape} do not match matrix {am.shape}"
        )
    r = um.shape[1]
    resid = am - um @ vm.T
    rho = float(np.max(np.abs(resid)))
    if rho == 0.0:
        return OptimalityReport(max_residual=0.0, per_row=[], per_col=[],
                                locally_optimal_hint=True)
    mask = np.abs(resid) >= rho * (1.0 - 1e-9)
    per_row: list[PositionCertificate] = []
    for i in np.nonzero(mask.any(axis=1))[0]:
        positions = np.nonzero(mask[i])[0]
        count = positions.shape[0]
        flag = None
        if count == r + 1:
            flag = _certify(np.ascontiguousarray(vm[positions, :]),
                            np.ascontiguousarray(am[i, positions]),
                            np.ascontiguousarray(resid[i, positions]))
        per_row.append(PositionCertificate(index=int(i), count=int(count), alternance=flag))
    per_col: list[PositionCertificate] = []
    for j in np.nonzero(mask.any(axis=0))[0]:
        positions = np.nonzero(mask[:, j])[0]
        count = positions.shape[0]
        flag = None
        if count == r + 1:
            flag = _certify(np.ascontiguousarray(um[positions, :]),
                            np.ascontiguousarray(am[positions, j]),
                            np.ascontiguousarray(resid[positions, j]))
        per_col.append(PositionCertificate(index=int(j), count=int(count), alternance=flag))
    checked = [c.alternance for c in per_row + per_col if c.alternance is not None]
    hint = all(checked) if checked else True
    return OptimalityReport(max_residual=rho, per_row=per_row, per_col=per_col,
                            locally_optimal_hint=hint)

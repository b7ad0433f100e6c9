"""Brute-force references: combinatorial optimum, Chebyshev-system check,
and a grid minimizer for tiny coefficient dimensions.

These exist to be obviously correct, not fast; sizes are guarded.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from . import _kernels
from .errors import DegenerateSystem
from .linalg import as_matrix, as_vector

__all__ = ["SubsetScore", "combinatorial_mu", "is_chebyshev_system", "grid_min"]

SUBSET_GUARD = 10**6


@dataclass
class SubsetScore:
    """Score of one (r+1)-row subset in the combinatorial formula."""

    indices: tuple[int, ...]
    numerator: float
    denominator: float

    @property
    def value(self) -> float | None:
        if self.denominator == 0.0:
            return None
        return self.numerator / self.denominator


def score_subset(vm: np.ndarray, av: np.ndarray, subset) -> SubsetScore:
    """|det [V(J) a(J)]| over the sum of delete-one-row |det|s."""
    idx = list(subset)
    rp1 = len(idx)
    sub = vm[idx, :]
    aug = np.empty((rp1, rp1))
    aug[:, : rp1 - 1] = sub
    aug[:, rp1 - 1] = av[idx]
    numerator = abs(_kernels.det_kernel(aug))
    keep = np.arange(rp1)
    denominator = 0.0
    for k in range(rp1):
        denominator += abs(_kernels.det_kernel(np.ascontiguousarray(sub[keep != k, :])))
    return SubsetScore(indices=tuple(idx), numerator=numerator, denominator=denominator)


def combinatorial_mu(v, a) -> tuple[float, tuple[int, ...]]:
    """Exhaustive evaluation of the best-approximation error.

    Maximizes |det [V(J) a(J)]| / sum_k |det V(J) minus row k| over all
    (r+1)-row subsets J, skipping subsets whose denominator vanishes.
    Returns the maximum and the first (lexicographically lowest) subset
    attaining it.
    """
    vm = as_matrix(v, "system matrix")
    av = as_vector(a, "right-hand side")
    n, r = vm.shape
    if av.shape[0] != n:
        raise ValueError(f"right-hand side length {av.shape[0]} != row count {n}")
    if n < r + 1:
        raise ValueError(f"need at least r+1 = {r + 1} rows, got {n}")
    total = comb(n, r + 1)
    if total > SUBSET_GUARD:
        raise ValueError(f"C({n},{r + 1}) = {total} exceeds the oracle guard {SUBSET_GUARD}")
    best = -1.0
    best_subset: tuple[int, ...] | None = None
    for subset in combinations(range(n), r + 1):
        score = score_subset(vm, av, subset)
        value = score.value
        if value is None:
            continue
        if value > best:
            best = value
            best_subset = score.indices
    if best_subset is None:
        raise DegenerateSystem("every (r+1)-row subset has a vanishing denominator")
    return best, best_subset


def is_chebyshev_system(v) -> tuple[bool, tuple[int, ...] | None]:
    """Exhaustively test that every r x r row submatrix is nonsingular.

    A subset fails when |det| <= 1e-12 * scale with scale the product of
    the subset's row max-magnitudes (floored at 1.0).  Returns the first
    failing subset as witness.
    """
    vm = as_matrix(v, "system matrix")
    n, r = vm.shape
    if n < r:
        raise ValueError(f"need at least r = {r} rows, got {n}")
    total = comb(n, r)
    if total > SUBSET_GUARD:
        raise ValueError(f"C({n},{r}) = {total} exceeds the oracle guard {SUBSET_GUARD}")
    row_scale = np.max(np.abs(vm), axis=1)
    for subset in combinations(range(n), r):
        idx = list(subset)
        scale = max(float(np.prod(row_scale[idx])), 1.0)
        det = _kernels.det_kernel(np.ascontiguousarray(vm[idx, :]))
        if abs(det) <= 1e-12 * scale:
            return False, tuple(idx)
    return True, None


def grid_min(v, a, box_halfwidth: float = 10.0, levels: int = 6) -> float:
    """Nested-grid minimizer of max_j |a_j - (v^j, u)| for r <= 2.

    Each round lays a 41-point-per-axis grid on a box centered at the
    incumbent, then shrinks the box tenfold.  The returned value is an
    evaluation of the objective, hence an upper bound on the true
    minimum.
    """
    vm = as_matrix(v, "system matrix")
    av = as_vector(a, "right-hand side")
    n, r = vm.shape
    if r > 2:
        raise ValueError(f"grid_min supports r <= 2, got r = {r}")
    if av.shape[0] != n:
        raise ValueError(f"right-hand side length {av.shape[0]} != row count {n}")
    center = np.zeros(r)
    best = float(np.max(np.abs(av - vm @ center)))
    half = float(box_halfwidth)
    for _ in range(levels):
        axes = [np.linspace(c - half, c + half, 41) for c in center]
        if r == 1:
            points = axes[0][:, None]
        else:
            g0, g1 = np.meshgrid(axes[0], axes[1], indexing="ij")
            points = np.column_stack([g0.ravel(), g1.ravel()])
        values = np.max(np.abs(av[None, :] - points @ vm.T), axis=1)
        k = int(np.argmin(values))
        if values[k] < best:
            best = float(values[k])
            center = points[k]
        half /= 10.0
    return best

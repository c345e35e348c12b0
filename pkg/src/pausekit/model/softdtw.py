"""Soft dynamic time warping with an exact analytic gradient.

The forward recursion replaces the hard minimum over alignment
predecessors with a smoothed soft minimum controlled by gamma; the
backward recursion propagates exact derivatives, so the gradient with
respect to the cost matrix is the expected visit mass of each cell under
the induced Gibbs distribution over monotone paths (right, down,
diagonal steps), not a finite-difference estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import EmptyListError, EmptyMatrixError, NonFiniteCostError


def soft_min(values: Sequence[float], gamma: float) -> float:
    """Smoothed minimum: -gamma * log(sum(exp(-v / gamma))).

    At gamma 0 this is the plain minimum; for gamma > 0 it lower-bounds
    the minimum and is computed with a shift by the minimum so the
    exponentials never overflow.

    Raises:
        EmptyListError: no values.
        ValueError: negative gamma.
    """
    if len(values) == 0:
        raise EmptyListError("soft_min of no values")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    lo = min(values)
    if gamma == 0:
        return lo
    acc = 0.0
    for v in values:
        acc += math.exp(-(v - lo) / gamma)
    return lo - gamma * math.log(acc)


@dataclass(frozen=True, slots=True)
class SoftDtwResult:
    """Alignment value and d(value)/d(cost), same shape as the cost matrix.

    Gradient entries lie in [0, 1]; at gamma 0 the gradient is the 0/1
    indicator of one optimal path.
    """

    value: float
    grad_cost: np.ndarray


def soft_dtw(cost, gamma: float) -> SoftDtwResult:
    """Soft-DTW value and gradient over an n x m cost matrix.

    Forward: R[i,j] = cost[i,j] + soft_min of the in-range predecessors
    (up, left, diagonal), with R[0,0] = cost[0,0]. The value is the
    bottom-right entry. At gamma 0 this is the hard minimum over all
    monotone alignment paths and the gradient marks one optimal path
    (ties prefer the diagonal predecessor, then up, then left); for
    gamma > 0 the value equals -gamma * log of the path partition sum
    and strictly lower-bounds the hard value.

    Raises:
        EmptyMatrixError: cost is not a non-empty 2-D matrix.
        NonFiniteCostError: NaN or infinite cost entries.
        ValueError: negative gamma.
    """
    c = np.asarray(cost, dtype=np.float64)
    if c.ndim != 2 or c.size == 0:
        raise EmptyMatrixError("cost must be a non-empty 2-D matrix")
    if not np.all(np.isfinite(c)):
        raise NonFiniteCostError("cost entries must be finite")
    if gamma < 0:
        raise ValueError("gamma must be >= 0")
    n, m = c.shape
    cl = c.tolist()
    if gamma == 0:
        return _hard_dtw(cl, n, m)

    exp = math.exp
    log = math.log
    R = [[0.0] * m for _ in range(n)]
    R[0][0] = cl[0][0]
    for j in range(1, m):
        R[0][j] = cl[0][j] + R[0][j - 1]
    for i in range(1, n):
        Ri, Rp, ci = R[i], R[i - 1], cl[i]
        Ri[0] = ci[0] + Rp[0]
        for j in range(1, m):
            up = Rp[j]
            left = Ri[j - 1]
            diag = Rp[j - 1]
            lo = min(up, left, diag)
            Ri[j] = ci[j] + lo - gamma * log(
                exp((lo - up) / gamma) + exp((lo - left) / gamma) + exp((lo - diag) / gamma)
            )

    # Reverse pass: E[i,j] = sum over in-range successors s of
    # exp((R[s] - cost[s] - R[i,j]) / gamma) * E[s]. The exponent is
    # never positive because R[s] - cost[s] soft-mins over R[i,j].
    E = [[0.0] * m for _ in range(n)]
    E[n - 1][m - 1] = 1.0
    for i in range(n - 1, -1, -1):
        for j in range(m - 1, -1, -1):
            if i == n - 1 and j == m - 1:
                continue
            acc = 0.0
            rij = R[i][j]
            if i + 1 < n:
                acc += exp((R[i + 1][j] - cl[i + 1][j] - rij) / gamma) * E[i + 1][j]
            if j + 1 < m:
                acc += exp((R[i][j + 1] - cl[i][j + 1] - rij) / gamma) * E[i][j + 1]
            if i + 1 < n and j + 1 < m:
                acc += exp((R[i + 1][j + 1] - cl[i + 1][j + 1] - rij) / gamma) * E[i + 1][j + 1]
            E[i][j] = acc
    return SoftDtwResult(R[n - 1][m - 1], np.array(E))


def _hard_dtw(cl: list[list[float]], n: int, m: int) -> SoftDtwResult:
    R = [[0.0] * m for _ in range(n)]
    R[0][0] = cl[0][0]
    for j in range(1, m):
        R[0][j] = cl[0][j] + R[0][j - 1]
    for i in range(1, n):
        R[i][0] = cl[i][0] + R[i - 1][0]
        for j in range(1, m):
            R[i][j] = cl[i][j] + min(R[i - 1][j], R[i][j - 1], R[i - 1][j - 1])
    grad = np.zeros((n, m))
    i, j = n - 1, m - 1
    grad[i, j] = 1.0
    while i or j:
        if i and j:
            best = min(R[i - 1][j - 1], R[i - 1][j], R[i][j - 1])
            if R[i - 1][j - 1] == best:
                i, j = i - 1, j - 1
            elif R[i - 1][j] == best:
                i -= 1
            else:
                j -= 1
        elif i:
            i -= 1
        else:
            j -= 1
        grad[i, j] = 1.0
    return SoftDtwResult(R[n - 1][m - 1], grad)

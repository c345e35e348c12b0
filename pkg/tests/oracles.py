"""Independent reference implementations used only by the tests.

Everything here is deliberately written without importing the package
under test: plain recursion, exhaustive enumeration, finite differences,
and naive loops. Slow is fine; trustworthy is the point.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import exp, log

import numpy as np


def recursive_edit_distance(ref, hyp) -> int:
    """Textbook recursive Levenshtein distance with memoization."""
    r = tuple(ref)
    h = tuple(hyp)

    @lru_cache(maxsize=None)
    def d(i: int, j: int) -> int:
        if i == 0:
            return j
        if j == 0:
            return i
        return min(
            d(i - 1, j - 1) + (r[i - 1] != h[j - 1]),
            d(i - 1, j) + 1,
            d(i, j - 1) + 1,
        )

    return d(len(r), len(h))


def all_sequences(alphabet_size: int, length: int) -> np.ndarray:
    """Every sequence of the given length, lexicographic, as an array."""
    if length == 0:
        return np.zeros((1, 0), dtype=np.int8)
    return np.array(list(product(range(alphabet_size), repeat=length)), dtype=np.int8)


def all_pairs_distance_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Levenshtein distances for every (row of a) x (row of b) pair.

    Vectorized over the pair axes so exhaustive grids stay fast; the DP
    itself is the standard one, evaluated for all pairs at once.
    """
    na, la = a.shape
    nb, lb = b.shape
    row = [np.full((na, nb), j, dtype=np.int16) for j in range(lb + 1)]
    for i in range(1, la + 1):
        new = [np.full((na, nb), i, dtype=np.int16)]
        ai = a[:, i - 1][:, None]
        for j in range(1, lb + 1):
            cand = row[j - 1] + (ai != b[:, j - 1][None, :])
            np.minimum(cand, row[j] + 1, out=cand)
            np.minimum(cand, new[j - 1] + 1, out=cand)
            new.append(cand)
        row = new
    return row[lb]


_PATH_CACHE: dict[tuple[int, int], tuple[tuple[tuple[int, int], ...], ...]] = {}


def monotone_paths(n: int, m: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """All monotone alignment paths from (0,0) to (n-1,m-1).

    Steps move down, right, or diagonally by one. Cached per shape.
    """
    key = (n, m)
    if key in _PATH_CACHE:
        return _PATH_CACHE[key]
    if n == 1 and m == 1:
        result: tuple = (((0, 0),),)
    else:
        acc = []
        if n > 1:
            acc += [p + ((n - 1, m - 1),) for p in monotone_paths(n - 1, m)]
        if m > 1:
            acc += [p + ((n - 1, m - 1),) for p in monotone_paths(n, m - 1)]
        if n > 1 and m > 1:
            acc += [p + ((n - 1, m - 1),) for p in monotone_paths(n - 1, m - 1)]
        result = tuple(acc)
    _PATH_CACHE[key] = result
    return result


def path_costs(cost: np.ndarray) -> np.ndarray:
    n, m = cost.shape
    return np.array(
        [sum(cost[i, j] for i, j in p) for p in monotone_paths(n, m)]
    )


def min_over_paths(cost: np.ndarray) -> float:
    return float(path_costs(cost).min())


def soft_min_over_paths(cost: np.ndarray, gamma: float) -> float:
    costs = path_costs(cost)
    lo = costs.min()
    return float(lo - gamma * log(np.exp(-(costs - lo) / gamma).sum()))


def is_path_indicator(grad: np.ndarray) -> bool:
    """True when grad is 0/1 and its ones form one monotone path."""
    if not np.all((grad == 0) | (grad == 1)):
        return False
    cells = sorted(zip(*np.nonzero(grad)))
    n, m = grad.shape
    if not cells or cells[0] != (0, 0) or cells[-1] != (n - 1, m - 1):
        return False
    for (i0, j0), (i1, j1) in zip(cells, cells[1:]):
        if (i1 - i0, j1 - j0) not in ((0, 1), (1, 0), (1, 1)):
            return False
    return True


def dyadic_costs(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    """Random costs on the 1/8 grid; small path sums are exact in binary64."""
    return rng.integers(0, 32, size=(n, m)).astype(np.float64) / 8.0


def central_diff_grad(f, x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central finite differences of a scalar function, entry by entry."""
    grad = np.zeros_like(x)
    flat = x.ravel()
    gflat = grad.ravel()
    for k in range(flat.size):
        orig = flat[k]
        flat[k] = orig + h
        up = f(x)
        flat[k] = orig - h
        down = f(x)
        flat[k] = orig
        gflat[k] = (up - down) / (2.0 * h)
    return grad


def relative_error(a: np.ndarray, b: np.ndarray) -> float:
    denom = max(float(np.linalg.norm(a)), float(np.linalg.norm(b)), 1e-12)
    return float(np.linalg.norm(a - b)) / denom


def naive_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[1]))
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            s = 0.0
            for k in range(a.shape[1]):
                s += a[i, k] * b[k, j]
            out[i, j] = s
    return out

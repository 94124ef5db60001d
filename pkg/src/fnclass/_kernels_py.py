"""Pure-numpy implementations of the hot kernels.

Selected at import time when the compiled extension is unavailable (or when
FNCLASS_BACKEND=py).  Semantics must match `_ckernels.pyx` exactly: same
comparison predicates, same quadrature weights, distances within last-ulp
rounding of the compiled path.
"""

from __future__ import annotations

import numpy as np

BACKEND_NAME = "py"

# Row-block size for the pairwise distance computations; bounds the
# (block x n x m) temporary at roughly 50 MB for the default grids.
_BLOCK = 32


def sq_l2_matrix(values: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Symmetric matrix of weighted squared-Euclidean row distances."""
    x = np.asarray(values, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    n = x.shape[0]
    out = np.empty((n, n), dtype=np.float64)
    for i0 in range(0, n, _BLOCK):
        i1 = min(i0 + _BLOCK, n)
        diff = x[i0:i1, None, :] - x[None, :, :]
        np.square(diff, out=diff)
        out[i0:i1] = diff @ w
    # (x_i - x_j)^2 is computed identically for both orders, so the matrix is
    # symmetric by construction; the diagonal is exactly zero.
    np.fill_diagonal(out, 0.0)
    return out


def sq_l2_cross(a: np.ndarray, b: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Weighted squared-Euclidean distances between rows of `a` and rows of `b`."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    na = a.shape[0]
    out = np.empty((na, b.shape[0]), dtype=np.float64)
    for i0 in range(0, na, _BLOCK):
        i1 = min(i0 + _BLOCK, na)
        diff = a[i0:i1, None, :] - b[None, :, :]
        np.square(diff, out=diff)
        out[i0:i1] = diff @ w
    return out


def count_below(a: np.ndarray, b: np.ndarray) -> float:
    """Number of pairs (x in a, y in b) with x < y, ties counting 1/2.

    Exact: every term is an integer or half-integer, accumulated in float64.
    """
    bs = np.sort(np.asarray(b, dtype=np.float64))
    av = np.asarray(a, dtype=np.float64)
    le = np.searchsorted(bs, av, side="right")  # count of b <= x
    lt = np.searchsorted(bs, av, side="left")   # count of b <  x
    nb = bs.size
    return float(np.sum(nb - le) + 0.5 * np.sum(le - lt))


def count_below_rows(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise `count_below` for matched 2-d inputs."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    out = np.empty(a.shape[0], dtype=np.float64)
    for i in range(a.shape[0]):
        out[i] = count_below(a[i], b[i])
    return out

"""Reference solvers: dense LU with partial pivoting and unpivoted banded LU."""

import time

import numpy as np

from . import _kernels
from .core import (
    BREAKDOWN_FACTOR,
    EPS,
    UNSTABLE_THRESHOLD,
    Method,
    PentaToeplitz,
    SolveReport,
    _as_vector,
    _report_residual,
    matvec,
)
from .exceptions import BreakdownError, SingularMatrixError, UnsupportedSizeError

__all__ = ["MAX_DENSE_N", "densify", "plu_factor", "plu_solve", "banded_lu_solve"]

MAX_DENSE_N = 4096


def densify(A: PentaToeplitz) -> np.ndarray:
    """Dense ``(n, n)`` array with the five bands of ``A``."""
    n = A.n
    if n > MAX_DENSE_N:
        raise UnsupportedSizeError(
            f"dense realization is limited to n <= {MAX_DENSE_N}, got n={n}"
        )
    M = np.zeros((n, n))
    for offset, value in zip((-2, -1, 0, 1, 2), A.bands):
        k = n - abs(offset)
        if k <= 0:
            continue
        rows = np.arange(k) + max(0, -offset)
        M[rows, rows + offset] = value
    return M


def plu_factor(M):
    """LU factorization with partial (row) pivoting.

    Returns
    -------
    lu : ndarray
        Unit lower factor (below the diagonal) and upper factor packed together.
    perm : ndarray of int
        Row order such that ``M[perm] == L @ U``.

    Raises
    ------
    SingularMatrixError
        If some column has only zeros on and below the diagonal.
    """
    lu = np.array(M, dtype=np.float64, copy=True)
    if lu.ndim != 2 or lu.shape[0] != lu.shape[1]:
        raise ValueError(f"matrix must be square, got shape {lu.shape}")
    if not np.all(np.isfinite(lu)):
        raise ValueError("matrix entries must be finite")
    n = lu.shape[0]
    perm = np.arange(n)
    for k in range(n):
        i = k + int(np.argmax(np.abs(lu[k:, k])))
        # exact-zero test only: tiny pivots of ill-conditioned bands still
        # give a backward-stable solve
        if lu[i, k] == 0.0:
            raise SingularMatrixError(f"no usable pivot in column {k}")
        if i != k:
            lu[[k, i]] = lu[[i, k]]
            perm[[k, i]] = perm[[i, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return lu, perm


def _plu_substitute(lu, perm, b):
    n = lu.shape[0]
    y = b[perm]
    for i in range(1, n):
        y[i] -= lu[i, :i] @ y[:i]
    for i in range(n - 1, -1, -1):
        y[i] = (y[i] - lu[i, i + 1:] @ y[i + 1:]) / lu[i, i]
    return y


def plu_solve(M, b) -> SolveReport:
    """Solve ``M x = b`` by Gaussian elimination with partial pivoting.

    O(n^3); intended as the correctness oracle and the dense comparator.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"matrix must be square, got shape {M.shape}")
    if M.shape[0] > MAX_DENSE_N:
        raise UnsupportedSizeError(
            f"plu_solve is limited to n <= {MAX_DENSE_N}, got n={M.shape[0]}"
        )
    b = _as_vector(b, M.shape[0], "b")
    t0 = time.perf_counter()
    lu, perm = plu_factor(M)
    x = _plu_substitute(lu, perm, b)
    elapsed = time.perf_counter() - t0
    res = _report_residual(np.linalg.norm(b - M @ x), b)
    return SolveReport(x, res, elapsed, Method.PLU, not res <= UNSTABLE_THRESHOLD)


def banded_lu_solve(A: PentaToeplitz, b) -> SolveReport:
    """Solve ``A x = b`` by unpivoted elimination inside the five bands.

    No fill-in leaves the band, so the cost is O(n).

    Raises
    ------
    BreakdownError
        When a pivot is at most ``64 * eps`` times its row maximum (floor 1).
    """
    b = _as_vector(b, A.n, "b")
    t0 = time.perf_counter()
    x, k = _kernels.banded_lu(*A.bands, b, BREAKDOWN_FACTOR * EPS)
    elapsed = time.perf_counter() - t0
    if k >= 0:
        raise BreakdownError(f"zero pivot at row {k + 1} of banded LU")
    res = _report_residual(np.linalg.norm(b - matvec(A, x)), b)
    return SolveReport(
        x, res, elapsed, Method.BANDED_LU, not res <= UNSTABLE_THRESHOLD
    )

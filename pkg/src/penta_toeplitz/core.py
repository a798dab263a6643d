"""Fast direct solver for pentadiagonal Toeplitz systems.

The matrix ``A`` of order ``n`` is fixed by five band values::

    A[i, i-2] = sigma    A[i, i-1] = lam    A[i, i] = alpha
    A[i, i+1] = beta     A[i, i+2] = gamma

Moving the first two rows of ``A`` to the bottom gives a matrix whose
leading ``(n-2) x (n-2)`` block is upper triangular Toeplitz with diagonal
``sigma``.  The solver eliminates that block with three banded back
substitutions and reduces the remaining unknowns ``x[n-2]`` and ``x[n-1]``
to a 2x2 system, for O(n) work overall.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .exceptions import (
    BreakdownError,
    SingularBlockError,
    UndefinedMetricError,
    UnsupportedSizeError,
)

__all__ = [
    "Method",
    "PentaToeplitz",
    "UpperBandToeplitz",
    "PartitionedSystem",
    "IntermediateSolves",
    "SolveReport",
    "new_penta",
    "matvec",
    "partition",
    "tri_solve",
    "intermediate_solves",
    "corner_products",
    "corner_solve",
    "assemble",
    "solve_fast",
    "relative_residual",
    "MIN_FAST_N",
    "UNSTABLE_THRESHOLD",
    "BREAKDOWN_FACTOR",
]

MIN_FAST_N = 6
UNSTABLE_THRESHOLD = 1e-8
# breakdown when |denominator| <= BREAKDOWN_FACTOR * eps * scale
BREAKDOWN_FACTOR = 64.0
EPS = 2.0**-52

SINGULAR_BLOCK_MSG = "pivot breakdown at A₁₁ diagonal"


class Method(str, enum.Enum):
    FAST = "fast"
    PLU = "plu"
    BANDED_LU = "banded_lu"

    def __str__(self):
        return self.value


def _frozen(a):
    a = np.ascontiguousarray(a, dtype=np.float64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class PentaToeplitz:
    """Pentadiagonal Toeplitz matrix of order ``n``.

    Parameters
    ----------
    n : int
        Matrix order.
    sigma, lam : float
        Second and first sub-diagonal values.
    alpha : float
        Main diagonal value.
    beta, gamma : float
        First and second super-diagonal values.
    """

    n: int
    sigma: float
    lam: float
    alpha: float
    beta: float
    gamma: float

    @property
    def bands(self) -> tuple[float, float, float, float, float]:
        """``(sigma, lam, alpha, beta, gamma)``."""
        return (self.sigma, self.lam, self.alpha, self.beta, self.gamma)

    def __matmul__(self, x):
        return matvec(self, x)


def new_penta(n, sigma, lam, alpha, beta, gamma) -> PentaToeplitz:
    """Validate the arguments and build a :class:`PentaToeplitz`.

    Any ``n >= 1`` is accepted; the fast solver additionally needs ``n >= 6``
    and checks that itself.
    """
    if isinstance(n, bool) or int(n) != n:
        raise ValueError(f"n must be an integer, got {n!r}")
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    values = [float(v) for v in (sigma, lam, alpha, beta, gamma)]
    for name, v in zip(("sigma", "lam", "alpha", "beta", "gamma"), values):
        if not math.isfinite(v):
            raise ValueError(f"{name} must be finite, got {v}")
    return PentaToeplitz(n, *values)


def _as_vector(x, n, name="x"):
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != n:
        raise ValueError(f"{name} must have shape ({n},), got {x.shape}")
    return x


def matvec(A: PentaToeplitz, x) -> np.ndarray:
    """Return ``A @ x`` in O(n) without forming the matrix."""
    x = _as_vector(x, A.n)
    y = A.alpha * x
    y[1:] += A.lam * x[:-1]
    y[2:] += A.sigma * x[:-2]
    y[:-1] += A.beta * x[1:]
    y[:-2] += A.gamma * x[2:]
    return y


@dataclass(frozen=True)
class UpperBandToeplitz:
    """Upper triangular banded Toeplitz block of order ``m``.

    Row ``j`` holds ``(sigma, lam, alpha, beta, gamma)`` in columns
    ``j .. j+4``.  The coefficients divided by ``sigma`` used by the back
    substitution are computed on construction.
    """

    m: int
    sigma: float
    lam: float
    alpha: float
    beta: float
    gamma: float
    sigma1: float = field(init=False)
    lam1: float = field(init=False)
    alpha1: float = field(init=False)
    beta1: float = field(init=False)
    gamma1: float = field(init=False)

    def __post_init__(self):
        if self.sigma == 0.0:
            raise SingularBlockError(SINGULAR_BLOCK_MSG)
        s = self.sigma
        object.__setattr__(self, "sigma1", 1.0 / s)
        object.__setattr__(self, "lam1", self.lam / s)
        object.__setattr__(self, "alpha1", self.alpha / s)
        object.__setattr__(self, "beta1", self.beta / s)
        object.__setattr__(self, "gamma1", self.gamma / s)

    @property
    def bands(self):
        return (self.sigma, self.lam, self.alpha, self.beta, self.gamma)

    def toarray(self) -> np.ndarray:
        """Dense ``(m, m)`` realization."""
        out = np.zeros((self.m, self.m))
        for offset, value in enumerate(self.bands):
            if offset < self.m:
                idx = np.arange(self.m - offset)
                out[idx, idx + offset] = value
        return out


@dataclass(frozen=True)
class PartitionedSystem:
    """Block form of a pentadiagonal Toeplitz system.

    After the row shift the system reads::

        [ block  p  r ] [ x[:n-2] ]   [ b3 ]
        [  w^T   0  0 ] [ x[n-2]  ] = [ b1 ]
        [  s^T   0  0 ] [ x[n-1]  ]   [ b2 ]

    ``w`` and ``s`` are the first two rows of ``A`` restricted to the first
    ``n-2`` columns, ``p`` and ``r`` its last two columns restricted to
    rows ``3..n``.
    """

    block: UpperBandToeplitz
    p: np.ndarray
    r: np.ndarray
    w: np.ndarray
    s: np.ndarray
    b3: np.ndarray
    b1: float
    b2: float

    @property
    def n(self):
        return self.block.m + 2


class IntermediateSolves(NamedTuple):
    """Solutions of ``block @ u = b3``, ``block @ v = p``, ``block @ z = r``."""

    u: np.ndarray
    v: np.ndarray
    z: np.ndarray


@dataclass(frozen=True)
class SolveReport:
    x: np.ndarray
    relative_residual: float
    elapsed_seconds: float
    method: Method
    unstable: bool


def _check_fast_size(n):
    if n < MIN_FAST_N:
        raise UnsupportedSizeError(
            f"the fast solver requires n >= {MIN_FAST_N}, got n={n}"
        )


def partition(A: PentaToeplitz, b) -> PartitionedSystem:
    """Split ``A`` and ``b`` into the block form solved by :func:`solve_fast`.

    Raises
    ------
    UnsupportedSizeError
        If ``A.n < 6``.
    SingularBlockError
        If ``A.sigma == 0``.
    """
    n = A.n
    _check_fast_size(n)
    b = _as_vector(b, n, "b")
    block = UpperBandToeplitz(n - 2, *A.bands)
    m = n - 2
    p = np.zeros(m)
    p[m - 4:] = (A.gamma, A.beta, A.alpha, A.lam)
    r = np.zeros(m)
    r[m - 3:] = (A.gamma, A.beta, A.alpha)
    w = np.zeros(m)
    w[:3] = (A.alpha, A.beta, A.gamma)
    s = np.zeros(m)
    s[:4] = (A.lam, A.alpha, A.beta, A.gamma)
    return PartitionedSystem(
        block=block,
        p=_frozen(p),
        r=_frozen(r),
        w=_frozen(w),
        s=_frozen(s),
        b3=_frozen(b[2:]),
        b1=float(b[0]),
        b2=float(b[1]),
    )


def tri_solve(block: UpperBandToeplitz, c) -> np.ndarray:
    """Solve ``block @ y = c`` by banded back substitution.

    The last four unknowns are computed explicitly and the rest by the
    five-term recurrence, from the bottom row up.
    """
    if block.m < 4:
        raise UnsupportedSizeError(
            f"back substitution needs a block of order >= 4, got {block.m}"
        )
    c = _as_vector(c, block.m, "c")
    return _kernels.back_substitute(
        block.sigma1, block.lam1, block.alpha1, block.beta1, block.gamma1, c
    )


def intermediate_solves(part: PartitionedSystem) -> IntermediateSolves:
    blk = part.block
    return IntermediateSolves(
        tri_solve(blk, part.b3), tri_solve(blk, part.p), tri_solve(blk, part.r)
    )


def _head_dot(coeffs, y):
    # index-ascending sum over the leading nonzeros only
    acc = 0.0
    for i, c in enumerate(coeffs):
        acc += c * float(y[i])
    return acc


def corner_products(part: PartitionedSystem, solves: IntermediateSolves):
    """The six inner products ``w.u, w.v, w.z, s.u, s.v, s.z``.

    ``w`` has three leading nonzeros and ``s`` four, so each product costs
    O(1).  Summation runs over ascending indices.
    """
    w = [float(c) for c in part.w[:3]]
    s = [float(c) for c in part.s[:4]]
    u, v, z = solves
    return (
        _head_dot(w, u), _head_dot(w, v), _head_dot(w, z),
        _head_dot(s, u), _head_dot(s, v), _head_dot(s, z),
    )


def corner_solve(wv, wz, sv, sz, rhs1, rhs2) -> tuple[float, float]:
    """Solve the 2x2 corner system::

        [wv  wz] [x_nm1]   [rhs1]
        [sv  sz] [x_n  ] = [rhs2]

    ``x_n`` comes from the system with ``x_nm1`` eliminated, then
    ``x_nm1 = (rhs1 - wz * x_n) / wv``.

    The entries shrink geometrically with ``n`` for many band values (to
    ~1e-20 at n=512 for ``(5, 2, 4, 1, 3)``), so the breakdown test is
    relative to the largest entry with no absolute floor.

    Raises
    ------
    BreakdownError
        If ``wv`` or the eliminated denominator ``sz - sv/wv * wz`` is at most
        ``64 * eps`` times the largest entry of the 2x2 matrix, or all four
        entries are zero.
    """
    scale = max(abs(wv), abs(wz), abs(sv), abs(sz))
    tol = BREAKDOWN_FACTOR * EPS * scale
    if scale == 0.0 or not math.isfinite(scale):
        raise BreakdownError(f"degenerate corner system (scale {scale!r})")
    if not abs(wv) > tol:
        raise BreakdownError(f"corner pivot w.v = {wv!r} is below {tol:.3g}")
    ratio = sv / wv
    denom = sz - ratio * wz
    if not abs(denom) > tol:
        raise BreakdownError(
            f"corner Schur denominator {denom!r} is below {tol:.3g}"
        )
    x_n = (rhs2 - ratio * rhs1) / denom
    x_nm1 = (rhs1 - wz * x_n) / wv
    return x_nm1, x_n


def assemble(u, v, z, x_nm1, x_n) -> np.ndarray:
    """Return ``(u - x_nm1*v - x_n*z, x_nm1, x_n)`` as one vector."""
    u = np.asarray(u, dtype=np.float64)
    m = u.shape[0]
    v = _as_vector(v, m, "v")
    z = _as_vector(z, m, "z")
    x = np.empty(m + 2)
    x[:m] = u - x_nm1 * v - x_n * z
    x[m] = x_nm1
    x[m + 1] = x_n
    return x


def relative_residual(A: PentaToeplitz, x, b) -> float:
    """``||b - A x||_2 / ||b||_2``."""
    b = _as_vector(b, A.n, "b")
    nb = np.linalg.norm(b)
    if nb == 0.0:
        raise UndefinedMetricError("relative residual is undefined for b = 0")
    return float(np.linalg.norm(b - matvec(A, x)) / nb)


def _report_residual(abs_res, b):
    # b = 0 has no relative residual; report the absolute one instead
    nb = np.linalg.norm(b)
    return float(abs_res / nb) if nb > 0.0 else float(abs_res)


def solve_fast(A: PentaToeplitz, b) -> SolveReport:
    """Solve ``A x = b`` in O(n).

    Parameters
    ----------
    A : PentaToeplitz
        System matrix, ``n >= 6`` and ``sigma != 0``.
    b : array_like, shape (n,)
        Right-hand side.

    Returns
    -------
    SolveReport
        ``unstable`` is set when the relative residual exceeds
        ``UNSTABLE_THRESHOLD``.  The method carries no pivoting, and some
        band values (e.g. ``(1, 0.2, 0.1, 0.2, 0.5)`` at n=512) amplify
        rounding errors through the back-substitution recurrence.

    Raises
    ------
    UnsupportedSizeError, SingularBlockError, BreakdownError
    """
    b = _as_vector(b, A.n, "b")
    if not np.all(np.isfinite(b)):
        raise ValueError("b must be finite")
    # overflow in the recurrence surfaces through the unstable flag
    with np.errstate(over="ignore", invalid="ignore"):
        t0 = time.perf_counter()
        part = partition(A, b)
        solves = intermediate_solves(part)
        wu, wv, wz, su, sv, sz = corner_products(part, solves)
        x_nm1, x_n = corner_solve(wv, wz, sv, sz, wu - part.b1, su - part.b2)
        x = assemble(solves.u, solves.v, solves.z, x_nm1, x_n)
        elapsed = time.perf_counter() - t0
        res = _report_residual(np.linalg.norm(b - matvec(A, x)), b)
    return SolveReport(
        x=x,
        relative_residual=res,
        elapsed_seconds=elapsed,
        method=Method.FAST,
        unstable=not res <= UNSTABLE_THRESHOLD,
    )

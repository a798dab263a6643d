"""Compiled inner loops.

The kernels never raise; they return a status index and the Python wrappers
turn that into an exception.
"""

import numpy as np
from numba import njit, types

# eager signatures, so compilation (or cache loading) happens at import
# rather than inside the first timed solve
_f8 = types.float64
_vec = types.Array(_f8, 1, "C")
_rovec = types.Array(_f8, 1, "C", readonly=True)
_ret = types.Tuple((_vec, types.int64))


@njit([_vec(_f8, _f8, _f8, _f8, _f8, a) for a in (_vec, _rovec)], cache=True)
def back_substitute(s1, l1, a1, b1, g1, c):
    # Banded Toeplitz back substitution with normalized coefficients.
    # len(c) >= 4 is checked by the caller.
    m = c.shape[0]
    y = np.empty(m)
    y[m - 1] = s1 * c[m - 1]
    y[m - 2] = s1 * c[m - 2] - l1 * y[m - 1]
    y[m - 3] = s1 * c[m - 3] - l1 * y[m - 2] - a1 * y[m - 1]
    y[m - 4] = s1 * c[m - 4] - l1 * y[m - 3] - a1 * y[m - 2] - b1 * y[m - 1]
    for k in range(m - 5, -1, -1):
        y[k] = (s1 * c[k] - l1 * y[k + 1] - a1 * y[k + 2]
                - b1 * y[k + 3] - g1 * y[k + 4])
    return y


@njit([_ret(_f8, _f8, _f8, _f8, _f8, a, _f8) for a in (_vec, _rovec)], cache=True)
def banded_lu(sigma, lam, alpha, beta, gamma, b, tiny):
    """Unpivoted elimination confined to the five bands.

    Returns ``(x, k)`` where ``k`` is the index of the first rejected pivot,
    or -1 on success.
    """
    n = b.shape[0]
    sub1 = np.full(n, lam)
    diag = np.full(n, alpha)
    sup1 = np.full(n, beta)
    rhs = b.copy()
    x = np.zeros(n)

    for k in range(n):
        piv = diag[k]
        row_max = abs(piv)
        if k + 1 < n and abs(sup1[k]) > row_max:
            row_max = abs(sup1[k])
        if k + 2 < n and abs(gamma) > row_max:
            row_max = abs(gamma)
        if row_max < 1.0:
            row_max = 1.0
        if abs(piv) <= tiny * row_max:
            return x, k
        if k + 1 < n:
            m1 = sub1[k + 1] / piv
            diag[k + 1] -= m1 * sup1[k]
            if k + 2 < n:
                sup1[k + 1] -= m1 * gamma
            rhs[k + 1] -= m1 * rhs[k]
        if k + 2 < n:
            m2 = sigma / piv
            sub1[k + 2] -= m2 * sup1[k]
            diag[k + 2] -= m2 * gamma
            rhs[k + 2] -= m2 * rhs[k]

    for k in range(n - 1, -1, -1):
        acc = rhs[k]
        if k + 1 < n:
            acc -= sup1[k] * x[k + 1]
        if k + 2 < n:
            acc -= gamma * x[k + 2]
        x[k] = acc / diag[k]
    return x, -1

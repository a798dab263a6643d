"""
Solving a pentadiagonal Toeplitz system step by step
=====================================================

Builds the system for the first reference parameter set, runs each stage of
the O(n) solver by hand, and checks the result against dense pivoted LU.
"""

import numpy as np

from penta_toeplitz import (
    assemble,
    corner_products,
    corner_solve,
    densify,
    intermediate_solves,
    matvec,
    new_penta,
    partition,
    plu_solve,
    solve_fast,
)

# %%
# sigma, lambda, alpha, beta, gamma: second sub-diagonal up to second super-diagonal
A = new_penta(12, 5, 2, 4, 1, 3)
print(densify(A))

x_true = np.random.default_rng(0).random(A.n)
b = matvec(A, x_true)

# %%
# Moving rows 1 and 2 to the bottom leaves an upper triangular banded block.
part = partition(A, b)
print("p =", part.p)
print("r =", part.r)
print("w =", part.w)
print("s =", part.s)

# %%
# Three back substitutions with the same block, then a 2x2 system.
u, v, z = intermediate_solves(part)
wu, wv, wz, su, sv, sz = corner_products(part, (u, v, z))
x_nm1, x_n = corner_solve(wv, wz, sv, sz, wu - part.b1, su - part.b2)
x = assemble(u, v, z, x_nm1, x_n)
print("max |x - x_true| =", np.abs(x - x_true).max())

# %%
# The same thing in one call, with residual and timing.
report = solve_fast(A, b)
print(report.method, report.relative_residual, report.elapsed_seconds, report.unstable)

# %%
plu = plu_solve(densify(A), b)
print("fast vs plu:", np.abs(report.x - plu.x).max())

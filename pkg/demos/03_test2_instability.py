"""
Where the fast solver loses accuracy
====================================

For (sigma, lambda, alpha, beta, gamma) = (1, 0.2, 0.1, 0.2, 0.5) the
residual is at rounding level up to n = 256 and jumps at n = 512.  The
entries of the 2x2 corner system decay geometrically with n, while its
right-hand side carries rounding noise of order eps * |b|.  Once the entries
drop far below eps, the corner unknowns are determined by that noise.
The matrix itself becomes singular to working precision at the same point,
which is why dense pivoted LU fails there as well.
"""

import numpy as np

from penta_toeplitz import (
    corner_products,
    densify,
    intermediate_solves,
    matvec,
    new_penta,
    partition,
    plu_solve,
    solve_fast,
)

bands = (1.0, 0.2, 0.1, 0.2, 0.5)

# %%
print(" n    max corner entry   smallest sing. value   fast residual   plu residual")
for n in (64, 128, 256, 384, 512):
    A = new_penta(n, *bands)
    b = matvec(A, np.random.default_rng(1).random(n))
    part = partition(A, b)
    _, wv, wz, _, sv, sz = corner_products(part, intermediate_solves(part))
    scale = max(abs(wv), abs(wz), abs(sv), abs(sz))
    smin = np.linalg.svd(densify(A), compute_uv=False)[-1]
    fast = solve_fast(A, b)
    plu = plu_solve(densify(A), b)
    print(f"{n:4d}   {scale:14.3e}   {smin:18.3e}   {fast.relative_residual:13.3e}"
          f"   {plu.relative_residual:12.3e}  unstable={fast.unstable}")

# %%
# Per-seed outcome at n = 512.  When the rounding noise in w.u - b1 happens to
# cancel exactly the corner unknowns come out as zero; the residual is then
# tiny although x is wrong in its last entries.
A = new_penta(512, *bands)
for seed in range(8):
    x_true = np.random.default_rng(seed).random(512)
    rep = solve_fast(A, matvec(A, x_true))
    print(f"seed {seed}: residual {rep.relative_residual:.2e}, "
          f"max error {np.abs(rep.x - x_true).max():.2e}, unstable={rep.unstable}")

# %%
# The characteristic roots of the band recurrence all lie inside the unit
# circle, so the homogeneous solutions decay by about 0.86 per row.
print(np.abs(np.roots(bands)))

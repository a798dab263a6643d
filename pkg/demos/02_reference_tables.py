"""
Accuracy and timing tables
==========================

Runs the three reference parameter sets at n = 128, 256, 512 with the fast
solver and dense pivoted LU, ten timed repetitions each, and prints the
tables in markdown.  The same grid is available from the command line::

    penta-toeplitz bench --tests 1,2,3 --sizes 128,256,512 --reps 10 --seed 7
"""

from penta_toeplitz import render_table, run_suite

# %%
table = run_suite({1, 2, 3}, [128, 256, 512], seed=7, reps=10, methods={"fast", "plu"})
print(render_table(table, "markdown"))

# %%
# Machine-readable form
print(render_table(table, "csv"))

# %%
# Timing ratio per cell
for test_id in ("test1", "test2", "test3"):
    for n in (128, 256, 512):
        fast = table.get(test_id, n, "fast")
        plu = table.get(test_id, n, "plu")
        print(f"{test_id} n={n}: plu/fast = {plu.mean_time_seconds / fast.mean_time_seconds:.0f}x")

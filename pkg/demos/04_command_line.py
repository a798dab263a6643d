"""
Command-line round trip
=======================

Generates ``b = A x*`` for a seeded random ``x*``, solves it back from the
file, and compares.  Equivalent shell session::

    penta-toeplitz gen --test 3 --n 200 --rhs-random 17 --out b.txt
    penta-toeplitz solve --test 3 --rhs-file b.txt --out x.txt
    penta-toeplitz solve --test 3 --rhs-file b.txt --format json
"""

import tempfile
from pathlib import Path

import numpy as np

from penta_toeplitz import true_solution
from penta_toeplitz.cli import main
from penta_toeplitz.vecio import read_vector

# %%
tmp = Path(tempfile.mkdtemp())
assert main(["gen", "--test", "3", "--n", "200", "--rhs-random", "17",
             "--out", str(tmp / "b.txt")]) == 0
assert main(["solve", "--test", "3", "--rhs-file", str(tmp / "b.txt"),
             "--out", str(tmp / "x.txt")]) == 0
print((tmp / "x.txt").read_text().splitlines()[:4])

x = read_vector(tmp / "x.txt")
print("max |x - x*| =", np.abs(x - true_solution(200, 17)).max())

# %%
# Exit code 2 on numerical failure: sigma = 0 makes the leading block singular.
code = main(["solve", "--n", "8", "--sigma", "0", "--lambda", "1", "--alpha", "2",
             "--beta", "1", "--gamma", "1", "--rhs-ones"])
print("exit code", code)

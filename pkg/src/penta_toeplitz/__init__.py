"""O(n) direct solver for pentadiagonal Toeplitz systems, with baselines and a benchmark."""

from .baselines import banded_lu_solve, densify, plu_solve
from .bench import (
    BenchCase,
    BenchRecord,
    BenchTable,
    TEST_PARAMS,
    render_table,
    run_case,
    run_suite,
    true_solution,
)
from .core import (
    IntermediateSolves,
    Method,
    PartitionedSystem,
    PentaToeplitz,
    SolveReport,
    UpperBandToeplitz,
    assemble,
    corner_products,
    corner_solve,
    intermediate_solves,
    matvec,
    new_penta,
    partition,
    relative_residual,
    solve_fast,
    tri_solve,
)
from .exceptions import (
    BreakdownError,
    SingularBlockError,
    SingularMatrixError,
    SolverError,
    UndefinedMetricError,
    UnsupportedSizeError,
)

__version__ = "0.1.0"

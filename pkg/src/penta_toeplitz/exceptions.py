"""Exception types raised by the solvers."""

import numpy as np

__all__ = [
    "SolverError",
    "UnsupportedSizeError",
    "SingularBlockError",
    "BreakdownError",
    "SingularMatrixError",
    "UndefinedMetricError",
]


class SolverError(np.linalg.LinAlgError):
    """Base class for every numerical failure reported by this package."""


class UnsupportedSizeError(SolverError, ValueError):
    """The system is too small (or too large) for the requested solver."""


class BreakdownError(SolverError):
    """A pivot or corner denominator is zero to working precision."""


class SingularBlockError(BreakdownError):
    """The leading upper-triangular block has a zero diagonal."""


class SingularMatrixError(SolverError):
    """Pivoted elimination found a column with no usable pivot."""


class UndefinedMetricError(ValueError):
    """The relative residual is undefined because the right-hand side is zero."""

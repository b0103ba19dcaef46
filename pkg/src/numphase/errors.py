"""Exception types shared across the package.

The CLI maps these onto exit codes: validation problems exit with 2,
numerical-consistency failures with 4.
"""


class NumphaseError(Exception):
    """Base class for all package errors."""


class InvalidInputError(NumphaseError, ValueError):
    """Malformed or out-of-contract input (non-Hermitian matrix, bad measure, ...)."""


class InvalidPartitionError(InvalidInputError):
    """A list of arc sets that does not partition the circle."""


class OutOfWindowError(InvalidInputError):
    """An index or shift that falls outside the truncation window."""


class BoundInapplicableError(InvalidInputError):
    """The Lenard bound was requested for an arc set of full measure."""


class NumericalConsistencyError(NumphaseError, ArithmeticError):
    """A computed quantity violates a property it must have (positivity, normalization)."""


class SingularMatrixError(NumericalConsistencyError):
    """Matrix is not positive definite to working tolerance."""

"""Exception types raised across the package."""


class PolargdError(Exception):
    """Base class for all polargd errors."""


class NonFiniteInputError(PolargdError):
    """A matrix argument contains NaN or Inf entries."""


class NotSquareError(PolargdError):
    """A matrix argument is not square."""


class ZeroMatrixError(PolargdError):
    """The problem matrix is identically zero, so every orthogonal matrix is optimal."""


class NotOrthogonalError(PolargdError):
    """A matrix argument fails the orthogonality residual check."""


class DifferentComponentsError(PolargdError):
    """Two orthogonal matrices lie in different connected components (determinant signs differ)."""


class NonUniqueGeodesicError(PolargdError):
    """The endpoints admit multiple minimizing geodesics (a rotation phase sits at pi)."""


class PhaseAtPiError(PolargdError):
    """A rotation phase is at (or numerically at) pi where a strict interior phase is required."""


class SingularInputError(PolargdError):
    """The input matrix is singular or numerically singular where invertibility is required."""


class NoConvergenceError(PolargdError):
    """An iterative method failed to converge within its iteration budget."""


class StepOutsideInjectivityError(PolargdError):
    """A gradient step would leave the injectivity domain of the exponential map."""


class MatrixParseError(PolargdError):
    """A matrix file could not be parsed.

    Carries the 1-based line and column of the offending token when known.
    """

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column

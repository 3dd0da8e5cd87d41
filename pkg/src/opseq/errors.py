"""Exception hierarchy shared by every module of the package."""


class OpseqError(Exception):
    """Base class for all package errors."""


class DimensionError(OpseqError, ValueError):
    """Operators and vectors do not live in a common space."""


class ResourceLimitError(OpseqError):
    """A combinatorial or size guard was exceeded."""


class SingularOperatorError(OpseqError, ArithmeticError):
    """An inverse or resolvent was requested for a (numerically) singular operator."""


class SquareRootUnavailableError(OpseqError, ArithmeticError):
    """No principal square root could be formed; use the general solver path."""


class NotCommutingError(OpseqError, ArithmeticError):
    """The Chebyshev path needs commuting coefficients."""

    def __init__(self, message, commutator_norm=None):
        super().__init__(message)
        self.commutator_norm = commutator_norm


class NotNilpotentError(OpseqError, ValueError):
    """A matrix expected to square to zero does not."""


class DegreeOverflowError(OpseqError):
    """A polynomial would exceed the configured degree cap."""

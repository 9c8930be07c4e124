"""Exception types shared across the package."""


class UrbanikError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(UrbanikError, ValueError):
    """An argument lies outside the mathematical domain of an operation
    (on the branch cut, at a pole, or violating a stated precondition)."""


class CancellationError(UrbanikError, ArithmeticError):
    """The requested evaluation would lose essentially all significant
    digits to cancellation in double precision."""


class NoConvergence(UrbanikError, ArithmeticError):
    """A quadrature did not meet its tolerance within the node budget.

    The partial result is attached as ``result`` so callers that can
    tolerate a degraded error estimate may still use it.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ConsistencyError(UrbanikError, ArithmeticError):
    """A computed value violates a theorem-level invariant (for example a
    density coming out negative by far more than its error estimate),
    which indicates a bug rather than ordinary numerical noise."""

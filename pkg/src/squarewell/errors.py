"""Exception hierarchy shared by the package."""


class SquareWellError(Exception):
    """Base class for all errors raised by :mod:`squarewell`."""


class DomainError(SquareWellError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ConsistencyError(SquareWellError):
    """Inputs are individually valid but mutually inconsistent."""


class BracketError(SquareWellError, ValueError):
    """The function does not change sign on the supplied bracket."""

    def __init__(self, message, lo=None, hi=None):
        super().__init__(message)
        self.lo = lo
        self.hi = hi


class ConvergenceError(SquareWellError, ArithmeticError):
    """An iterative method ran out of budget.

    ``best`` carries the last estimate and ``bracket`` the final interval,
    when those make sense for the failing method.
    """

    def __init__(self, message, best=None, bracket=None):
        super().__init__(message)
        self.best = best
        self.bracket = bracket


class BranchError(SquareWellError, ValueError):
    """A split representation was asked for inside a removable-singularity window."""

"""Exception types shared across the package."""


class XiThetaError(Exception):
    """Base class for all package errors."""


class DomainError(XiThetaError, ValueError):
    """An argument lies outside the domain of the operation."""


class PrecisionError(XiThetaError, ArithmeticError):
    """A requested accuracy could not be reached.

    ``best`` carries the best estimate available when the work budget ran
    out (a float, a ``QuadratureResult`` or ``None``), and ``achievable`` the
    error bound that was actually attained.
    """

    def __init__(self, message, best=None, achievable=None):
        super().__init__(message)
        self.best = best
        self.achievable = achievable


class CapacityError(XiThetaError, ValueError):
    """A moment table does not hold the moments a formula needs."""


class CacheError(XiThetaError):
    """A cache file is unreadable, corrupt or of the wrong format version."""

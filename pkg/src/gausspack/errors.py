"""Exception types used across the package."""


class GausspackError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(GausspackError, ValueError):
    """A parameter set fails a validity constraint (positivity, bounds, shape)."""


class ToleranceError(GausspackError, RuntimeError):
    """A numerical routine could not reach its requested accuracy."""


class ConsistencyError(GausspackError, RuntimeError):
    """Two independent computations of the same quantity disagree."""

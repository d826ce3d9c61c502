"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    pass


class IncompatiblePairError(ValueError):
    """Two sequences disagree on channel count or period."""


class MetricUndefinedError(ValueError):
    """The requested metric does not exist for this pair (no maximal diversity)."""


class InvariantViolation(RuntimeError):
    """An internal guarantee did not hold; indicates a bug, not bad input."""

"""Exception types shared across the package."""


class NetlocError(Exception):
    """Base class for domain errors (CLI exit status 3)."""


class InvalidNetworkError(NetlocError):
    pass


class InvalidPointError(NetlocError):
    pass


class InvalidProfileError(NetlocError):
    pass


class NormalizationRequiredError(NetlocError):
    """Raised when an operation needs a network without degree-2 vertices."""


class VertexCoverageError(NetlocError):
    """Raised when a profile leaves some vertex of degree >= 3 unoccupied."""


class BelowThresholdError(NetlocError):
    """Raised when n is too small for the constructive equilibrium."""


class InvalidArgumentError(NetlocError):
    pass

"""Exception types shared across the package."""


class EmTwistError(Exception):
    """Base class for all package errors."""


class CompositionNonzero(EmTwistError):
    """Two consecutive boundary maps do not compose to zero."""


class SizeLimitExceeded(EmTwistError):
    """An enumeration would exceed the configured cardinality cap."""

    def __init__(self, message: str, dimension: int | None = None):
        super().__init__(message)
        self.dimension = dimension


class NotACocycle(EmTwistError):
    """A cochain that must be a cocycle has nonzero coboundary."""


class BadCell(EmTwistError):
    """A cell key does not describe a cell of the expected dimension."""


class MissingComponent(EmTwistError):
    """An algebra element has no component in the requested bidegree."""


class UnsupportedCoefficients(EmTwistError):
    """The operation is not available for the requested coefficient group."""


class FormatError(EmTwistError):
    """Malformed JSON input."""


class UnsupportedEnumeration(UnsupportedCoefficients):
    """Enumeration was requested over an infinite coefficient group."""

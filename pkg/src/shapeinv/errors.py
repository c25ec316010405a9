"""Exception types raised by the toolkit.

ValueError is reserved for plain bad arguments (negative counts, empty or
non-uniform grids); everything physics- or geometry-related gets a typed
exception so callers (and the CLI exit-code mapping) can tell them apart.
"""


class ShapeInvError(Exception):
    """Base class for computation errors raised by this package."""


class DomainError(ShapeInvError):
    """Evaluation was requested outside a domain's open interior."""


class SingularMapError(ShapeInvError):
    """A coordinate map is singular (f' = 0) or non-monotone on the grid."""


class LadderExhaustedError(ShapeInvError):
    """Raising past the last bound level: the step normalizer is non-positive."""


class TruncationTooLargeError(ShapeInvError):
    """A matrix truncation extends past the bound tower of the model."""


class NoBoundStateError(ShapeInvError):
    """The requested potential parameters admit no bound state."""


class UnsupportedParameterError(ShapeInvError):
    """Parameters are outside the range the catalog construction supports."""

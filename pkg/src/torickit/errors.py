"""Exception hierarchy for the toolkit.

Two families matter to the command line: ``InputError`` subclasses signal
malformed or out-of-contract input (exit code 2), ``VerdictError`` subclasses
signal a mathematically negative outcome on well-formed input (exit code 1).
"""


class ToricKitError(Exception):
    """Base class for all toolkit errors."""


class InputError(ToricKitError):
    """Malformed input or violated precondition; CLI exit code 2."""


class VerdictError(ToricKitError):
    """Well-formed input with a negative mathematical verdict; CLI exit code 1."""


class ZeroVectorError(InputError):
    """A primitive vector was requested for the zero vector."""


class DimensionMismatchError(InputError):
    """Vector or matrix dimensions do not match the ambient rank."""


class InfiniteIndexError(InputError):
    """A sublattice operation needs a full-rank basis but got less."""


class InvalidFanError(InputError):
    """An operation requires a valid fan and the input is not one."""


class NotSimplicialError(InputError):
    """An operation requires a simplicial cone or fan."""


class RayOutsideSupportError(InputError):
    """A subdivision ray does not lie in the support of the fan."""


class NotFixedPointError(InputError):
    """A marked cone is not a full-dimensional cone of the fan."""


class NotQCartierError(VerdictError):
    """No per-cone linear data exists for the divisor on the named cone."""

    def __init__(self, cone, message=None):
        self.cone = tuple(cone)
        super().__init__(message or f"divisor is not Q-Cartier on cone {self.cone}")


class NotAmpleError(VerdictError):
    """The divisor is not ample where ampleness is required."""


class NotEffectiveError(InputError):
    """A boundary divisor has a negative coefficient."""


class NoInteriorPointError(VerdictError):
    """No interior lattice point was found within the scaling bound."""


class NotPicardOneError(InputError):
    """The fan does not have exactly rank+1 rays with a positive relation."""


class DegreeTooSmallError(InputError):
    """Interpolation degree is smaller than the number of points."""


class InterpolationFailedError(VerdictError):
    """The interpolation system stayed degenerate over the retry budget."""


class AvoidanceRetryExceededError(VerdictError):
    """The avoidance loop ran out of attempts; carries the last report."""

    def __init__(self, report, message=None):
        self.report = report
        super().__init__(message or "avoidance retry budget exhausted")


class GradingMismatchError(InputError):
    """A form tuple does not fit the grading of the requested target."""


class InhomogeneousError(InputError):
    """An ideal generator is not homogeneous for the class grading."""


class ToroidalizationOutOfScopeError(InputError):
    """A singular marked point is not invariant; not handled by this toolkit."""


class ParseError(InputError):
    """A document failed to parse; carries a location string when known."""

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{message}" + (f" (at {location})" if location else ""))

"""
Exception hierarchy for the hyperbolic geometry toolkit.

Every error raised by the library derives from HypergeoError, which is itself
a ValueError so callers that only care about "bad input" can catch that.
"""


class HypergeoError(ValueError):
    """Base class for all library errors."""


class DomainError(HypergeoError):
    """Argument outside the domain of an operation (zero quaternion, |z| > 1, ...)."""


class DimensionMismatchError(HypergeoError):
    """Vectors or matrices of incompatible sizes."""


class InfiniteDistanceError(HypergeoError):
    """Distance requested between points where one lies on the boundary."""


class DegenerateTripleError(HypergeoError):
    """Triple with coincident points or a vanishing pairwise Hermitian product."""


class OutsideConeError(HypergeoError):
    """Projected lift is not negative (or null); no point of the ball corresponds."""


class NotOnLineError(HypergeoError):
    """Point expected on an F-line lies off it."""


class SingularSystemError(HypergeoError):
    """Gram system or basis change is numerically singular."""


class NotLoxodromicError(HypergeoError):
    """Isometry is elliptic or parabolic where a loxodromic one is required."""


class GroupDataError(HypergeoError):
    """Generators or decomposition data violate the bending preconditions."""


class ChainNotClosedError(HypergeoError):
    """Simplicial 2-chain has nonzero boundary."""


class InputFormatError(HypergeoError):
    """Unparseable coordinates, group files, cycle files or configuration."""

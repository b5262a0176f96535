"""Exception types shared across the package."""


class TwoCenterError(Exception):
    """Base class for all errors raised by this package."""


class CollinearError(TwoCenterError):
    """Three points are collinear (within tolerance); no circumcircle."""


class DegenerateError(TwoCenterError):
    """Coincident or otherwise degenerate input where distinct points are required."""


class EmptyInputError(TwoCenterError):
    """An operation that needs at least one point got none."""


class UnsortedInputError(TwoCenterError):
    """Input sequence violates the required x-order."""


class OrderViolationError(TwoCenterError):
    """Input sequence violates the required angular order around the anchor."""


class RadiusMismatchError(TwoCenterError):
    """Two hulls built at different radii cannot be combined."""


class NoCoverageError(TwoCenterError):
    """Coverage queried for a set that does not fit in a disk of the given radius."""


class TooLargeError(TwoCenterError):
    """Input exceeds the guard limit of an exponential-time oracle."""

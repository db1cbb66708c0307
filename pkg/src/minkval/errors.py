"""Exception hierarchy shared by all modules."""


class GeometryError(Exception):
    """Base class for every error raised by :mod:`minkval`."""


class EmptyBody(GeometryError):
    pass


class DimensionError(GeometryError, ValueError):
    pass


class DegenerateHull(GeometryError):
    """Point set is not full-dimensional.

    ``rank`` is the affine rank that was detected, so callers can project
    onto the affine hull and retry.
    """

    def __init__(self, message, rank):
        super().__init__(message)
        self.rank = rank


class NumericalError(GeometryError):
    pass


class NotClosable(GeometryError):
    """Measure on the circle with nonzero centroid."""


class UnsupportedDimension(GeometryError):
    pass


class NoSplit(GeometryError):
    pass


class InvalidGroupElement(GeometryError):
    pass


class RecoveryFailed(GeometryError):
    def __init__(self, message, residual=float("nan")):
        super().__init__(message)
        self.residual = residual

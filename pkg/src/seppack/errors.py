"""Exception hierarchy shared by every module."""


class SeppackError(ValueError):
    """Base class for all domain errors raised by the library."""


class GeometryMismatchError(SeppackError):
    """Objects from different constant-curvature planes were combined."""


class AntipodalPointsError(SeppackError):
    """Two spherical points are antipodal, so no unique shortest arc exists."""


class DegenerateTriangleError(SeppackError):
    """Three points are collinear or coincide (area below 1e-14)."""


class NoCircumcircleError(SeppackError):
    """The triangle has no circumcircle in the model.

    Raised for spherical triangles whose circumradius would reach pi/2 and
    for hyperbolic triangles whose vertices lie on a horocycle or hypercycle.
    """


class DomainError(SeppackError):
    """A scalar argument lies outside the domain of a formula."""


class NotSaturatedError(SeppackError):
    """A point set is not (2 R_rho)-saturated."""


class PackingFormatError(SeppackError):
    """A packing file is malformed or violates an invariant.

    ``record`` holds the zero-based index of the first offending center
    record, or ``None`` when the header is at fault.
    """

    def __init__(self, message: str, record: int | None = None):
        super().__init__(message)
        self.record = record

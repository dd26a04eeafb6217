"""Extremal isosceles triangle families and per-triangle densities.

A family member is described by its half-base ``y`` and half-leg ``x``
(edge lengths ``2y, 2x, 2x``).  Areas and circumradii of family members come
from closed forms in the separation radius ``lam``:

* half apex angle ``alpha`` and base angle ``beta`` have algebraic sines and
  cosines in ``sin y`` / ``sinh y`` and ``lam``;
* the area is an angle excess or defect, evaluated as an ``atan2`` of the
  sine and cosine of half the area, which is accurate for tiny triangles;
* circumradii use the cotangent (sphere), hyperbolic cotangent or rational
  (plane) closed forms.

:func:`model_triangle` builds any :class:`IsoTriangle` explicitly in the
embedded model so the closed forms can be checked against the kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import geometry as kern
from .errors import DomainError, NoCircumcircleError
from .formulas import x_of_y
from .geometry import Geometry

HALF_PI = math.pi / 2


@dataclass(frozen=True)
class IsoTriangle:
    """Isosceles triangle with edge lengths ``2 * half_base`` and two legs ``2 * half_leg``.

    ``kind`` is ``"family"`` for members of an extremal family (then ``lam``
    and, on the sphere, ``variant`` are set), ``"regular"`` or ``"generic"``.
    """

    geometry: Geometry
    half_base: float
    half_leg: float
    apex_angle: float
    base_angle: float
    area: float
    circumradius: float | None
    kind: str = "generic"
    lam: float | None = None
    variant: int | None = None
    notes: dict = field(default_factory=dict, compare=False)

    @property
    def angle_sum(self) -> float:
        return self.apex_angle + 2.0 * self.base_angle

    @property
    def edge_lengths(self) -> tuple[float, float, float]:
        return (2 * self.half_base, 2 * self.half_leg, 2 * self.half_leg)

    def describe(self) -> str:
        tag = {"family": "T", "regular": "T_reg", "generic": "iso"}[self.kind]
        if self.kind == "family" and self.variant:
            tag += str(self.variant)
        return f"{tag}[{self.geometry.label}](y={self.half_base:.17g}, x={self.half_leg:.17g})"


# ---------------------------------------------------------------------------
# Closed forms for family members
# ---------------------------------------------------------------------------


def _check_family(g: Geometry, y: float, lam: float, variant: int | None) -> None:
    if g is Geometry.SPHERICAL and variant not in (1, 2):
        raise DomainError("spherical families need variant 1 or 2")
    if g is not Geometry.SPHERICAL and variant is not None:
        raise DomainError("only the spherical family has two variants")
    x_of_y(g, y, lam, variant)  # domain validation


def family_half_angles(geometry: Geometry | str, y: float, lam: float) -> tuple[float, float, float, float]:
    """``(sin alpha, cos alpha, sin beta, cos beta)`` for the short-leg family member.

    ``alpha`` is half the apex angle and ``beta`` the base angle.  The long-leg
    spherical member shares ``alpha`` and has base angle ``pi - beta``.
    """
    g = Geometry.parse(geometry)
    if g is Geometry.SPHERICAL:
        s, c = math.sin(y), math.cos(y)
        t = math.tan(lam)
        gap_l = max(0.0, math.sin(y - lam) * math.sin(y + lam))
        gap_t = max(0.0, (s - t) * (s + t))
        return (math.sqrt(gap_l) / (s * math.cos(lam)), t * c / s, t / s, math.sqrt(gap_t) / s)
    if g is Geometry.HYPERBOLIC:
        s, c = math.sinh(y), math.cosh(y)
        t = math.tanh(lam)
        gap_l = math.sinh(y - lam) * math.sinh(y + lam)
        gap_t = max(0.0, (s - t) * (s + t))
        return (math.sqrt(gap_l) / (s * math.cosh(lam)), t * c / s, t / s, math.sqrt(gap_t) / s)
    root = math.sqrt((y - lam) * (y + lam))
    return (root / y, lam / y, lam / y, root / y)


def family_angles(geometry: Geometry | str, y: float, lam: float, variant: int | None = None) -> tuple[float, float]:
    """Apex angle and base angle of a family member."""
    g = Geometry.parse(geometry)
    _check_family(g, y, lam, variant)
    sa, ca, sb, cb = family_half_angles(g, y, lam)
    alpha = math.atan2(sa, ca)
    beta = math.atan2(sb, cb)
    if variant == 2:
        beta = math.pi - beta
    return 2.0 * alpha, beta


def family_area(geometry: Geometry | str, y: float, lam: float, variant: int | None = None) -> float:
    """Area of the family member with half-base ``y``."""
    g = Geometry.parse(geometry)
    _check_family(g, y, lam, variant)
    if g is Geometry.EUCLIDEAN:
        return y * y * lam / math.sqrt((y - lam) * (y + lam))
    sa, ca, sb, cb = family_half_angles(g, y, lam)
    if g is Geometry.SPHERICAL and variant == 1:
        # area/2 = alpha + beta - pi/2
        half_sin, half_cos = sa * sb - ca * cb, sa * cb + ca * sb
    elif g is Geometry.SPHERICAL:
        # area/2 = alpha - beta + pi/2
        half_sin, half_cos = ca * cb + sa * sb, ca * sb - sa * cb
    else:
        # area/2 = pi/2 - alpha - beta
        half_sin, half_cos = ca * cb - sa * sb, sa * cb + ca * sb
    return 2.0 * math.atan2(half_sin, half_cos)


def family_half_area_cosine(geometry: Geometry | str, y: float, lam: float, variant: int | None = None) -> float:
    """Radical expression for the cosine of half the area of a curved family member.

    In the hyperbolic case the same expression gives the circular cosine of
    half the area (the area is an angle defect, so it is bounded by pi).
    """
    g = Geometry.parse(geometry)
    _check_family(g, y, lam, variant)
    if g is Geometry.EUCLIDEAN:
        raise DomainError("the half-area cosine identity is only stated for curved planes")
    if g is Geometry.SPHERICAL:
        s2 = math.sin(y) ** 2
        l2 = math.sin(lam) ** 2
        c2 = math.cos(lam) ** 2
        first = math.sqrt(max(0.0, s2 - l2)) * math.sqrt(max(0.0, s2 * c2 - l2))
        sign = 1.0 if variant == 1 else -1.0
        return (sign * first + l2 * math.cos(y)) / (s2 * c2)
    s2 = math.sinh(y) ** 2
    l2 = math.sinh(lam) ** 2
    c2 = math.cosh(lam) ** 2
    first = math.sqrt(s2 - l2) * math.sqrt(s2 * c2 - l2)
    return (first + l2 * math.cosh(y)) / (s2 * c2)


def family_circumradius(geometry: Geometry | str, y: float, lam: float, variant: int | None = None) -> float:
    """Circumradius of the family member with half-base ``y``.

    Raises :class:`NoCircumcircleError` for hyperbolic members whose vertices
    lie on a hypercycle or horocycle.
    """
    g = Geometry.parse(geometry)
    _check_family(g, y, lam, variant)
    if g is Geometry.EUCLIDEAN:
        return y ** 3 / (2.0 * lam * math.sqrt((y - lam) * (y + lam)))
    if g is Geometry.SPHERICAL:
        s, c = math.sin(y), math.cos(y)
        t = math.tan(lam)
        cl = math.cos(lam)
        leg_term = c * c / s ** 3 * cl * math.sqrt(max(0.0, (s - t) * (s + t)))
        base_term = c / s ** 3 * math.sqrt(max(0.0, math.sin(y - lam) * math.sin(y + lam)))
        sign = 1.0 if variant == 1 else -1.0
        cot = math.sin(lam) / cl ** 2 * (sign * leg_term + base_term)
        return math.atan2(1.0, cot)
    s, c = math.sinh(y), math.cosh(y)
    t = math.tanh(lam)
    cl = math.cosh(lam)
    leg_term = c * c / s ** 3 * cl * math.sqrt(max(0.0, (s - t) * (s + t)))
    base_term = c / s ** 3 * math.sqrt(math.sinh(y - lam) * math.sinh(y + lam))
    coth = math.sinh(lam) / cl ** 2 * (leg_term + base_term)
    if not coth > 1.0:
        raise NoCircumcircleError(f"hyperbolic family member y={y!r}, lambda={lam!r} has no circumcircle")
    return math.atanh(1.0 / coth)


def family_triangle(geometry: Geometry | str, y: float, lam: float, variant: int | None = None) -> IsoTriangle:
    """Family member ``T(y)`` (``T_1``/``T_2`` on the sphere) with all measurements attached."""
    g = Geometry.parse(geometry)
    if g is Geometry.SPHERICAL and variant is None:
        variant = 1
    x = x_of_y(g, y, lam, variant)
    apex, base = family_angles(g, y, lam, variant)
    try:
        radius: float | None = family_circumradius(g, y, lam, variant)
    except NoCircumcircleError:
        radius = None
    return IsoTriangle(g, y, x, apex, base, family_area(g, y, lam, variant), radius,
                       kind="family", lam=lam, variant=variant)


# ---------------------------------------------------------------------------
# Regular and generic isosceles triangles
# ---------------------------------------------------------------------------


def regular_triangle(geometry: Geometry | str, rho: float) -> IsoTriangle:
    """Regular triangle with edge length ``2 rho``."""
    g = Geometry.parse(geometry)
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    if g is Geometry.EUCLIDEAN:
        return IsoTriangle(g, rho, rho, math.pi / 3, math.pi / 3, math.sqrt(3.0) * rho * rho,
                           2.0 * rho / math.sqrt(3.0), kind="regular")
    if g is Geometry.SPHERICAL:
        if not rho < math.pi / 3:
            raise DomainError(f"no spherical regular triangle with edge 2*rho for rho={rho!r} >= pi/3")
        ca = math.cos(2 * rho)
        angle = math.acos(ca / (1.0 + ca))
        area = 3.0 * angle - math.pi
        radius = math.asin(2.0 * math.sin(rho) / math.sqrt(3.0))
    else:
        ca = math.cosh(2 * rho)
        angle = math.acos(ca / (1.0 + ca))
        area = math.pi - 3.0 * angle
        radius = math.asinh(2.0 * math.sinh(rho) / math.sqrt(3.0))
    return IsoTriangle(g, rho, rho, angle, angle, area, radius, kind="regular")


def isosceles_triangle(geometry: Geometry | str, half_base: float, half_leg: float) -> IsoTriangle:
    """Arbitrary isosceles triangle, measured on its explicit model construction."""
    g = Geometry.parse(geometry)
    pts = _construct(g, half_base, half_leg)
    apex = kern.vertex_angle(g, pts[2], pts[0], pts[1])
    base = kern.vertex_angle(g, pts[0], pts[1], pts[2])
    area = abs(kern.signed_area(g, *pts))
    try:
        _, radius = kern.circumcenter(g, *pts)
    except NoCircumcircleError:
        radius = None
    return IsoTriangle(g, half_base, half_leg, apex, base, area, radius, kind="generic")


def _construct(g: Geometry, y: float, x: float) -> np.ndarray:
    """Base vertices at distance ``y`` left and right of the origin, apex on the vertical axis."""
    if not (y > 0 and x > 0 and 2 * x > y):
        raise DomainError(f"no isosceles triangle with half-base {y!r} and half-leg {x!r}")
    if g is Geometry.EUCLIDEAN:
        height = 2.0 * math.sqrt((x + y / 2) * (x - y / 2))
    elif g is Geometry.SPHERICAL:
        if not (x < HALF_PI and y < HALF_PI):
            raise DomainError("spherical construction needs edges shorter than pi")
        v = math.sin(x + y / 2) * math.sin(x - y / 2) / math.cos(y)
        if not 0 < v <= 1:
            raise DomainError(f"no spherical isosceles triangle with half-base {y!r} and half-leg {x!r}")
        height = 2.0 * math.asin(math.sqrt(v))
    else:
        v = math.sinh(x + y / 2) * math.sinh(x - y / 2) / math.cosh(y)
        height = 2.0 * math.asinh(math.sqrt(v))
    return kern.polar_points(g, np.array([y, y, height]), np.array([math.pi, 0.0, HALF_PI]))


def model_triangle(tri: IsoTriangle) -> kern.Triangle:
    """Explicit kernel triangle (base left, base right, apex) congruent to ``tri``."""
    pts = _construct(tri.geometry, tri.half_base, tri.half_leg)
    return kern.Triangle(*(kern.ModelPoint(tri.geometry, tuple(p)) for p in pts))


def satisfies_cstarstar(tri: IsoTriangle, lam: float | None = None, tol: float = 1e-9) -> bool:
    """Whether the line through the midpoints of a leg and of the base is at distance ``lam`` from all vertices."""
    lam = tri.lam if lam is None else lam
    if lam is None:
        raise DomainError("a separation radius is needed for the midpoint-line condition")
    t = model_triangle(tri)
    left, right, apex = t.vertices
    line = kern.line_through(kern.midpoint(apex, left), kern.midpoint(left, right))
    return all(abs(kern.point_line_distance(v, line) - lam) <= tol for v in t.vertices)


# ---------------------------------------------------------------------------
# Densities
# ---------------------------------------------------------------------------


def sector_weight(geometry: Geometry | str, rho: float) -> float:
    """Area of a radius-``rho`` disk sector per radian of opening angle."""
    g = Geometry.parse(geometry)
    if g is Geometry.EUCLIDEAN:
        return rho * rho / 2.0
    if g is Geometry.SPHERICAL:
        return 2.0 * math.sin(rho / 2.0) ** 2
    return 2.0 * math.sinh(rho / 2.0) ** 2


def triangle_density(tri: IsoTriangle, rho: float) -> float:
    """Fraction of ``tri`` covered by the radius-``rho`` disks at its vertices (angle-weighted)."""
    return sector_weight(tri.geometry, rho) * tri.angle_sum / tri.area


def two_disk_density(geometry: Geometry | str, leg: float, base: float, rho: float) -> float:
    """Density of the two disks centered at the base vertices inside an isosceles triangle.

    ``leg`` and ``base`` are full edge lengths.  The admissible region is
    ``2 rho <= base``, ``base / 2 < leg`` and, on the sphere,
    ``leg / 2 < base < pi / 2``.
    """
    g = Geometry.parse(geometry)
    if not rho > 0:
        raise DomainError("rho must be positive")
    if not (2 * rho <= base * (1 + 1e-15) and base / 2 < leg):
        raise DomainError(f"two-disk density needs 2 rho <= base and base/2 < leg (leg={leg!r}, base={base!r})")
    if g is Geometry.SPHERICAL and not (leg / 2 < base < HALF_PI):
        raise DomainError(f"spherical two-disk density needs leg/2 < base < pi/2 (leg={leg!r}, base={base!r})")
    pts = _construct(g, base / 2, leg / 2)
    base_angle = kern.vertex_angle(g, pts[0], pts[1], pts[2])
    area = abs(kern.signed_area(g, *pts))
    return sector_weight(g, rho) * 2.0 * base_angle / area

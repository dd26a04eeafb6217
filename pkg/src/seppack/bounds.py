"""Piecewise density and tightness bounds for lambda-separable packings.

Every evaluator returns a :class:`BoundResult` naming the regime that fired
and the extremal triangle that realizes the value.  Regime names are shared
across geometries:

``regular``
    regular triangle of edge ``2 rho``;
``family``
    short-leg extremal triangle whose legs are ``2 rho`` (inverse of the
    half-leg function on its decreasing branch);
``family_long``
    smallest long-leg spherical triangle whose edges are all at least
    ``2 rho``;
``min_circumradius``
    extremal triangle with the smallest circumradius over the whole family.

Euclidean evaluators take ``lam`` relative to unit disks by default; pass
``rho`` to scale (density is scale invariant, tightness scales with ``rho``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError
from .formulas import (
    ARCSIN_THREE_FIFTHS,
    HALF_PI,
    QUARTER_PI,
    Branch,
    check_params,
    x_euclidean,
    x_hyperbolic,
    x_inverse,
    x1_sphere,
    x2_sphere,
    y_b,
    y_min,
    y_s,
)
from .geometry import Geometry
from .triangles import IsoTriangle, family_triangle, regular_triangle, triangle_density

SQRT3_HALF = math.sqrt(3.0) / 2
TWO_SQRT2_THIRDS = 2 * math.sqrt(2.0) / 3


class Regime(str, Enum):
    REGULAR = "regular"
    FAMILY = "family"
    FAMILY_LONG = "family_long"
    MIN_CIRCUMRADIUS = "min_circumradius"


@dataclass(frozen=True)
class BoundResult:
    """Value of a piecewise bound with the branch that produced it.

    ``sharp`` is True when equality is known to be attained (Euclidean
    lattices); curved-plane bounds are attained only when a tiling by the
    extremal triangle exists, which ``sharp=False`` signals.
    """

    value: float
    regime: Regime
    extremal_triangle: IsoTriangle | None
    sharp: bool
    geometry: Geometry
    lam: float
    rho: float
    quantity: str

    def summary(self) -> dict:
        tri = self.extremal_triangle
        return {
            "geometry": self.geometry.label,
            "quantity": self.quantity,
            "lambda": self.lam,
            "rho": self.rho,
            "value": self.value,
            "regime": self.regime.value,
            "triangle": tri.describe() if tri is not None else "",
            "sharp": self.sharp,
        }


# ---------------------------------------------------------------------------
# Euclidean plane
# ---------------------------------------------------------------------------


def _euclidean_ratio(lam: float, rho: float) -> float:
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    if lam < 0:
        raise DomainError(f"lambda must be non-negative, got {lam!r}")
    t = lam / rho
    if t > 1:
        raise DomainError(f"lambda {lam!r} exceeds rho {rho!r}")
    return t


def _scaled(tri: IsoTriangle, rho: float) -> IsoTriangle:
    if rho == 1.0:
        return tri
    r = tri.circumradius
    return IsoTriangle(tri.geometry, tri.half_base * rho, tri.half_leg * rho, tri.apex_angle, tri.base_angle,
                       tri.area * rho * rho, None if r is None else r * rho, tri.kind,
                       None if tri.lam is None else tri.lam * rho, tri.variant)


def _short_base_euclidean(t: float) -> float:
    # half-base y with x_e(y) = 1 on the short branch: y^2 = 2 - 2 sqrt(1 - t^2)
    return math.sqrt(2.0 * t * t / (1.0 + math.sqrt(1.0 - t * t)))


def density_bound_euclidean(lam: float, rho: float = 1.0) -> BoundResult:
    """Largest density of a lambda-separable packing of radius-``rho`` disks."""
    t = _euclidean_ratio(lam, rho)
    if t <= SQRT3_HALF:
        value = math.pi / math.sqrt(12.0)
        tri = regular_triangle(Geometry.EUCLIDEAN, 1.0)
        regime = Regime.REGULAR
    else:
        value = math.pi / (4.0 * t)
        tri = family_triangle(Geometry.EUCLIDEAN, _short_base_euclidean(t), t)
        regime = Regime.FAMILY
    return BoundResult(value, regime, _scaled(tri, rho), True, Geometry.EUCLIDEAN, lam, rho, "density")


def tightness_bound_euclidean(lam: float, rho: float = 1.0) -> BoundResult:
    """Smallest covering radius of a lambda-separable packing of radius-``rho`` disks."""
    t = _euclidean_ratio(lam, rho)
    if t <= SQRT3_HALF:
        value = 2.0 / math.sqrt(3.0)
        tri = regular_triangle(Geometry.EUCLIDEAN, 1.0)
        regime = Regime.REGULAR
    elif t <= TWO_SQRT2_THIRDS:
        y = _short_base_euclidean(t)
        value = y / t
        tri = family_triangle(Geometry.EUCLIDEAN, y, t)
        regime = Regime.FAMILY
    else:
        value = 3.0 * math.sqrt(3.0) * t / 4.0
        tri = family_triangle(Geometry.EUCLIDEAN, math.sqrt(1.5) * t, t)
        regime = Regime.MIN_CIRCUMRADIUS
    return BoundResult(value * rho, regime, _scaled(tri, rho), True, Geometry.EUCLIDEAN, lam, rho, "tightness")


# ---------------------------------------------------------------------------
# Sphere
# ---------------------------------------------------------------------------


def spherical_thresholds(lam: float) -> tuple[float, float | None]:
    """``(y_s, y_b)`` with the conventions used by the region tests.

    For ``lam = 0`` these are ``(0, pi/3)``.  Above ``arcsin(3/5)`` no
    regular extremal triangle exists; ``y_s`` is then ``inf`` and ``y_b``
    is ``None``.
    """
    if lam == 0:
        return 0.0, math.pi / 3
    if lam > ARCSIN_THREE_FIFTHS:
        return math.inf, None
    return y_s(Geometry.SPHERICAL, lam), y_b(lam)


def _sphere_region(lam: float, rho: float, with_min: bool) -> Regime:
    check_params(Geometry.SPHERICAL, lam, rho)
    ys, yb = spherical_thresholds(lam)
    if with_min and lam > 0 and rho <= x1_sphere(y_min(Geometry.SPHERICAL, lam), lam):
        return Regime.MIN_CIRCUMRADIUS
    if lam > 0 and rho <= min(ys, QUARTER_PI):
        return Regime.FAMILY
    if yb is not None and ys < rho <= yb:
        return Regime.REGULAR
    if rho > QUARTER_PI and (rho < ys or (yb is not None and rho > yb)):
        return Regime.FAMILY_LONG
    raise DomainError(f"no spherical regime covers lambda={lam!r}, rho={rho!r}")


def _long_leg_triangle(lam: float, rho: float) -> IsoTriangle:
    """Smallest admissible member of the long-leg family for cap radius ``rho``.

    Its legs ``2 x2(y)`` and base ``2 y`` must both be at least ``2 rho``.
    Area and circumradius increase with ``y``, so the minimiser is the least
    admissible ``y``: the floor ``max(rho, arcsin tan lam)`` when its legs
    are long enough, otherwise the point on the increasing branch where the
    legs shrink to exactly ``2 rho``.  When ``rho`` lies past the decreasing
    branch no member qualifies.
    """
    if lam == 0:
        raise DomainError(f"no long-leg triangle with edges >= 2 rho exists for lambda=0, rho={rho!r}")
    peak = math.asin(math.sqrt(2.0) * math.sin(lam))
    lowest = max(rho, math.asin(math.tan(lam)))
    if lowest < HALF_PI and x2_sphere(lowest, lam) >= rho:
        y = lowest
    elif lowest < peak and x2_sphere(peak, lam) >= rho:
        y = x_inverse(Geometry.SPHERICAL, Branch.S1, rho, lam, 2)
    else:
        raise DomainError(f"no long-leg triangle with edges >= 2 rho exists for lambda={lam!r}, rho={rho!r}")
    return family_triangle(Geometry.SPHERICAL, y, lam, 2)


def density_bound_spherical(lam: float, rho: float) -> BoundResult:
    regime = _sphere_region(lam, rho, with_min=False)
    if regime is Regime.FAMILY:
        tri = family_triangle(Geometry.SPHERICAL, x_inverse(Geometry.SPHERICAL, Branch.S1, rho, lam, 1), lam, 1)
    elif regime is Regime.REGULAR:
        tri = regular_triangle(Geometry.SPHERICAL, rho)
    else:
        tri = _long_leg_triangle(lam, rho)
    return BoundResult(triangle_density(tri, rho), regime, tri, False, Geometry.SPHERICAL, lam, rho, "density")


def tightness_bound_spherical(lam: float, rho: float) -> BoundResult:
    regime = _sphere_region(lam, rho, with_min=True)
    if regime is Regime.MIN_CIRCUMRADIUS:
        tri = family_triangle(Geometry.SPHERICAL, y_min(Geometry.SPHERICAL, lam), lam, 1)
    elif regime is Regime.FAMILY:
        tri = family_triangle(Geometry.SPHERICAL, x_inverse(Geometry.SPHERICAL, Branch.S1, rho, lam, 1), lam, 1)
    elif regime is Regime.REGULAR:
        tri = regular_triangle(Geometry.SPHERICAL, rho)
    else:
        tri = _long_leg_triangle(lam, rho)
    return BoundResult(tri.circumradius, regime, tri, False, Geometry.SPHERICAL, lam, rho, "tightness")


# ---------------------------------------------------------------------------
# Hyperbolic plane
# ---------------------------------------------------------------------------


def _hyperbolic_family(lam: float, rho: float) -> IsoTriangle:
    return family_triangle(Geometry.HYPERBOLIC, x_inverse(Geometry.HYPERBOLIC, Branch.H1, rho, lam), lam)


def density_bound_hyperbolic(lam: float, rho: float) -> BoundResult:
    check_params(Geometry.HYPERBOLIC, lam, rho)
    if lam > 0 and rho <= y_s(Geometry.HYPERBOLIC, lam):
        tri, regime = _hyperbolic_family(lam, rho), Regime.FAMILY
    else:
        tri, regime = regular_triangle(Geometry.HYPERBOLIC, rho), Regime.REGULAR
    return BoundResult(triangle_density(tri, rho), regime, tri, False, Geometry.HYPERBOLIC, lam, rho, "density")


def tightness_bound_hyperbolic(lam: float, rho: float) -> BoundResult:
    check_params(Geometry.HYPERBOLIC, lam, rho)
    if lam > 0:
        ym = y_min(Geometry.HYPERBOLIC, lam)
        if rho <= x_hyperbolic(ym, lam):
            tri, regime = family_triangle(Geometry.HYPERBOLIC, ym, lam), Regime.MIN_CIRCUMRADIUS
        elif rho <= y_s(Geometry.HYPERBOLIC, lam):
            tri, regime = _hyperbolic_family(lam, rho), Regime.FAMILY
        else:
            tri, regime = regular_triangle(Geometry.HYPERBOLIC, rho), Regime.REGULAR
    else:
        tri, regime = regular_triangle(Geometry.HYPERBOLIC, rho), Regime.REGULAR
    return BoundResult(tri.circumradius, regime, tri, False, Geometry.HYPERBOLIC, lam, rho, "tightness")


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def density_bound(geometry: Geometry | str, lam: float, rho: float) -> BoundResult:
    g = Geometry.parse(geometry)
    if g is Geometry.EUCLIDEAN:
        return density_bound_euclidean(lam, rho)
    if g is Geometry.SPHERICAL:
        return density_bound_spherical(lam, rho)
    return density_bound_hyperbolic(lam, rho)


def tightness_bound(geometry: Geometry | str, lam: float, rho: float) -> BoundResult:
    g = Geometry.parse(geometry)
    if g is Geometry.EUCLIDEAN:
        return tightness_bound_euclidean(lam, rho)
    if g is Geometry.SPHERICAL:
        return tightness_bound_spherical(lam, rho)
    return tightness_bound_hyperbolic(lam, rho)


# ---------------------------------------------------------------------------
# Contact numbers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContactBounds:
    """Contact-number range for ``n`` unit disks.

    When ``exact`` is False the upper value omits an additive constant that
    is not determined, so it must not be used as a hard cap.
    """

    n: int
    lam: float
    lower: int
    upper: float
    exact: bool
    upper_constant_unresolved: bool


def _ceil_sqrt(m: int) -> int:
    r = math.isqrt(m)
    return r if r * r == m else r + 1


def contact_bounds(n: int, lam: float) -> ContactBounds:
    """Bounds on the number of touching pairs among ``n`` lambda-separable unit disks."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise DomainError(f"contact bounds need an integer n >= 2, got {n!r}")
    if not 0 <= lam <= 1:
        raise DomainError(f"lambda must lie in [0, 1], got {lam!r}")
    if lam <= SQRT3_HALF:
        value = 3 * n - _ceil_sqrt(12 * n - 3)
        return ContactBounds(n, lam, value, float(value), True, False)
    lower = 2 * n - _ceil_sqrt(4 * n)
    upper = 2 * n - math.sqrt(math.pi * lam) * math.sqrt(n)
    return ContactBounds(n, lam, lower, upper, False, True)

"""Closed-form scalar functions for lambda-separable packings.

Half-leg functions ``x(y)`` of the extremal isosceles triangles, their
inverses on each monotone branch, the landmark half-bases ``y_s``, ``y_b``,
``y_min`` and the refinement threshold ``R_rho``.

All functions take radians.  Inputs outside a documented domain raise
:class:`~seppack.errors.DomainError`.  Differences of squares are evaluated
in product form (``sin^2 a - sin^2 b = sin(a-b) sin(a+b)``) so that the
small-scale limit stays accurate.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from scipy.optimize import bisect

from .errors import DomainError
from .geometry import Geometry

QUARTER_PI = math.pi / 4
HALF_PI = math.pi / 2
ARCSIN_THREE_FIFTHS = math.asin(0.6)


class Branch(str, Enum):
    """Monotone pieces of the half-leg functions."""

    S1 = "S1"
    S2 = "S2"
    H1 = "H1"
    H2 = "H2"

    @property
    def geometry(self) -> Geometry:
        return Geometry.SPHERICAL if self.value.startswith("S") else Geometry.HYPERBOLIC


@dataclass(frozen=True)
class SeparabilityParams:
    """Separation radius ``lam``, disk radius ``rho`` and the ambient geometry."""

    lam: float
    rho: float
    geometry: Geometry

    def __post_init__(self) -> None:
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        check_params(self.geometry, self.lam, self.rho)


def check_params(geometry: Geometry, lam: float, rho: float) -> None:
    """Validate ``0 <= lam <= rho`` plus the spherical conditions ``rho < pi/2`` and ``lam <= pi/2 - rho``."""
    g = Geometry.parse(geometry)
    if not (math.isfinite(lam) and math.isfinite(rho)):
        raise DomainError("lambda and rho must be finite")
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    if lam < 0:
        raise DomainError(f"lambda must be non-negative, got {lam!r}")
    if lam > rho * (1 + 1e-15):
        raise DomainError(f"lambda {lam!r} exceeds rho {rho!r}")
    if g is Geometry.SPHERICAL:
        if not rho < HALF_PI:
            raise DomainError(f"spherical rho must be below pi/2, got {rho!r}")
        if lam > HALF_PI - rho + 1e-15:
            raise DomainError(f"spherical parameters need lambda <= pi/2 - rho (lambda={lam!r}, rho={rho!r})")


# ---------------------------------------------------------------------------
# Half-leg functions
# ---------------------------------------------------------------------------


def _sphere_domain(y: float, lam: float) -> None:
    if not 0 < lam < QUARTER_PI:
        raise DomainError(f"spherical half-leg needs 0 < lambda < pi/4, got {lam!r}")
    lo = math.asin(math.tan(lam))
    if not lo - 1e-14 <= y <= HALF_PI + 1e-14:
        raise DomainError(f"spherical half-base {y!r} outside [arcsin tan lambda, pi/2] = [{lo!r}, {HALF_PI!r}]")


def _sphere_double_angle(y: float, lam: float) -> float:
    """``2 x_1(y)`` as an ``atan2`` of ``sin(2x)`` and ``cos(2x)``.

    Both share the factor ``cos(lam) / sqrt(sin^2 y - sin^2 lam)``; after
    cancelling it, ``sin(2x) ~ sin^2 y`` and
    ``cos(2x) ~ cos y sqrt(sin^2 y - tan^2 lam)``.  This stays accurate at the
    branch ends where the arcsine form is ill-conditioned.
    """
    s = math.sin(y)
    t = math.tan(lam)
    gap = max(0.0, (s - t) * (s + t))
    return math.atan2(s * s, math.cos(y) * math.sqrt(gap))


def x1_sphere(y: float, lam: float) -> float:
    _sphere_domain(y, lam)
    return 0.5 * _sphere_double_angle(y, lam)


def x2_sphere(y: float, lam: float) -> float:
    _sphere_domain(y, lam)
    return HALF_PI - 0.5 * _sphere_double_angle(y, lam)


def x_hyperbolic(y: float, lam: float) -> float:
    if not 0 < lam < y:
        raise DomainError(f"hyperbolic half-leg needs 0 < lambda < y, got lambda={lam!r}, y={y!r}")
    gap = math.sinh(y - lam) * math.sinh(y + lam)
    return 0.5 * math.asinh(math.cosh(lam) * math.sinh(y) ** 2 / math.sqrt(gap))


def x_euclidean(y: float, lam: float) -> float:
    if not 0 < lam < y:
        raise DomainError(f"euclidean half-leg needs 0 < lambda < y, got lambda={lam!r}, y={y!r}")
    return y * y / (2.0 * math.sqrt((y - lam) * (y + lam)))


def x_of_y(geometry: Geometry | str, y: float, lam: float, variant: int | None = None) -> float:
    """Half-leg of the extremal isosceles triangle with half-base ``y``.

    ``variant`` selects the short-leg (1) or long-leg (2) solution on the
    sphere and must be ``None`` otherwise.
    """
    g = Geometry.parse(geometry)
    if g is Geometry.SPHERICAL:
        if variant == 1:
            return x1_sphere(y, lam)
        if variant == 2:
            return x2_sphere(y, lam)
        raise DomainError("spherical half-leg needs variant 1 or 2")
    if variant is not None:
        raise DomainError("only spherical half-legs have variants")
    return x_hyperbolic(y, lam) if g is Geometry.HYPERBOLIC else x_euclidean(y, lam)


def tangency_residual_sphere(x: float, y: float, lam: float) -> float:
    """``sin(2x) sqrt(cos^2 lam - cos^2 y) - cos(lam) sin^2 y``; zero on both spherical families."""
    gap = max(0.0, math.sin(y - lam) * math.sin(y + lam))
    return math.sin(2 * x) * math.sqrt(gap) - math.cos(lam) * math.sin(y) ** 2


# ---------------------------------------------------------------------------
# Branches and inverses
# ---------------------------------------------------------------------------


def branch_interval(branch: Branch | str, lam: float) -> tuple[float, float]:
    """Closed interval of half-bases on which the half-leg function is monotone.

    The hyperbolic intervals are open at ``lam`` (H1) and unbounded (H2).
    """
    b = Branch(branch)
    if b in (Branch.S1, Branch.S2):
        if not 0 < lam < QUARTER_PI:
            raise DomainError(f"spherical branches need 0 < lambda < pi/4, got {lam!r}")
        mid = math.asin(math.sqrt(2.0) * math.sin(lam))
        return (math.asin(math.tan(lam)), mid) if b is Branch.S1 else (mid, HALF_PI)
    if not lam > 0:
        raise DomainError(f"hyperbolic branches need lambda > 0, got {lam!r}")
    mid = math.asinh(math.sqrt(2.0) * math.sinh(lam))
    return (lam, mid) if b is Branch.H1 else (mid, math.inf)


def x_inverse(geometry: Geometry | str, branch: Branch | str, rho: float, lam: float, variant: int | None = None) -> float:
    """Half-base ``y`` on ``branch`` whose half-leg equals ``rho``.

    Bisection on the monotone branch until the bracket stops shrinking in
    floating point.  Hyperbolic branches are searched in the offset
    ``y - lam`` so that the steep end near ``lam`` keeps full relative
    precision.  When ``rho`` equals the value at a branch end (within a few
    ulps) that end is returned exactly, since the inverse is only
    square-root conditioned next to the minimum of the half-leg.
    """
    g = Geometry.parse(geometry)
    b = Branch(branch)
    if b.geometry is not g:
        raise DomainError(f"branch {b.value} does not belong to the {g.label} geometry")
    if not math.isfinite(rho):
        raise DomainError("rho must be finite")
    snap = 4e-16 * max(1.0, abs(rho))
    if g is Geometry.SPHERICAL:
        variant = 1 if variant is None else variant
        lo, hi = branch_interval(b, lam)

        def f(y: float) -> float:
            return x_of_y(g, y, lam, variant) - rho

        shift = 0.0
    else:
        if variant is not None:
            raise DomainError("only spherical half-legs have variants")
        mid = math.asinh(math.sqrt(2.0) * math.sinh(lam))
        if rho < lam * (1 - 1e-15):
            raise DomainError(f"hyperbolic half-leg never drops below lambda; rho={rho!r} not attained")

        def f(delta: float) -> float:
            return _x_hyperbolic_offset(delta, lam) - rho

        shift = lam
        if b is Branch.H1:
            lo, hi = 0.0, mid - lam
            step = hi
            while True:
                step /= 4.0
                if step < 1e-300:
                    raise DomainError(f"rho={rho!r} not attained on H1 in floating point")
                if f(step) > 0:
                    lo = step
                    break
        else:
            lo, hi = mid - lam, None
            step = 1.0
            while f(lo + step) < 0:
                step *= 2.0
                if lo + step > 700:
                    raise DomainError(f"rho={rho!r} not attained on H2 in floating point")
            hi = lo + step
    f_lo, f_hi = f(lo), f(hi)
    if abs(f_lo) <= snap:
        return lo + shift
    if abs(f_hi) <= snap:
        return hi + shift
    if f_lo * f_hi > 0:
        raise DomainError(f"rho={rho!r} is not attained on branch {b.value} for lambda={lam!r}")
    return bisect(f, lo, hi, xtol=1e-300, rtol=4 * 2.220446049250313e-16 + 1e-30, maxiter=400) + shift


def _x_hyperbolic_offset(delta: float, lam: float) -> float:
    """Hyperbolic half-leg at half-base ``lam + delta``."""
    if not delta > 0:
        return math.inf
    y = lam + delta
    gap = math.sinh(delta) * math.sinh(y + lam)
    return 0.5 * math.asinh(math.cosh(lam) * math.sinh(y) ** 2 / math.sqrt(gap))


# ---------------------------------------------------------------------------
# Landmark half-bases
# ---------------------------------------------------------------------------


def y_s(geometry: Geometry | str, lam: float) -> float:
    """Half-base at which the extremal triangle becomes regular (``x(y) = y``, short branch)."""
    g = Geometry.parse(geometry)
    if g is Geometry.EUCLIDEAN:
        _positive(lam)
        return 2.0 * lam / math.sqrt(3.0)
    if g is Geometry.HYPERBOLIC:
        _positive(lam)
        s = math.sinh(lam) ** 2
        root = math.sqrt(25 * s * s + 34 * s + 9)
        # rationalized (5s - 3 + root) / 8
        return math.asinh(math.sqrt(8.0 * s / (root + 3.0 - 5.0 * s)))
    s, root = _sphere_discriminant(lam)
    return math.asin(math.sqrt(8.0 * s / (3.0 + 5.0 * s + root)))


def y_b(lam: float) -> float:
    """Spherical half-base at which the long-leg triangle becomes regular (``x_2(y) = y``)."""
    s, root = _sphere_discriminant(lam)
    return math.asin(math.sqrt((3.0 + 5.0 * s + root) / 8.0))


def _positive(lam: float) -> None:
    if not lam > 0:
        raise DomainError(f"lambda must be positive, got {lam!r}")


def _sphere_discriminant(lam: float) -> tuple[float, float]:
    _positive(lam)
    if lam > ARCSIN_THREE_FIFTHS * (1 + 1e-14):
        raise DomainError(f"spherical regular thresholds need lambda <= arcsin(3/5), got {lam!r}")
    s = math.sin(lam) ** 2
    disc = (9.0 - 25.0 * s) * (1.0 - s)
    return s, math.sqrt(max(0.0, disc))


def y_min(geometry: Geometry | str, lam: float) -> float:
    """Half-base minimizing the circumradius of the short-leg extremal triangle."""
    g = Geometry.parse(geometry)
    _positive(lam)
    if g is Geometry.EUCLIDEAN:
        return math.sqrt(1.5) * lam
    if g is Geometry.HYPERBOLIC:
        big_l = math.sinh(lam)
        l2 = big_l * big_l
        arg = (25 * l2 + 9) * big_l / (4 * math.sqrt(2.0) * (5 * l2 + 3) ** 1.5)
        arg = max(-1.0, min(1.0, arg))
        y2 = 5 * l2 / 3 + (2.0 / 3.0) * math.sqrt(10 * l2 * l2 + 6 * l2) * math.cos(math.acos(arg) / 3 - 2 * math.pi / 3)
        return math.asinh(math.sqrt(y2))
    if not lam < HALF_PI:
        raise DomainError(f"spherical y_min needs lambda < pi/2, got {lam!r}")
    l2 = math.sin(lam) ** 2
    z = _depressed_cubic_real_root(2 * l2 - 10 * l2 * l2 / 3, l2 * l2 / 3 - 25 * l2 ** 3 / 27)
    y2 = z + 5 * l2 / 3
    if not 0 < y2 <= 1 + 1e-15:
        raise DomainError(f"spherical y_min has no real half-base for lambda={lam!r}")
    return math.asin(math.sqrt(min(1.0, y2)))


def _depressed_cubic_real_root(p: float, q: float) -> float:
    """Real root of ``Z^3 + p Z + q = 0`` when it is unique (positive discriminant ``-(4p^3 + 27q^2)`` excluded)."""
    if p > 0:
        k = 1.5 * q / p * math.sqrt(3.0 / p)
        return -2.0 * math.sqrt(p / 3.0) * math.sinh(math.asinh(k) / 3.0)
    if p == 0:
        return -math.copysign(abs(q) ** (1.0 / 3.0), q)
    k = -1.5 * abs(q) / p * math.sqrt(-3.0 / p)
    if k < 1:
        raise DomainError("cubic has three real roots; the single-root formula does not apply")
    return -2.0 * math.copysign(1.0, q) * math.sqrt(-p / 3.0) * math.cosh(math.acosh(k) / 3.0)


def y_min_sphere_printed(lam: float) -> complex:
    """Direct evaluation of the printed radical expression for the spherical ``y_min``.

    Evaluated in complex arithmetic with principal branches so that callers
    can check whether the expression is real and agrees with :func:`y_min`.
    """
    big_l = math.sin(lam)
    l2 = big_l * big_l
    a = 100 * l2 ** 3 - 36 * l2 ** 2 + 12 * cmath.sqrt(-375 * l2 ** 6 + 750 * l2 ** 5 - 471 * l2 ** 4 + 96 * l2 ** 3)
    cube = a ** (1.0 / 3.0)
    inner = 6 * cube - 216 * (-10.0 / 9.0 * l2 * l2 + 2.0 / 3.0 * l2) / cube + 60 * l2
    return cmath.asin(cmath.sqrt(inner) / 6.0)


# ---------------------------------------------------------------------------
# Refinement threshold
# ---------------------------------------------------------------------------


def saturation_radius(geometry: Geometry | str, rho: float) -> float | None:
    """Circumradius ``R_rho`` of the regular quadrangle with edge ``2 rho``.

    Returns ``None`` on the sphere when ``rho > pi/4``: no such quadrangle
    exists and the refinement threshold is undefined.
    """
    g = Geometry.parse(geometry)
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    if g is Geometry.EUCLIDEAN:
        return math.sqrt(2.0) * rho
    if g is Geometry.HYPERBOLIC:
        return math.asinh(math.sqrt(2.0) * math.sinh(rho))
    if rho > QUARTER_PI * (1 + 1e-15):
        return None
    return math.asin(min(1.0, math.sqrt(2.0) * math.sin(rho)))

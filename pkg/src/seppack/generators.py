"""Named extremal and witness configurations, plus random saturated packings."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import geometry as kern
from .analysis import Packing
from .decomposition import _delaunay, _edge_map
from .errors import DomainError
from .formulas import QUARTER_PI, tangency_residual_sphere, x1_sphere, x2_sphere
from .geometry import Geometry
from .triangles import isosceles_triangle

SQRT3 = math.sqrt(3.0)


def _lattice(u: tuple[float, float], v: tuple[float, float], window: int) -> np.ndarray:
    if window < 2:
        raise DomainError(f"window must be at least 2 fundamental cells, got {window!r}")
    pts = [(a * u[0] + b * v[0], a * u[1] + b * v[1], 1.0) for b in range(window + 1) for a in range(window + 1)]
    return np.array(pts)


def _check_unit_lambda(lam: float) -> None:
    if not 0 <= lam <= 1:
        raise DomainError(f"lambda must lie in [0, 1] for unit disks, got {lam!r}")


def density_lattice_basis(lam: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """Basis of the unit-disk lattice whose Delaunay triangles are extremal for density."""
    _check_unit_lambda(lam)
    if lam <= SQRT3 / 2:
        return (2.0, 0.0), (1.0, SQRT3)
    y = math.sqrt(2.0 * lam * lam / (1.0 + math.sqrt(1.0 - lam * lam)))
    return (2.0 * y, 0.0), (y, math.sqrt(4.0 - y * y))


def euclidean_extremal_density_lattice(lam: float, window: int = 6) -> Packing:
    """Parallelogram patch of ``(window + 1)^2`` unit disks of the extremal density lattice."""
    u, v = density_lattice_basis(lam)
    return Packing(Geometry.EUCLIDEAN, _lattice(u, v, window), 1.0, lam)


def euclidean_extremal_tightness_config(lam: float, window: int = 6) -> Packing:
    """Unit-disk lattice patch whose Delaunay triangles realize the tightness bound.

    Above ``2 sqrt(2) / 3`` the triangles have legs ``3 lam / sqrt(2)`` and
    base ``sqrt(6) lam``.
    """
    _check_unit_lambda(lam)
    if lam <= 2 * math.sqrt(2.0) / 3:
        u, v = density_lattice_basis(lam)
    else:
        y = math.sqrt(1.5) * lam
        u, v = (2.0 * y, 0.0), (y, SQRT3 * lam)
    return Packing(Geometry.EUCLIDEAN, _lattice(u, v, window), 1.0, lam)


# ---------------------------------------------------------------------------
# Sphere
# ---------------------------------------------------------------------------

PLATONIC_RADII = {
    4: math.asin(math.sqrt(2.0 / 3.0)),
    6: math.pi / 4,
    12: math.asin(1.0 / (2.0 * math.sin(2.0 * math.pi / 5.0))),
}


def platonic_vertices(n: int) -> np.ndarray:
    if n == 4:
        v = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    elif n == 6:
        v = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]], dtype=float)
    elif n == 12:
        phi = (1 + math.sqrt(5.0)) / 2
        v = np.array([[0, s1, s2 * phi] for s1 in (1, -1) for s2 in (1, -1)]
                     + [[s1, s2 * phi, 0] for s1 in (1, -1) for s2 in (1, -1)]
                     + [[s2 * phi, 0, s1] for s1 in (1, -1) for s2 in (1, -1)], dtype=float)
    else:
        raise DomainError(f"platonic cap packings exist for n in (4, 6, 12), got {n!r}")
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def platonic_caps(n: int, lam: float = 0.0) -> Packing:
    """Caps of radius ``rho_n`` centered at the vertices of a regular tetrahedron, octahedron or icosahedron."""
    return Packing(Geometry.SPHERICAL, platonic_vertices(n), PLATONIC_RADII[n], lam)


@dataclass(frozen=True)
class SpecialTiling:
    """Cap radius and separation radius of a monohedral isosceles tiling of the sphere.

    ``half_base`` is the half-base of the tile (legs ``2 rho``) and
    ``variant`` the family (1: short legs, 2: long legs) whose tangency
    relation it satisfies with residual ``residual``.
    """

    name: str
    rho: float
    lam: float
    tiles: int
    half_base: float
    variant: int
    residual: float


def special_tiling_constants(name: str) -> tuple[float, float]:
    """Closed-form ``(rho, lambda)`` for the tilings ``H16`` and ``H20``."""
    key = name.upper()
    if key == "H16":
        rho = 0.5 * math.asin(math.sqrt(2.0 * math.sqrt(2.0) - 2.0))
        lam = math.asin(2.0 * math.sin(math.pi / 8) * math.sqrt(1.0 + math.sqrt(2.0)) / math.sqrt(4.0 + math.sqrt(2.0)))
    elif key == "H20":
        c5 = math.cos(math.pi / 5)
        rho = 0.5 * math.asin(math.sqrt(1.0 + 2.0 * c5) / (1.0 + c5))
        lam = math.asin(2.0 / math.sqrt(5.0) * math.sin(math.pi / 10) * math.sqrt(1.0 + 2.0 * c5))
    else:
        raise DomainError(f"unknown special tiling {name!r}; expected H16 or H20")
    return rho, lam


def special_tiling(name: str) -> SpecialTiling:
    """Locate the tile with legs ``2 rho`` and area ``4 pi / N`` and test the tangency relation on it.

    The tile is isosceles; for fixed legs the area is unimodal in the base,
    so up to two half-bases are possible.  The one with the smaller
    tangency residual is reported.
    """
    rho, lam = special_tiling_constants(name)
    tiles = {"H16": 16, "H20": 20}[name.upper()]
    target = 4.0 * math.pi / tiles

    def area(y):
        return isosceles_triangle(Geometry.SPHERICAL, y, rho).area - target

    lo, hi = 1e-6, min(2 * rho, math.pi / 2) - 1e-9
    grid = np.linspace(lo, hi, 400)
    vals = [area(y) for y in grid]
    roots = [brentq(area, grid[k], grid[k + 1], xtol=1e-15)
             for k in range(len(grid) - 1) if vals[k] == 0 or vals[k] * vals[k + 1] < 0]
    best = None
    for y in roots:
        if not math.sin(y) > math.tan(lam):
            continue
        for variant, fn in ((1, x1_sphere), (2, x2_sphere)):
            res = abs(fn(y, lam) - rho)
            if best is None or res < best[2]:
                best = (y, variant, res)
    if best is None:
        raise DomainError(f"no admissible tile found for {name}")
    y, variant, _ = best
    return SpecialTiling(name.upper(), rho, lam, tiles, y, variant, abs(tangency_residual_sphere(rho, y, lam)))


# ---------------------------------------------------------------------------
# Contact-number witnesses
# ---------------------------------------------------------------------------


def square_grid(k: int, lam: float = 1.0) -> Packing:
    """``k x k`` unit disks with center spacing 2."""
    if k < 1:
        raise DomainError(f"grid size must be positive, got {k!r}")
    pts = np.array([(2.0 * i, 2.0 * j, 1.0) for j in range(k) for i in range(k)])
    return Packing(Geometry.EUCLIDEAN, pts, 1.0, lam)


_HEX_STEPS = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)]  # clockwise from the upper-left corner


def hexagonal_spiral(n: int) -> list[tuple[int, int]]:
    """First ``n`` axial hexagonal-lattice coordinates in ring-by-ring clockwise order."""
    if n < 1:
        raise DomainError(f"n must be positive, got {n!r}")
    out = [(0, 0)]
    ring = 1
    while len(out) < n:
        q, r = -ring, ring
        for dq, dr in _HEX_STEPS:
            for _ in range(ring):
                out.append((q, r))
                q, r = q + dq, r + dr
        ring += 1
    return out[:n]


def hexagonal_patch(n: int, lam: float = 0.0) -> Packing:
    """``n`` unit disks of the hexagonal lattice grown in spiral order."""
    coords = hexagonal_spiral(n)
    pts = np.array([(2.0 * q + r, SQRT3 * r, 1.0) for q, r in coords])
    return Packing(Geometry.EUCLIDEAN, pts, 1.0, lam)


# ---------------------------------------------------------------------------
# Random saturated packings
# ---------------------------------------------------------------------------


def _random_point(g: Geometry, rng: np.random.Generator, extent: float) -> np.ndarray:
    if g is Geometry.EUCLIDEAN:
        return np.array([*rng.uniform(-extent, extent, 2), 1.0])
    if g is Geometry.SPHERICAL:
        v = rng.normal(size=3)
        return v / np.linalg.norm(v)
    r = math.acosh(1.0 + rng.uniform() * (math.cosh(extent) - 1.0))
    return kern.polar_points(g, np.array(r), np.array(rng.uniform(0, 2 * math.pi)))


def _inside(g: Geometry, p: np.ndarray, extent: float) -> bool:
    if g is Geometry.EUCLIDEAN:
        return abs(p[0]) <= extent and abs(p[1]) <= extent
    if g is Geometry.SPHERICAL:
        return True
    return math.acosh(max(1.0, p[2])) <= extent


def _frame(g: Geometry, rho: float, extent: float) -> list[np.ndarray]:
    """Centers spaced at least ``2 rho`` along the boundary of the sampling region."""
    if g is Geometry.SPHERICAL:
        return []
    if g is Geometry.EUCLIDEAN:
        n = max(1, int(math.floor(extent / rho + 1e-12)))
        t = np.linspace(-extent, extent, n + 1)[:-1]
        sides = [(t, -extent), (extent, t), (-t, extent), (-extent, -t)]
        return [np.array([x, y, 1.0]) for sx, sy in sides for x, y in np.broadcast(sx, sy)]
    chord = lambda n: math.acosh(math.cosh(extent) ** 2 - math.sinh(extent) ** 2 * math.cos(2 * math.pi / n))
    n = 3
    while chord(n + 1) >= 2 * rho:
        n += 1
    theta = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    return list(kern.polar_points(g, np.full(n, extent), theta))


def random_saturated_packing(geometry: Geometry | str, rng: np.random.Generator, rho: float,
                             extent: float | None = None, lam: float = 0.0, attempts: int = 3000) -> Packing:
    """Random saturated packing: a boundary frame, sequential addition inside, then hole filling.

    In the plane and the hyperbolic plane the region (square of half-width
    ``extent``, or disk of radius ``extent``) is first lined with centers
    ``2 rho`` apart along its boundary; on the sphere ``extent`` is ignored.
    Points are then added at random, and finally every Delaunay circumcenter
    in the region with circumradius above ``2 rho`` is inserted until none
    is left.
    """
    g = Geometry.parse(geometry)
    if extent is None:
        extent = {Geometry.EUCLIDEAN: 8.0, Geometry.SPHERICAL: math.pi, Geometry.HYPERBOLIC: 2.0}[g]
    pts: list[np.ndarray] = _frame(g, rho, extent)
    for _ in range(attempts):
        p = _random_point(g, rng, extent)
        if not pts or np.min(kern.distances(g, np.array(pts), p)) >= 2 * rho:
            pts.append(p)
    if len(pts) < 3:
        raise DomainError("region too small for a packing of at least three disks")
    for _ in range(200):
        arr = np.array(pts)
        added = False
        for cell in _delaunay(g, arr):
            c = cell.circumcenter
            if c is None or cell.circumradius <= 2 * rho or not _inside(g, c, extent):
                continue
            if np.min(kern.distances(g, np.array(pts), c)) >= 2 * rho:
                pts.append(c)
                added = True
        if not added:
            break
    return Packing(g, np.array(pts), rho, lam)


def hull_vertex_ids(packing: Packing) -> set[int]:
    """Indices of centers on the boundary of the Delaunay decomposition."""
    cells = _delaunay(packing.geometry, packing.centers)
    return {v for e, lst in _edge_map(cells).items() if len(lst) == 1 for v in e}


def regular_triangle_packing(geometry: Geometry | str, rho: float, lam: float) -> Packing:
    """Three disks at the vertices of the regular triangle of edge ``2 rho``."""
    g = Geometry.parse(geometry)
    if g is Geometry.EUCLIDEAN:
        r = 2.0 * rho / SQRT3
    elif g is Geometry.SPHERICAL:
        r = math.asin(2.0 * math.sin(rho) / SQRT3)
    else:
        r = math.asinh(2.0 * math.sinh(rho) / SQRT3)
    theta = np.array([math.pi / 2, math.pi / 2 + 2 * math.pi / 3, math.pi / 2 + 4 * math.pi / 3])
    return Packing(g, kern.polar_points(g, np.full(3, r), theta), rho, lam)


__all__ = [
    "PLATONIC_RADII",
    "SpecialTiling",
    "density_lattice_basis",
    "euclidean_extremal_density_lattice",
    "euclidean_extremal_tightness_config",
    "hexagonal_patch",
    "hexagonal_spiral",
    "hull_vertex_ids",
    "platonic_caps",
    "platonic_vertices",
    "random_saturated_packing",
    "regular_triangle_packing",
    "special_tiling",
    "special_tiling_constants",
    "square_grid",
    "QUARTER_PI",
]

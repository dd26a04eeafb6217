"""Embedded-model primitives for the Euclidean, spherical and hyperbolic planes.

Points live in R^3:

* Euclidean plane: ``(x, y, 1)``.
* Sphere: unit vectors.
* Hyperbolic plane: upper sheet of the hyperboloid ``x0^2 + x1^2 - x2^2 = -1``.

Every geodesic is represented by a covector ``w`` such that the signed offset
of a point ``p`` is the plain dot product ``w . p``.  The covector is scaled
so that the offset converts to a distance with ``|.|`` (Euclidean),
``arcsin|.|`` (sphere) or ``arcsinh|.|`` (hyperbolic).  With this
normalization the line through ``p`` and ``q`` is ``p x q`` in all three
models and the positive side is to the left of ``p -> q``.

The array-level helpers at the bottom of the module are what the heavier
modules use in vectorized code; the :class:`ModelPoint` functions are thin
validated wrappers around them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AntipodalPointsError,
    DegenerateTriangleError,
    GeometryMismatchError,
    NoCircumcircleError,
)

NORMALIZATION_TOL = 1e-12
PREDICATE_TOL = 1e-10
DEGENERATE_AREA = 1e-14

LORENTZ = np.diag([1.0, 1.0, -1.0])


class Geometry(IntEnum):
    """Constant-curvature plane, identified by its sectional curvature."""

    HYPERBOLIC = -1
    EUCLIDEAN = 0
    SPHERICAL = 1

    @property
    def curvature(self) -> int:
        return int(self.value)

    @classmethod
    def parse(cls, value: "Geometry | str | int") -> "Geometry":
        """Accept an enum member, a curvature integer or a name such as ``"sphere"``."""
        if isinstance(value, Geometry):
            return value
        if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            return cls(int(value))
        key = str(value).strip().lower()
        aliases = {
            "e": cls.EUCLIDEAN, "e2": cls.EUCLIDEAN, "euclidean": cls.EUCLIDEAN, "plane": cls.EUCLIDEAN,
            "s": cls.SPHERICAL, "s2": cls.SPHERICAL, "sphere": cls.SPHERICAL, "spherical": cls.SPHERICAL,
            "h": cls.HYPERBOLIC, "h2": cls.HYPERBOLIC, "hyperbolic": cls.HYPERBOLIC,
        }
        if key in aliases:
            return aliases[key]
        raise ValueError(f"unknown geometry {value!r}")

    @property
    def label(self) -> str:
        return {Geometry.EUCLIDEAN: "euclidean", Geometry.SPHERICAL: "sphere",
                Geometry.HYPERBOLIC: "hyperbolic"}[self]


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ModelPoint:
    """A point of one of the three model surfaces."""

    geometry: Geometry
    coords: tuple[float, float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        c = tuple(float(v) for v in self.coords)
        if len(c) != 3 or not all(math.isfinite(v) for v in c):
            raise ValueError(f"model point needs three finite coordinates, got {self.coords!r}")
        object.__setattr__(self, "coords", c)
        problem = _model_violation(self.geometry, np.asarray(c))
        if problem:
            raise ValueError(problem)

    @property
    def xyz(self) -> np.ndarray:
        return np.array(self.coords)

    @classmethod
    def project(cls, geometry: Geometry | str, coords: Sequence[float]) -> "ModelPoint":
        """Build a point after projecting ``coords`` onto the model surface."""
        g = Geometry.parse(geometry)
        arr = normalize_points(g, np.asarray(coords, dtype=float))
        return cls(g, tuple(arr))


def _model_violation(g: Geometry, c: np.ndarray) -> str | None:
    if g is Geometry.EUCLIDEAN:
        if c[2] != 1.0:
            return f"euclidean model points have third coordinate 1, got {c[2]!r}"
    elif g is Geometry.SPHERICAL:
        if abs(float(c @ c) - 1.0) > NORMALIZATION_TOL:
            return f"spherical point off the unit sphere: |p|^2 = {float(c @ c)!r}"
    else:
        q = c[0] ** 2 + c[1] ** 2 - c[2] ** 2
        if c[2] < 1.0 - NORMALIZATION_TOL or abs(q + 1.0) > NORMALIZATION_TOL * max(1.0, c[2] ** 2):
            return f"point off the upper hyperboloid sheet: <p,p>_L = {q!r}, x2 = {c[2]!r}"
    return None


@dataclass(frozen=True)
class Geodesic:
    """A complete geodesic line.

    ``normal`` follows the per-model convention: for the sphere a unit vector
    ``n`` with the line ``{p : n . p = 0}``; for the hyperboloid a spacelike
    unit vector ``n`` with the line ``{p : <n, p>_L = 0}``; for the plane a
    triple ``(a, b, c)`` with ``a^2 + b^2 = 1`` and the line ``ax + by = c``.
    """

    geometry: Geometry
    normal: tuple[float, float, float]

    def __post_init__(self) -> None:
        object.__setattr__(self, "geometry", Geometry.parse(self.geometry))
        n = np.asarray([float(v) for v in self.normal])
        object.__setattr__(self, "normal", tuple(n))
        g = self.geometry
        if g is Geometry.EUCLIDEAN:
            err = abs(n[0] ** 2 + n[1] ** 2 - 1.0)
        elif g is Geometry.SPHERICAL:
            err = abs(float(n @ n) - 1.0)
        else:
            err = abs(n[0] ** 2 + n[1] ** 2 - n[2] ** 2 - 1.0)
        if err > NORMALIZATION_TOL * max(1.0, float(n @ n)):
            raise ValueError(f"geodesic normal is not normalized (error {err:.3e})")

    @property
    def covector(self) -> np.ndarray:
        n = np.array(self.normal)
        if self.geometry is Geometry.EUCLIDEAN:
            return np.array([n[0], n[1], -n[2]])
        if self.geometry is Geometry.HYPERBOLIC:
            return LORENTZ @ n
        return n

    @classmethod
    def from_covector(cls, geometry: Geometry | str, w: Sequence[float]) -> "Geodesic":
        g = Geometry.parse(geometry)
        w = normalize_covector(g, np.asarray(w, dtype=float))
        if g is Geometry.EUCLIDEAN:
            return cls(g, (w[0], w[1], -w[2]))
        if g is Geometry.HYPERBOLIC:
            return cls(g, tuple(LORENTZ @ w))
        return cls(g, tuple(w))


@dataclass(frozen=True)
class DiskSpec:
    """A closed geodesic disk (spherical cap on the sphere)."""

    center: ModelPoint
    radius: float

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")
        if self.center.geometry is Geometry.SPHERICAL and not self.radius < math.pi / 2:
            raise ValueError("spherical cap radius must be below pi/2")


@dataclass(frozen=True)
class Triangle:
    """Three pairwise distinct, non-collinear points of one model."""

    a: ModelPoint
    b: ModelPoint
    c: ModelPoint

    def __post_init__(self) -> None:
        g = _common_geometry(self.a, self.b, self.c)
        pts = np.array([self.a.coords, self.b.coords, self.c.coords])
        if g is Geometry.SPHERICAL:
            for i, j in ((0, 1), (1, 2), (2, 0)):
                _check_not_antipodal(pts[i], pts[j])
        if abs(signed_area(g, pts[0], pts[1], pts[2])) < DEGENERATE_AREA:
            raise DegenerateTriangleError("triangle vertices are collinear or coincide")

    @property
    def geometry(self) -> Geometry:
        return self.a.geometry

    @property
    def vertices(self) -> tuple[ModelPoint, ModelPoint, ModelPoint]:
        return (self.a, self.b, self.c)

    @property
    def array(self) -> np.ndarray:
        return np.array([self.a.coords, self.b.coords, self.c.coords])


def _common_geometry(*items) -> Geometry:
    geoms = {it.geometry for it in items}
    if len(geoms) != 1:
        raise GeometryMismatchError(f"objects from different geometries: {sorted(g.label for g in geoms)}")
    return geoms.pop()


def _check_not_antipodal(p: np.ndarray, q: np.ndarray) -> None:
    if float(np.linalg.norm(p + q)) < NORMALIZATION_TOL:
        raise AntipodalPointsError("antipodal spherical points have no unique shortest arc")


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def origin(geometry: Geometry | str) -> ModelPoint:
    return ModelPoint(Geometry.parse(geometry), (0.0, 0.0, 1.0))


def euclidean_point(x: float, y: float) -> ModelPoint:
    return ModelPoint(Geometry.EUCLIDEAN, (x, y, 1.0))


def polar_point(geometry: Geometry | str, r: float, theta: float) -> ModelPoint:
    """Point at distance ``r`` from the origin ``(0, 0, 1)`` in direction ``theta``."""
    g = Geometry.parse(geometry)
    return ModelPoint(g, tuple(polar_points(g, np.asarray(r), np.asarray(theta))))


def as_points(geometry: Geometry | str, coords: Iterable[Sequence[float]]) -> list[ModelPoint]:
    g = Geometry.parse(geometry)
    return [ModelPoint(g, tuple(c)) for c in coords]


# ---------------------------------------------------------------------------
# Public point-level operations
# ---------------------------------------------------------------------------


def distance(p: ModelPoint, q: ModelPoint) -> float:
    g = _common_geometry(p, q)
    if g is Geometry.SPHERICAL:
        _check_not_antipodal(p.xyz, q.xyz)
    return float(distances(g, p.xyz, q.xyz))


def midpoint(p: ModelPoint, q: ModelPoint) -> ModelPoint:
    g = _common_geometry(p, q)
    if g is Geometry.SPHERICAL:
        _check_not_antipodal(p.xyz, q.xyz)
    return ModelPoint(g, tuple(midpoints(g, p.xyz, q.xyz)))


def signed_offset(p: ModelPoint, line: Geodesic) -> float:
    """Signed offset of ``p`` from ``line``: positive on the left of the line's direction."""
    _common_geometry(p, line)
    return float(line.covector @ p.xyz)


def point_line_distance(p: ModelPoint, line: Geodesic) -> float:
    return float(offset_to_distance(line.geometry, signed_offset(p, line)))


def line_through(p: ModelPoint, q: ModelPoint) -> Geodesic:
    g = _common_geometry(p, q)
    if g is Geometry.SPHERICAL:
        _check_not_antipodal(p.xyz, q.xyz)
    if distance(p, q) == 0.0:
        raise DegenerateTriangleError("a line needs two distinct points")
    return Geodesic.from_covector(g, line_covector(g, p.xyz, q.xyz))


def perpendicular_bisector(p: ModelPoint, q: ModelPoint) -> Geodesic:
    """Bisector of ``[p, q]``, oriented so that ``p`` has positive offset."""
    g = _common_geometry(p, q)
    if distance(p, q) == 0.0:
        raise DegenerateTriangleError("the bisector of a point with itself is undefined")
    return Geodesic.from_covector(g, bisector_covector(g, p.xyz, q.xyz))


def circumcircle(t: Triangle) -> tuple[ModelPoint, float]:
    center, radius = circumcenter(t.geometry, *t.array)
    return ModelPoint(t.geometry, tuple(center)), radius


def triangle_angles(t: Triangle) -> tuple[float, float, float]:
    """Interior angles at ``a``, ``b`` and ``c``."""
    a, b, c = t.array
    g = t.geometry
    return (vertex_angle(g, a, b, c), vertex_angle(g, b, c, a), vertex_angle(g, c, a, b))


def triangle_area(t: Triangle) -> float:
    """Area from the interior angles (angle excess, angle defect or cross product)."""
    g = t.geometry
    if g is Geometry.EUCLIDEAN:
        return abs(signed_area(g, *t.array))
    total = sum(triangle_angles(t))
    return total - math.pi if g is Geometry.SPHERICAL else math.pi - total


def contains_circumcenter(t: Triangle, tol: float = PREDICATE_TOL) -> bool:
    """True when the circumcenter lies in the closed triangle (boundary within ``tol`` counts)."""
    g = t.geometry
    pts = t.array
    center, _ = circumcenter(g, *pts)
    for i in range(3):
        p, q, r = pts[i], pts[(i + 1) % 3], pts[(i + 2) % 3]
        w = normalize_covector(g, line_covector(g, p, q))
        side = math.copysign(1.0, float(w @ r))
        if side * offset_to_distance(g, float(w @ center), signed=True) < -tol:
            return False
    return True


def line_separates_disks(line: Geodesic, first: DiskSpec, second: DiskSpec, disks: Sequence[DiskSpec]) -> bool:
    """True when ``line`` avoids every disk interior and puts the two given centers on opposite sides."""
    _common_geometry(line, first.center, second.center, *(d.center for d in disks))
    w = line.covector
    for d in disks:
        if offset_to_distance(line.geometry, float(w @ d.center.xyz)) < d.radius - 1e-12:
            return False
    s1 = float(w @ first.center.xyz)
    s2 = float(w @ second.center.xyz)
    return (s1 > 0 > s2) or (s1 < 0 < s2)


# ---------------------------------------------------------------------------
# Array-level helpers
# ---------------------------------------------------------------------------


def lorentz(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return u[..., 0] * v[..., 0] + u[..., 1] * v[..., 1] - u[..., 2] * v[..., 2]


def normalize_points(g: Geometry, p: np.ndarray) -> np.ndarray:
    p = np.array(p, dtype=float)
    if g is Geometry.EUCLIDEAN:
        return p / p[..., 2:3]
    if g is Geometry.SPHERICAL:
        return p / np.linalg.norm(p, axis=-1, keepdims=True)
    q = -lorentz(p, p)
    if np.any(q <= 0):
        raise ValueError("vector is not timelike and cannot be projected to the hyperboloid")
    p = p / np.sqrt(q)[..., None]
    return np.where(p[..., 2:3] < 0, -p, p)


def distances(g: Geometry, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Geodesic distances, computed from chord lengths for accuracy at small scales."""
    d = np.asarray(p, float) - np.asarray(q, float)
    if g is Geometry.EUCLIDEAN:
        return np.hypot(d[..., 0], d[..., 1])
    if g is Geometry.SPHERICAL:
        chord = np.linalg.norm(d, axis=-1)
        return 2.0 * np.arcsin(np.minimum(chord / 2.0, 1.0))
    chord2 = np.maximum(lorentz(d, d), 0.0)
    return 2.0 * np.arcsinh(np.sqrt(chord2) / 2.0)


def pairwise_distances(g: Geometry, pts: np.ndarray) -> np.ndarray:
    pts = np.asarray(pts, float)
    return distances(g, pts[:, None, :], pts[None, :, :])


def midpoints(g: Geometry, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    s = np.asarray(p, float) + np.asarray(q, float)
    if g is Geometry.EUCLIDEAN:
        return s / 2.0
    return normalize_points(g, s)


def polar_points(g: Geometry, r: np.ndarray, theta: np.ndarray) -> np.ndarray:
    r = np.asarray(r, float)
    theta = np.asarray(theta, float)
    if g is Geometry.EUCLIDEAN:
        s, c = r, np.ones_like(r)
    elif g is Geometry.SPHERICAL:
        s, c = np.sin(r), np.cos(r)
    else:
        s, c = np.sinh(r), np.cosh(r)
    return np.stack([s * np.cos(theta), s * np.sin(theta), c], axis=-1)


def normalize_covector(g: Geometry, w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, float)
    if g is Geometry.EUCLIDEAN:
        scale = math.hypot(w[0], w[1])
    elif g is Geometry.SPHERICAL:
        scale = float(np.linalg.norm(w))
    else:
        q = w[0] ** 2 + w[1] ** 2 - w[2] ** 2
        if q <= 0:
            raise DegenerateTriangleError("covector does not define a hyperbolic line")
        scale = math.sqrt(q)
    if scale == 0.0:
        raise DegenerateTriangleError("zero covector does not define a line")
    return w / scale


def line_covector(g: Geometry, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Normalized covector of the line through ``p`` and ``q`` (left side positive)."""
    return normalize_covector(g, np.cross(p, q))


def bisector_covector(g: Geometry, p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Normalized covector of the perpendicular bisector, positive towards ``p``."""
    p = np.asarray(p, float)
    q = np.asarray(q, float)
    if g is Geometry.EUCLIDEAN:
        w = np.array([p[0] - q[0], p[1] - q[1], -(p[0] ** 2 + p[1] ** 2 - q[0] ** 2 - q[1] ** 2) / 2.0])
    elif g is Geometry.SPHERICAL:
        w = p - q
    else:
        w = LORENTZ @ (p - q)
    return normalize_covector(g, w)


def offset_to_distance(g: Geometry, offset, signed: bool = False):
    """Convert normalized signed offsets into geodesic distances."""
    off = np.asarray(offset, float)
    if g is Geometry.EUCLIDEAN:
        d = off
    elif g is Geometry.SPHERICAL:
        d = np.arcsin(np.clip(off, -1.0, 1.0))
    else:
        d = np.arcsinh(off)
    out = d if signed else np.abs(d)
    return float(out) if np.ndim(out) == 0 else out


def to_origin(g: Geometry, p: np.ndarray) -> np.ndarray:
    """Matrix of an isometry of the model taking ``p`` to the origin ``(0, 0, 1)``."""
    p = np.asarray(p, float)
    if g is Geometry.EUCLIDEAN:
        return np.array([[1.0, 0.0, -p[0]], [0.0, 1.0, -p[1]], [0.0, 0.0, 1.0]])
    if g is Geometry.HYPERBOLIC:
        u = p[:2]
        m = np.empty((3, 3))
        m[:2, :2] = np.eye(2) + np.outer(u, u) / (1.0 + p[2])
        m[:2, 2] = -u
        m[2, :2] = -u
        m[2, 2] = p[2]
        return m
    v = np.array([p[1], -p[0], 0.0])  # p x e3
    s2 = float(v @ v)
    c = p[2]
    if s2 < 1e-30:
        return np.eye(3) if c > 0 else np.diag([1.0, -1.0, -1.0])
    vx = np.array([[0.0, -v[2], v[1]], [v[2], 0.0, -v[0]], [-v[1], v[0], 0.0]])
    return np.eye(3) + vx + vx @ vx * ((1.0 - c) / s2)


def direction_angles(g: Geometry, at: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Polar angle of the initial direction of each geodesic from ``at`` to a target.

    Angles are measured in a tangent frame at ``at`` obtained by moving ``at``
    to the origin; differences of these angles are intrinsic.
    """
    moved = np.asarray(targets, float) @ to_origin(g, at).T
    return np.arctan2(moved[..., 1], moved[..., 0])


def vertex_angle(g: Geometry, at: np.ndarray, p: np.ndarray, q: np.ndarray) -> float:
    """Unsigned angle at ``at`` between the geodesics towards ``p`` and ``q``."""
    ang = direction_angles(g, at, np.array([p, q]))
    d = abs(float(ang[1] - ang[0])) % (2 * math.pi)
    return min(d, 2 * math.pi - d)


def polygon_angles(g: Geometry, verts: np.ndarray) -> np.ndarray:
    """Interior angles of a counterclockwise simple polygon, each in (0, 2 pi)."""
    verts = np.asarray(verts, float)
    k = len(verts)
    out = np.empty(k)
    for i in range(k):
        prev_pt, cur, next_pt = verts[i - 1], verts[i], verts[(i + 1) % k]
        ang = direction_angles(g, cur, np.array([next_pt, prev_pt]))
        out[i] = (ang[1] - ang[0]) % (2 * math.pi)
    return out


def orientation(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    """Sign-carrying determinant ``det[a, b, c]``; positive for counterclockwise triples."""
    return float(np.linalg.det(np.array([a, b, c], dtype=float)))


def signed_area(g: Geometry, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> float:
    """Signed area of a geodesic triangle, positive when counterclockwise.

    Uses the half-area tangent formulas (Van Oosterom-Strackee on the sphere
    and its Lorentzian analogue), which stay accurate for tiny triangles.
    """
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    c = np.asarray(c, float)
    if g is Geometry.EUCLIDEAN:
        return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))
    det = orientation(a, b, c)
    if g is Geometry.SPHERICAL:
        denom = 1.0 + a @ b + b @ c + c @ a
    else:
        denom = 1.0 - lorentz(a, b) - lorentz(b, c) - lorentz(c, a)
    return 2.0 * math.atan2(det, float(denom))


def polygon_area(g: Geometry, verts: np.ndarray) -> float:
    """Signed area of a simple polygon via a fan of signed triangles."""
    verts = np.asarray(verts, float)
    return float(sum(signed_area(g, verts[0], verts[i], verts[i + 1]) for i in range(1, len(verts) - 1)))


def circumcenter(g: Geometry, a: np.ndarray, b: np.ndarray, c: np.ndarray) -> tuple[np.ndarray, float]:
    """Circumcenter and circumradius of a triangle given by model coordinates."""
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    c = np.asarray(c, float)
    if abs(signed_area(g, a, b, c)) < DEGENERATE_AREA:
        raise DegenerateTriangleError("triangle vertices are collinear or coincide")
    if g is Geometry.EUCLIDEAN:
        bx, by = b[0] - a[0], b[1] - a[1]
        cx, cy = c[0] - a[0], c[1] - a[1]
        d = 2.0 * (bx * cy - by * cx)
        b2, c2 = bx * bx + by * by, cx * cx + cy * cy
        ux = (cy * b2 - by * c2) / d
        uy = (bx * c2 - cx * b2) / d
        center = np.array([a[0] + ux, a[1] + uy, 1.0])
    else:
        m = np.cross(b - a, c - a)
        if g is Geometry.SPHERICAL:
            center = m / np.linalg.norm(m)
            if center @ a < 0:
                center = -center
            if center @ a < NORMALIZATION_TOL:
                raise NoCircumcircleError("spherical triangle has no circumdisk of radius below pi/2")
        else:
            o = LORENTZ @ m
            q = lorentz(o, o)
            if not q < -1e-14 * float(o @ o):
                raise NoCircumcircleError("hyperbolic vertices lie on a horocycle or hypercycle")
            center = o / math.sqrt(-q)
            if center[2] < 0:
                center = -center
    radius = float(np.mean(distances(g, center, np.array([a, b, c]))))
    return center, radius


def to_chart(g: Geometry, pts: np.ndarray, chart: str = "default") -> np.ndarray:
    """Planar chart coordinates.

    ``default`` is the identity chart for the plane, the orthographic view from
    above for the sphere and the Poincare disk for the hyperboloid.  ``klein``
    selects the Beltrami-Klein chart (geodesics become straight) for the
    hyperboloid and the gnomonic chart for the sphere.
    """
    pts = np.asarray(pts, float)
    if g is Geometry.EUCLIDEAN:
        return pts[..., :2].copy()
    if chart == "klein":
        return pts[..., :2] / pts[..., 2:3]
    if g is Geometry.SPHERICAL:
        return pts[..., :2].copy()
    return pts[..., :2] / (1.0 + pts[..., 2:3])


def random_isometry(g: Geometry, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    """Random isometry matrix acting on model coordinates."""
    theta = rng.uniform(0, 2 * math.pi)
    c, s = math.cos(theta), math.sin(theta)
    rot = np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
    if g is Geometry.EUCLIDEAN:
        rot[:2, 2] = rng.normal(size=2) * scale
        return rot
    if g is Geometry.SPHERICAL:
        q, r = np.linalg.qr(rng.normal(size=(3, 3)))
        q = q @ np.diag(np.sign(np.diag(r)))
        if np.linalg.det(q) < 0:
            q[:, 0] = -q[:, 0]
        return q
    t = rng.uniform(-scale, scale)
    boost = np.array([[math.cosh(t), 0.0, math.sinh(t)], [0.0, 1.0, 0.0], [math.sinh(t), 0.0, math.cosh(t)]])
    return rot @ boost

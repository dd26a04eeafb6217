"""Delaunay, Molnar and refined Molnar decompositions of finite point sets.

Delaunay cells come from a single convex-hull computation in R^3:

* plane: points lifted to the paraboloid ``z = x^2 + y^2``, lower facets kept;
* sphere: hull of the unit vectors, facets with the origin on their inner side;
* hyperbolic plane: hull of the hyperboloid points, facets facing the origin.

Adjacent triangles whose fourth vertex lies on the circumcircle (within
``1e-10``) are merged into one polygonal cell.

Molnar step: a cell whose circumcenter lies outside it (or on its boundary)
has a separating side; that side is replaced by the bridge through the
circumcenter.  A bridge is applied only when it is geometrically consistent
(the neighbouring cell exists and the new apex lands where the construction
requires); cells whose bridge cannot be applied, and cells with no
circumcircle, stay as flagged boundary cells.

Refinement: every fannable cell is cut from its circumcenter ``v`` into one
piece per side.  A side that receives a bridge with apex ``v'`` yields the
chevron ``cl(conv{v, ci, cj} - conv{v', ci, cj})``; other sides yield the
triangle ``conv{v, ci, cj}``.  Cells that contain their circumcenter, have
circumradius at most ``R_rho`` and receive no bridge stay whole as type 1
cells (polygons are fanned from their lowest-index vertex).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from . import geometry as kern
from .errors import DegenerateTriangleError, DomainError, NoCircumcircleError, NotSaturatedError
from .formulas import saturation_radius
from .geometry import Geometry
from .triangles import sector_weight

COCIRCULAR_TOL = 1e-10
SIDE_TOL = 1e-10

VertexKey = tuple  # ("p", point index) or ("o", Delaunay cell index)


# ---------------------------------------------------------------------------
# Data types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DelaunayCell:
    """Convex Delaunay polygon, vertices counterclockwise.

    ``circumcenter`` and ``circumradius`` are ``None`` for hyperbolic cells
    whose vertices lie on a hypercycle or horocycle.
    """

    vertex_ids: tuple[int, ...]
    vertices: np.ndarray
    circumcenter: np.ndarray | None
    circumradius: float | None

    @property
    def size(self) -> int:
        return len(self.vertex_ids)

    def edges(self) -> list[tuple[int, int]]:
        ids = self.vertex_ids
        return [(ids[k], ids[(k + 1) % len(ids)]) for k in range(len(ids))]


@dataclass(frozen=True, eq=False)
class Bridge:
    """Two-segment path ``[ci, apex] + [apex, cj]`` replacing a separating side."""

    source: int
    edge: tuple[int, int]
    apex: np.ndarray
    target: int | None
    degenerate: bool
    applied: bool


@dataclass(frozen=True, eq=False)
class MolnarCell:
    """Cell of a Molnar or refined Molnar decomposition.

    ``kind`` is ``"molnar"`` (unrefined), ``"type1"``, ``"type2"`` or
    ``"boundary"``.  Type 2 cells carry the generating edge, the apex ``v``
    (circumcenter of the source Delaunay cell) and the inner apex ``v'``
    (``None`` when the cell is the full triangle ``conv{v, ci, cj}``).
    """

    kind: str
    keys: tuple[VertexKey, ...]
    vertices: np.ndarray
    source: int
    circumradius: float | None = None
    generating_edge: tuple[int, int] | None = None
    apex: np.ndarray | None = None
    inner_apex: np.ndarray | None = None
    interior: bool = True

    @property
    def point_ids(self) -> list[int]:
        return [k[1] for k in self.keys if k[0] == "p"]

    def edge_keys(self) -> list[frozenset]:
        n = len(self.keys)
        return [frozenset((self.keys[i], self.keys[(i + 1) % n])) for i in range(n)]


@dataclass(frozen=True, eq=False)
class Decomposition:
    geometry: Geometry
    points: np.ndarray
    delaunay_cells: tuple[DelaunayCell, ...]
    cells: tuple[MolnarCell, ...]
    bridges: tuple[Bridge, ...]
    hull_edges: frozenset
    hull_vertices: frozenset
    stage: str
    rho: float | None = None
    threshold: float | None = None
    notes: dict = field(default_factory=dict)

    @property
    def covers_sphere(self) -> bool:
        return self.geometry is Geometry.SPHERICAL and not self.hull_edges

    def vertex_coords(self, key: VertexKey) -> np.ndarray:
        if key[0] == "p":
            return self.points[key[1]]
        return self.delaunay_cells[key[1]].circumcenter

    def total_area(self) -> float:
        return float(sum(cell_area(self.geometry, c) for c in self.cells))

    def interior_cells(self) -> list[MolnarCell]:
        return [c for c in self.cells if c.interior]

    def records(self) -> list[str]:
        """One tab-separated record per cell: kind, vertices, circumcenter, circumradius."""
        out = []
        for c in self.cells:
            verts = "|".join(" ".join(f"{v:.17g}" for v in p) for p in c.vertices)
            src = self.delaunay_cells[c.source]
            center = "-" if src.circumcenter is None else " ".join(f"{v:.17g}" for v in src.circumcenter)
            radius = c.circumradius if c.circumradius is not None else src.circumradius
            rtxt = "-" if radius is None else f"{radius:.17g}"
            flag = "interior" if c.interior else "boundary"
            out.append(f"{c.kind}\t{flag}\t{verts}\t{center}\t{rtxt}")
        return out


# ---------------------------------------------------------------------------
# Input handling and small predicates
# ---------------------------------------------------------------------------


def as_point_array(points, geometry: Geometry | str) -> tuple[Geometry, np.ndarray]:
    """Model-coordinate array ``(n, 3)`` from ModelPoints or raw coordinates."""
    g = Geometry.parse(geometry)
    pts = []
    for p in points:
        if isinstance(p, kern.ModelPoint):
            if p.geometry is not g:
                raise kern.GeometryMismatchError("point geometry differs from the requested geometry")
            pts.append(p.xyz)
        else:
            pts.append(kern.ModelPoint(g, tuple(float(v) for v in p)).xyz)
    arr = np.array(pts, dtype=float).reshape(-1, 3)
    return g, arr


def _signed_side_distance(g: Geometry, a: np.ndarray, b: np.ndarray, p: np.ndarray) -> float:
    """Signed distance of ``p`` from the line ``a -> b`` (left positive)."""
    w = kern.line_covector(g, a, b)
    return kern.offset_to_distance(g, float(w @ p), signed=True)


def _inside_polygon(g: Geometry, poly: np.ndarray, p: np.ndarray, tol: float = SIDE_TOL) -> bool:
    """Closed containment of ``p`` in a convex counterclockwise polygon."""
    k = len(poly)
    return all(_signed_side_distance(g, poly[i], poly[(i + 1) % k], p) >= -tol for i in range(k))


def segments_cross(a: np.ndarray, b: np.ndarray, c: np.ndarray, d: np.ndarray, tol: float = 1e-12) -> bool:
    """Proper crossing of geodesic segments ``[a, b]`` and ``[c, d]`` (shared endpoints excluded)."""
    def orient(p, q, r):
        m = np.array([p, q, r], dtype=float)
        scale = float(np.prod(np.linalg.norm(m, axis=1)))
        return np.linalg.det(m) / scale
    d1, d2 = orient(a, b, c), orient(a, b, d)
    d3, d4 = orient(c, d, a), orient(c, d, b)
    return d1 * d2 < -tol * tol and d3 * d4 < -tol * tol and min(abs(d1), abs(d2), abs(d3), abs(d4)) > tol


# ---------------------------------------------------------------------------
# Delaunay
# ---------------------------------------------------------------------------


def _lift(g: Geometry, pts: np.ndarray) -> np.ndarray:
    if g is Geometry.EUCLIDEAN:
        xy = pts[:, :2] - pts[:, :2].mean(axis=0)
        scale = float(np.max(np.linalg.norm(xy, axis=1))) or 1.0
        xy = xy / scale
        return np.column_stack([xy, (xy ** 2).sum(axis=1)])
    return pts.copy()


def _keep_facet(g: Geometry, eq: np.ndarray, tol: float) -> bool:
    if g is Geometry.EUCLIDEAN:
        return eq[2] < -tol
    if g is Geometry.SPHERICAL:
        return eq[3] < -tol
    return eq[3] > tol


def _check_distinct(g: Geometry, pts: np.ndarray) -> None:
    if len(pts) < 3:
        raise DomainError(f"a Delaunay decomposition needs at least 3 points, got {len(pts)}")
    d = kern.pairwise_distances(g, pts)
    np.fill_diagonal(d, np.inf)
    if np.min(d) <= 0:
        raise DomainError("input points must be pairwise distinct")
    # Antipodal pairs are allowed: a kept facet has the origin strictly on
    # its inner side, so its edges are never antipodal.


def _ccw(g: Geometry, pts: np.ndarray, ids: list[int]) -> list[int]:
    a, b, c = (pts[i] for i in ids)
    if kern.orientation(a, b, c) < 0:
        return [ids[0], ids[2], ids[1]]
    return list(ids)


def _circle(g: Geometry, pts: np.ndarray, ids) -> tuple[np.ndarray | None, float | None]:
    try:
        return kern.circumcenter(g, *(pts[i] for i in ids[:3]))
    except (NoCircumcircleError, DegenerateTriangleError):
        return None, None


def _order_around(g: Geometry, pts: np.ndarray, ids: list[int], center: np.ndarray | None) -> list[int]:
    if center is None:
        chart = kern.to_chart(g, pts[ids], chart="klein")
        mid = chart.mean(axis=0)
        ang = np.arctan2(chart[:, 1] - mid[1], chart[:, 0] - mid[0])
    else:
        ang = kern.direction_angles(g, center, pts[ids])
    return [ids[k] for k in np.argsort(ang, kind="stable")]


def _single_cell(g: Geometry, pts: np.ndarray) -> list[DelaunayCell]:
    """Degenerate hull input: all points cocircular (one cell) or collinear (error)."""
    n = len(pts)
    best = None
    for i in range(1, n):
        for j in range(i + 1, n):
            if abs(kern.signed_area(g, pts[0], pts[i], pts[j])) >= kern.DEGENERATE_AREA:
                best = (0, i, j)
                break
        if best:
            break
    if best is None:
        raise DegenerateTriangleError("all input points are collinear")
    center, radius = _circle(g, pts, best)
    if center is None or np.max(np.abs(kern.distances(g, center, pts) - radius)) > COCIRCULAR_TOL:
        raise DegenerateTriangleError("degenerate hull input that is neither collinear nor cocircular")
    ids = _order_around(g, pts, list(range(n)), center)
    return [DelaunayCell(tuple(ids), pts[ids], center, radius)]


def delaunay(points, geometry: Geometry | str) -> list[DelaunayCell]:
    """Delaunay cells of a finite point set, cocircular triangles merged."""
    g, pts = as_point_array(points, geometry)
    return _delaunay(g, pts)


def _delaunay(g: Geometry, pts: np.ndarray) -> list[DelaunayCell]:
    _check_distinct(g, pts)
    lifted = _lift(g, pts)
    try:
        hull = ConvexHull(lifted)
    except QhullError:
        return _single_cell(g, pts)
    scale = float(np.max(np.abs(lifted)))
    keep = [s for s in range(len(hull.simplices)) if _keep_facet(g, hull.equations[s], 1e-12 * max(1.0, scale))]
    if not keep:
        raise DegenerateTriangleError("no Delaunay facets found; points may be collinear")
    kept = set(keep)
    covered = set(np.unique(hull.simplices[keep]))
    if len(covered) != len(pts):
        missing = sorted(set(range(len(pts))) - covered)
        raise DegenerateTriangleError(f"points {missing} are not vertices of the decomposition")

    circles = {s: _circle(g, pts, list(hull.simplices[s])) for s in keep}

    parent = {s: s for s in keep}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    for s in keep:
        center, radius = circles[s]
        for t in hull.neighbors[s]:
            if t not in kept or t < s:
                continue
            extra = (set(hull.simplices[t]) - set(hull.simplices[s])).pop()
            other = (set(hull.simplices[s]) - set(hull.simplices[t])).pop()
            if center is not None and circles[t][0] is not None:
                cocircular = abs(float(kern.distances(g, center, pts[extra])) - radius) <= COCIRCULAR_TOL
                cocircular = cocircular and abs(
                    float(kern.distances(g, circles[t][0], pts[other])) - circles[t][1]) <= COCIRCULAR_TOL
            else:
                eq = hull.equations[s]
                cocircular = abs(float(eq[:3] @ lifted[extra] + eq[3])) <= COCIRCULAR_TOL * max(1.0, scale)
            if cocircular:
                parent[find(t)] = find(s)

    groups: dict[int, set[int]] = defaultdict(set)
    for s in keep:
        groups[find(s)].update(int(v) for v in hull.simplices[s])

    cells = []
    for root in sorted(groups):
        ids = sorted(groups[root])
        if len(ids) == 3:
            ids = _ccw(g, pts, ids)
            center, radius = circles[root]
        else:
            center, radius = circles[root]
            ids = _order_around(g, pts, ids, center)
        cells.append(DelaunayCell(tuple(ids), pts[ids], center, radius))
    return cells


def _edge_map(cells) -> dict[frozenset, list[tuple[int, int]]]:
    emap: dict[frozenset, list[tuple[int, int]]] = defaultdict(list)
    for f, cell in enumerate(cells):
        for k, (i, j) in enumerate(cell.edges()):
            emap[frozenset((i, j))].append((f, k))
    return emap


# ---------------------------------------------------------------------------
# Molnar bridges
# ---------------------------------------------------------------------------


@dataclass
class _Structure:
    g: Geometry
    pts: np.ndarray
    cells: list[DelaunayCell]
    emap: dict
    hull_edges: frozenset
    hull_vertices: frozenset
    separating: dict  # cell -> (edge index, degenerate)
    fannable: list[bool]
    incoming: dict  # cell -> {edge index: source cell}

    def neighbor(self, f: int, k: int) -> int | None:
        i, j = self.cells[f].edges()[k]
        for other, _ in self.emap[frozenset((i, j))]:
            if other != f:
                return other
        return None

    def edge_index(self, f: int, edge: frozenset) -> int:
        for k, (i, j) in enumerate(self.cells[f].edges()):
            if frozenset((i, j)) == edge:
                return k
        raise KeyError(edge)


def _separating_side(g: Geometry, cell: DelaunayCell) -> tuple[int, bool] | None:
    if cell.circumcenter is None:
        return None
    v = cell.vertices
    n = len(v)
    offs = [_signed_side_distance(g, v[k], v[(k + 1) % n], cell.circumcenter) for k in range(n)]
    k = int(np.argmin(offs))
    if offs[k] > SIDE_TOL:
        return None
    return k, offs[k] >= -SIDE_TOL


def _build_structure(g: Geometry, pts: np.ndarray) -> _Structure:
    cells = _delaunay(g, pts)
    emap = _edge_map(cells)
    hull_edges = frozenset(e for e, lst in emap.items() if len(lst) == 1)
    hull_vertices = frozenset(v for e in hull_edges for v in e)
    separating = {}
    for f, cell in enumerate(cells):
        side = _separating_side(g, cell)
        if side is not None:
            separating[f] = side
    st = _Structure(g, pts, cells, emap, hull_edges, hull_vertices, separating,
                    [c.circumcenter is not None for c in cells], {})
    _resolve_bridges(st)
    return st


def _bridge_ok_into_fannable(st: _Structure, f: int, target: int, edge: frozenset) -> bool:
    g = st.g
    if target in st.separating and st.edge_index(target, edge) == st.separating[target][0]:
        return False
    i, j = st.cells[f].edges()[st.separating[f][0]]
    o_f, o_t = st.cells[f].circumcenter, st.cells[target].circumcenter
    if float(kern.distances(g, o_f, o_t)) <= SIDE_TOL:
        return False
    # orient (cj, ci, o_target): the edge seen from the target is reversed
    tri = np.array([st.pts[j], st.pts[i], o_t])
    return _inside_polygon(g, tri, o_f)


def _resolve_bridges(st: _Structure) -> None:
    """Monotone fixpoint: drop bridges that cannot be applied until all remaining ones are consistent."""
    for f, (k, _) in st.separating.items():
        if st.neighbor(f, k) is None:
            st.fannable[f] = False
    while True:
        changed = False
        incoming: dict[int, dict[int, int]] = defaultdict(dict)
        for f, (k, _) in st.separating.items():
            if not st.fannable[f]:
                continue
            target = st.neighbor(f, k)
            edge = frozenset(st.cells[f].edges()[k])
            if st.fannable[target]:
                ok = _bridge_ok_into_fannable(st, f, target, edge)
            else:
                ok = _inside_polygon(st.g, st.cells[target].vertices, st.cells[f].circumcenter)
            if not ok:
                st.fannable[f] = False
                changed = True
                continue
            incoming[target][st.edge_index(target, edge)] = f
        if changed:
            continue
        for target, srcs in incoming.items():
            if st.fannable[target]:
                continue
            items = list(srcs.items())
            for a in range(len(items)):
                for b in range(a + 1, len(items)):
                    if _dents_cross(st, target, items[a], items[b]):
                        st.fannable[items[a][1]] = False
                        st.fannable[items[b][1]] = False
                        changed = True
        if not changed:
            st.incoming = dict(incoming)
            return


def _dents_cross(st: _Structure, target: int, first, second) -> bool:
    segs = []
    for k, src in (first, second):
        i, j = st.cells[target].edges()[k]
        o = st.cells[src].circumcenter
        segs.append([(st.pts[i], o), (o, st.pts[j])])
    return any(segments_cross(a, b, c, d) for a, b in segs[0] for c, d in segs[1])


def _bridges(st: _Structure) -> tuple[Bridge, ...]:
    out = []
    for f, (k, degenerate) in sorted(st.separating.items()):
        i, j = st.cells[f].edges()[k]
        out.append(Bridge(f, (i, j), st.cells[f].circumcenter, st.neighbor(f, k), degenerate, st.fannable[f]))
    return tuple(out)


def _molnar_polygon(st: _Structure, f: int) -> tuple[list[VertexKey], list[np.ndarray]]:
    """Boundary of the Molnar cell grown from Delaunay cell ``f`` (bump and dents inserted)."""
    cell = st.cells[f]
    keys, coords = [], []
    own = st.separating.get(f)
    dents = st.incoming.get(f, {})
    for k, (i, j) in enumerate(cell.edges()):
        keys.append(("p", i))
        coords.append(st.pts[i])
        if own is not None and own[0] == k and st.fannable[f]:
            keys.append(("o", f))
            coords.append(cell.circumcenter)
        elif k in dents:
            src = dents[k]
            keys.append(("o", src))
            coords.append(st.cells[src].circumcenter)
    return keys, coords


def _cell_interior(st: _Structure, f: int) -> bool:
    if st.g is Geometry.SPHERICAL and not st.hull_edges:
        return True
    return not any(v in st.hull_vertices for v in st.cells[f].vertex_ids)


def molnar(points, geometry: Geometry | str) -> Decomposition:
    """Delaunay decomposition with every applicable separating side replaced by its bridge."""
    g, pts = as_point_array(points, geometry)
    st = _build_structure(g, pts)
    cells = []
    for f in range(len(st.cells)):
        keys, coords = _molnar_polygon(st, f)
        kind = "molnar" if st.fannable[f] else "boundary"
        cells.append(MolnarCell(kind, tuple(keys), np.array(coords), f,
                                circumradius=st.cells[f].circumradius,
                                interior=st.fannable[f] and _cell_interior(st, f)))
    return Decomposition(g, pts, tuple(st.cells), tuple(cells), _bridges(st), st.hull_edges,
                         st.hull_vertices, "molnar", notes={"structure": st})


# ---------------------------------------------------------------------------
# Refinement
# ---------------------------------------------------------------------------


def saturation_check(points, geometry: Geometry | str, rho: float) -> bool:
    """Whether every Delaunay circumradius is at most ``2 R_rho``.

    Planar and hyperbolic inputs are finite, so only cells without a hull
    vertex are tested; cells without a circumcircle there fail the check.
    On the sphere with ``rho > pi/4`` the threshold is undefined and the
    check passes vacuously.  Fewer than three points are never saturated.
    """
    g, pts = as_point_array(points, geometry)
    threshold = saturation_radius(g, rho)
    if threshold is None:
        return True
    if len(pts) < 3:
        return False
    return _saturated(g, pts, _delaunay(g, pts), threshold)


def _saturated(g: Geometry, pts: np.ndarray, cells, threshold: float) -> bool:
    emap = _edge_map(cells)
    hull_vertices = {v for e, lst in emap.items() if len(lst) == 1 for v in e}
    for cell in cells:
        if g is not Geometry.SPHERICAL and any(v in hull_vertices for v in cell.vertex_ids):
            continue
        if cell.circumradius is None or cell.circumradius > 2 * threshold + SIDE_TOL:
            return False
    return True


def _fan_split(keys: list[VertexKey], coords: list[np.ndarray]) -> list[tuple[list, list]]:
    start = min(range(len(keys)), key=lambda k: keys[k][1])
    keys = keys[start:] + keys[:start]
    coords = coords[start:] + coords[:start]
    return [([keys[0], keys[k], keys[k + 1]], [coords[0], coords[k], coords[k + 1]]) for k in range(1, len(keys) - 1)]


def refine(decomp: Decomposition, rho: float, check_saturation: bool = True) -> Decomposition:
    """Split Molnar cells into type 1 and type 2 cells for disks of radius ``rho``.

    On the sphere with ``rho > pi/4`` there is no threshold; the Molnar
    cells are returned unchanged with ``stage = "molnar-unrefined"``.
    """
    if decomp.stage != "molnar":
        raise DomainError("refine expects the output of molnar()")
    g = decomp.geometry
    st: _Structure = decomp.notes["structure"]
    threshold = saturation_radius(g, rho)
    if threshold is None:
        return Decomposition(g, decomp.points, decomp.delaunay_cells, decomp.cells, decomp.bridges,
                             decomp.hull_edges, decomp.hull_vertices, "molnar-unrefined", rho, None,
                             dict(decomp.notes))
    if check_saturation and not _saturated(g, decomp.points, st.cells, threshold):
        raise NotSaturatedError(f"point set is not (2 R_rho)-saturated for rho={rho!r}")

    out: list[MolnarCell] = []
    for f, cell in enumerate(st.cells):
        interior = _cell_interior(st, f)
        if not st.fannable[f]:
            keys, coords = _molnar_polygon(st, f)
            out.append(MolnarCell("boundary", tuple(keys), np.array(coords), f, interior=False))
            continue
        dents = st.incoming.get(f, {})
        centered = f not in st.separating
        if centered and not dents and cell.circumradius <= threshold + SIDE_TOL:
            keys = [("p", i) for i in cell.vertex_ids]
            coords = [st.pts[i] for i in cell.vertex_ids]
            for tk, tc in _fan_split(keys, coords):
                out.append(MolnarCell("type1", tuple(tk), np.array(tc), f, circumradius=cell.circumradius,
                                      interior=interior))
            continue
        own = st.separating.get(f, (None,))[0]
        o_f = cell.circumcenter
        for k, (i, j) in enumerate(cell.edges()):
            if k == own:
                continue
            if k in dents:
                inner = st.cells[dents[k]].circumcenter
                keys = [("p", i), ("o", dents[k]), ("p", j), ("o", f)]
                coords = [st.pts[i], inner, st.pts[j], o_f]
            else:
                inner = None
                keys = [("p", i), ("p", j), ("o", f)]
                coords = [st.pts[i], st.pts[j], o_f]
            out.append(MolnarCell("type2", tuple(keys), np.array(coords), f, generating_edge=(i, j),
                                  apex=o_f, inner_apex=inner, interior=interior))
    return Decomposition(g, decomp.points, decomp.delaunay_cells, tuple(out), decomp.bridges, decomp.hull_edges,
                         decomp.hull_vertices, "refined", rho, threshold, dict(decomp.notes))


def refined_decomposition(points, geometry: Geometry | str, rho: float, check_saturation: bool = True) -> Decomposition:
    return refine(molnar(points, geometry), rho, check_saturation)


# ---------------------------------------------------------------------------
# Cell measurements
# ---------------------------------------------------------------------------


def cell_area(geometry: Geometry | str, cell: MolnarCell) -> float:
    return kern.polygon_area(Geometry.parse(geometry), cell.vertices)


def cell_angle_sum(geometry: Geometry | str, cell: MolnarCell) -> float:
    """Sum of interior angles at the vertices that are input points."""
    angles = kern.polygon_angles(Geometry.parse(geometry), cell.vertices)
    return float(sum(a for a, key in zip(angles, cell.keys) if key[0] == "p"))


def cell_density(cell: MolnarCell, rho: float, geometry: Geometry | str) -> float:
    """Angle-weighted fraction of ``cell`` covered by the radius-``rho`` disks at its input-point vertices."""
    g = Geometry.parse(geometry)
    area = cell_area(g, cell)
    if not area > kern.DEGENERATE_AREA:
        raise DegenerateTriangleError("cell has zero area")
    return sector_weight(g, rho) * cell_angle_sum(g, cell) / area


def hull_area(points, geometry: Geometry | str) -> float:
    """Area of the geodesic convex hull (the full sphere when no hemisphere contains the points)."""
    g, pts = as_point_array(points, geometry)
    if g is Geometry.EUCLIDEAN:
        return float(ConvexHull(pts[:, :2]).volume)
    if g is Geometry.SPHERICAL:
        hull3 = ConvexHull(pts)
        if np.all(hull3.equations[:, 3] < -1e-12):
            return 4 * math.pi
        mean = pts.mean(axis=0)
        rot = kern.to_origin(g, mean / np.linalg.norm(mean))
        moved = pts @ rot.T
        if np.min(moved[:, 2]) <= 0:
            raise DomainError("points are not contained in an open hemisphere around their mean")
        chart = moved[:, :2] / moved[:, 2:3]
        order = ConvexHull(chart).vertices
        return kern.polygon_area(g, moved[order])
    chart = kern.to_chart(g, pts, chart="klein")
    order = ConvexHull(chart).vertices
    return kern.polygon_area(g, pts[order])

"""Measurements on concrete packings: validity, separability, density, tightness, contacts.

Separability works with line covectors ``w``: the signed offset of a point
``p`` is ``w @ p`` and converts to a signed distance with
:func:`seppack.geometry.offset_to_distance`.  A line is admissible for
separation when every center is at distance at least ``lam`` from it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

import networkx as nx
import numpy as np
from scipy.optimize import minimize

from . import geometry as kern
from .decomposition import cell_angle_sum, cell_area, delaunay, molnar, refine, saturation_check
from .errors import DomainError, PackingFormatError, SeppackError
from .formulas import check_params
from .geometry import Geometry
from .triangles import sector_weight

PACKING_TOL = 1e-10
CONTACT_TOL = 1e-9
ACCEPT_TOL = 1e-12
REJECT_TOL = 1e-8


# ---------------------------------------------------------------------------
# Packing values
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Packing:
    """Congruent disks of radius ``rho`` centered at ``centers`` with separation radius ``lam``.

    Construction validates the parameters and the model coordinates but not
    the packing condition; use :func:`verify_packing` for that.
    """

    geometry: Geometry
    centers: np.ndarray
    rho: float
    lam: float

    def __post_init__(self) -> None:
        g = Geometry.parse(self.geometry)
        object.__setattr__(self, "geometry", g)
        check_params(g, self.lam, self.rho)
        pts = []
        for p in self.centers:
            pts.append(p.xyz if isinstance(p, kern.ModelPoint) else kern.ModelPoint(g, tuple(map(float, p))).xyz)
        arr = np.array(pts, dtype=float).reshape(-1, 3)
        arr.setflags(write=False)
        object.__setattr__(self, "centers", arr)

    @property
    def size(self) -> int:
        return len(self.centers)

    def with_lambda(self, lam: float) -> "Packing":
        return Packing(self.geometry, self.centers, self.rho, lam)

    def points(self) -> list[kern.ModelPoint]:
        return [kern.ModelPoint(self.geometry, tuple(p)) for p in self.centers]


@dataclass(frozen=True)
class PackingCheck:
    ok: bool
    pair: tuple[int, int] | None
    distance: float | None


def verify_packing(packing: Packing) -> PackingCheck:
    """Whether all center distances are at least ``2 rho`` (up to ``1e-10``); reports the closest pair."""
    n = packing.size
    if n < 2:
        return PackingCheck(True, None, None)
    d = kern.pairwise_distances(packing.geometry, packing.centers)
    iu = np.triu_indices(n, 1)
    k = int(np.argmin(d[iu]))
    pair = (int(iu[0][k]), int(iu[1][k]))
    dist = float(d[iu][k])
    return PackingCheck(dist >= 2 * packing.rho - PACKING_TOL, pair, dist)


# ---------------------------------------------------------------------------
# Line parametrisations
# ---------------------------------------------------------------------------


def _covector_from_params(g: Geometry, params: np.ndarray) -> np.ndarray:
    a, b = float(params[0]), float(params[1])
    if g is Geometry.EUCLIDEAN:
        return np.array([math.cos(a), math.sin(a), -b])
    if g is Geometry.SPHERICAL:
        return np.array([math.cos(b) * math.cos(a), math.cos(b) * math.sin(a), math.sin(b)])
    # spacelike unit normal n = (cosh b cos a, cosh b sin a, sinh b); covector J n
    return np.array([math.cosh(b) * math.cos(a), math.cosh(b) * math.sin(a), -math.sinh(b)])


def _params_from_covector(g: Geometry, w: np.ndarray) -> np.ndarray:
    w = kern.normalize_covector(g, w)
    if g is Geometry.EUCLIDEAN:
        return np.array([math.atan2(w[1], w[0]), -w[2]])
    if g is Geometry.SPHERICAL:
        return np.array([math.atan2(w[1], w[0]), math.asin(max(-1.0, min(1.0, w[2])))])
    return np.array([math.atan2(w[1], w[0]), math.asinh(-w[2])])


def signed_distances(g: Geometry, covectors: np.ndarray, pts: np.ndarray) -> np.ndarray:
    """Signed distances of every point from every (normalized) line; shape ``(lines, points)``."""
    return kern.offset_to_distance(g, np.atleast_2d(covectors) @ pts.T, signed=True)


def _normalize_rows(g: Geometry, rows: Iterable[np.ndarray]) -> np.ndarray:
    out = []
    for w in rows:
        try:
            out.append(kern.normalize_covector(g, w))
        except kern.DegenerateTriangleError:
            continue
    return np.array(out).reshape(-1, 3)


# ---------------------------------------------------------------------------
# Separability verifier
# ---------------------------------------------------------------------------


@dataclass
class SeparabilityResult:
    """Outcome of a separability check.

    ``witnesses`` maps each pair to a separating covector; ``failing_pair``
    and ``best_clearance`` describe the first pair that could not be
    separated (``None`` when separable).
    """

    separable: bool
    witnesses: dict = field(default_factory=dict)
    failing_pair: tuple[int, int] | None = None
    best_clearance: float | None = None
    optimized_pairs: int = 0

    def __bool__(self) -> bool:
        return self.separable


def candidate_lines(g: Geometry, pts: np.ndarray) -> np.ndarray:
    """Midpoint lines of Delaunay cells and perpendicular bisectors of all center pairs."""
    n = len(pts)
    rows = []
    if n >= 3:
        try:
            cells = delaunay(pts, g)
        except SeppackError:
            cells = []
        for cell in cells:
            ids = cell.vertex_ids
            mids = [kern.midpoints(g, pts[a], pts[b]) for a, b in itertools.combinations(ids, 2)]
            for m1, m2 in itertools.combinations(mids, 2):
                rows.append(np.cross(m1, m2))
    for i, j in itertools.combinations(range(n), 2):
        rows.append(kern.bisector_covector(g, pts[i], pts[j]))
    return _normalize_rows(g, rows)


def _pair_clearance(g: Geometry, pts: np.ndarray, i: int, j: int, w: np.ndarray) -> float:
    d = signed_distances(g, w, pts)[0]
    return float(min(d[i], -d[j], np.min(np.abs(d))))


def _optimize_pair(g: Geometry, pts: np.ndarray, i: int, j: int, starts: list[np.ndarray]) -> tuple[float, np.ndarray]:
    """Maximize the clearance of lines putting ``i`` on the positive and ``j`` on the negative side."""

    def neg(params):
        w = _covector_from_params(g, params)
        return -_pair_clearance(g, pts, i, j, w)

    best_val, best_w = -math.inf, starts[0]
    for w0 in starts:
        res = minimize(neg, _params_from_covector(g, w0), method="Nelder-Mead",
                       options={"xatol": 1e-13, "fatol": 1e-15, "maxiter": 4000})
        w = _covector_from_params(g, res.x)
        w, val = _polish(g, pts, i, j, w)
        if val > best_val:
            best_val, best_w = val, w
    return best_val, best_w


def _polish(g: Geometry, pts: np.ndarray, i: int, j: int, w: np.ndarray) -> tuple[np.ndarray, float]:
    """Epigraph refinement with the side pattern of ``w`` frozen (smooth problem, SLSQP)."""
    d = signed_distances(g, w, pts)[0]
    signs = np.where(d >= 0, 1.0, -1.0)
    signs[i], signs[j] = 1.0, -1.0
    x0 = np.append(_params_from_covector(g, w), _pair_clearance(g, pts, i, j, w))

    def cons(x):
        return signs * signed_distances(g, _covector_from_params(g, x[:2]), pts)[0] - x[2]

    res = minimize(lambda x: -x[2], x0, method="SLSQP", constraints=[{"type": "ineq", "fun": cons}],
                   options={"ftol": 1e-15, "maxiter": 200})
    cand = _covector_from_params(g, res.x[:2])
    val0 = _pair_clearance(g, pts, i, j, w)
    val1 = _pair_clearance(g, pts, i, j, cand)
    return (cand, val1) if val1 > val0 else (w, val0)


def is_lambda_separable(packing: Packing, stop_at_first: bool = True) -> SeparabilityResult:
    """Search for a separating line for every pair of centers.

    Candidate lines are tried first; pairs they miss are handed to a local
    optimizer.  A pair counts as non-separable only when the optimized
    clearance stays below ``lam - 1e-8``.
    """
    g, pts, lam = packing.geometry, packing.centers, packing.lam
    n = len(pts)
    result = SeparabilityResult(True)
    if n < 2:
        return result
    cands = candidate_lines(g, pts)
    dist = signed_distances(g, cands, pts)
    clearance = np.min(np.abs(dist), axis=1)
    good = clearance >= lam - ACCEPT_TOL
    covered = np.zeros((n, n), dtype=bool)
    owner = -np.ones((n, n), dtype=int)
    for k in np.flatnonzero(good):
        pos = dist[k] > 0
        newly = np.outer(pos, ~pos) & ~covered
        if newly.any():
            owner[newly] = k
            covered |= newly
            covered |= newly.T
            owner[newly.T] = k
    for i, j in itertools.combinations(range(n), 2):
        if covered[i, j]:
            w = cands[owner[i, j]]
            result.witnesses[(i, j)] = w if dist[owner[i, j], i] > 0 else -w
            continue
        flip = np.sign(dist[:, i]) != np.sign(dist[:, j])
        order = np.argsort(-np.where(flip, clearance, -np.inf))[:4]
        starts = [cands[k] if dist[k, i] > 0 else -cands[k] for k in order if flip[k]]
        starts.append(kern.bisector_covector(g, pts[i], pts[j]))
        val, w = _optimize_pair(g, pts, i, j, starts)
        result.optimized_pairs += 1
        if val >= lam - REJECT_TOL:
            result.witnesses[(i, j)] = w
            continue
        if result.separable:
            result.separable = False
            result.failing_pair = (i, j)
            result.best_clearance = val
        if stop_at_first:
            break
    return result


# ---------------------------------------------------------------------------
# Exhaustive oracle
# ---------------------------------------------------------------------------


def _support_lines(g: Geometry, pts: np.ndarray) -> np.ndarray:
    """Every line that is a local max-min candidate for some sign pattern (two or three active centers)."""
    n = len(pts)
    rows = []
    for i, j in itertools.combinations(range(n), 2):
        rows.append(kern.bisector_covector(g, pts[i], pts[j]))
        if g is Geometry.SPHERICAL:
            rows.append(pts[i] + pts[j])
    for tri in itertools.combinations(range(n), 3):
        p = pts[list(tri)]
        if g is Geometry.EUCLIDEAN:
            for lone in range(3):
                others = [k for k in range(3) if k != lone]
                rows.append(np.cross(kern.midpoints(g, p[lone], p[others[0]]), kern.midpoints(g, p[lone], p[others[1]])))
            continue
        try:
            inv = np.linalg.inv(p)
        except np.linalg.LinAlgError:
            continue
        for signs in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)):
            rows.append(inv @ np.array(signs, dtype=float))
    return _normalize_rows(g, rows)


def separability_oracle(packing: Packing, max_points: int = 12) -> SeparabilityResult:
    """Exact max-min clearance per pair by enumerating all two- and three-point support lines.

    For a fixed side pattern the best line is attained where two centers
    (perpendicular bisector, or the symmetric sum on the sphere) or three
    centers are at equal distance; enumerating those lines gives the exact
    optimum for every pair.  Intended for small packings only.
    """
    g, pts, lam = packing.geometry, packing.centers, packing.lam
    n = len(pts)
    if n > max_points:
        raise DomainError(f"the exhaustive oracle is limited to {max_points} centers, got {n}")
    result = SeparabilityResult(True)
    if n < 2:
        return result
    lines = _support_lines(g, pts)
    dist = signed_distances(g, lines, pts)
    clearance = np.min(np.abs(dist), axis=1)
    for i, j in itertools.combinations(range(n), 2):
        flip = np.sign(dist[:, i]) * np.sign(dist[:, j]) < 0
        if not flip.any():
            val = -math.inf
            w = None
        else:
            k = int(np.argmax(np.where(flip, clearance, -np.inf)))
            val = float(clearance[k])
            w = lines[k] if dist[k, i] > 0 else -lines[k]
        if val >= lam - REJECT_TOL:
            result.witnesses[(i, j)] = w
        elif result.separable:
            result.separable = False
            result.failing_pair = (i, j)
            result.best_clearance = val
    return result


def pair_max_clearance(packing: Packing) -> dict[tuple[int, int], float]:
    """Exact best clearance of a separating line for every pair (small packings)."""
    g, pts = packing.geometry, packing.centers
    lines = _support_lines(g, pts)
    dist = signed_distances(g, lines, pts)
    clearance = np.min(np.abs(dist), axis=1)
    out = {}
    for i, j in itertools.combinations(range(len(pts)), 2):
        flip = np.sign(dist[:, i]) * np.sign(dist[:, j]) < 0
        out[(i, j)] = float(np.max(np.where(flip, clearance, -np.inf)))
    return out


# ---------------------------------------------------------------------------
# Density and tightness
# ---------------------------------------------------------------------------


@dataclass
class DensityReport:
    value: float
    saturated: bool
    cell_densities: list = field(default_factory=list)
    interior_cells: int = 0
    boundary_cells: int = 0
    refined: bool = True


def packing_density(packing: Packing) -> DensityReport:
    """Density of the packing.

    Sphere: total cap area over ``4 pi``.  Plane and hyperbolic plane: the
    angle-weighted disk area over the total area of interior cells of the
    refined decomposition (cells touching the hull are reported separately).
    """
    g, rho = packing.geometry, packing.rho
    saturated = saturation_check(packing.centers, g, rho)
    decomp = refine(molnar(packing.centers, g), rho, check_saturation=False)
    weight = sector_weight(g, rho)
    per_cell = []
    num = den = 0.0
    interior = boundary = 0
    for cell in decomp.cells:
        area = cell_area(g, cell)
        phi = cell_angle_sum(g, cell)
        dens = weight * phi / area if area > kern.DEGENERATE_AREA else math.nan
        per_cell.append((cell.kind, cell.interior, dens, area))
        if cell.interior:
            interior += 1
            num += weight * phi
            den += area
        else:
            boundary += 1
    if g is Geometry.SPHERICAL:
        value = packing.size * 2.0 * math.pi * (1.0 - math.cos(rho)) / (4.0 * math.pi)
    else:
        if den <= 0:
            raise DomainError("no interior cells: the packing is too small to measure density")
        value = num / den
    return DensityReport(value, saturated, per_cell, interior, boundary, decomp.stage == "refined")


@dataclass
class TightnessReport:
    value: float
    saturated: bool
    cell: int | None
    interior_only: bool


def packing_tightness(packing: Packing) -> TightnessReport:
    """Largest Delaunay circumradius (covering radius of the centers over their hull)."""
    g, pts = packing.geometry, packing.centers
    cells = delaunay(pts, g)
    saturated = saturation_check(pts, g, packing.rho)
    edges = {}
    for f, c in enumerate(cells):
        for i, j in c.edges():
            edges.setdefault(frozenset((i, j)), []).append(f)
    hull_vertices = {v for e, lst in edges.items() if len(lst) == 1 for v in e}
    interior_only = g is not Geometry.SPHERICAL or bool(hull_vertices)
    best, where = -math.inf, None
    for f, c in enumerate(cells):
        if interior_only and any(v in hull_vertices for v in c.vertex_ids):
            continue
        r = math.inf if c.circumradius is None else c.circumradius
        if r > best:
            best, where = r, f
    if where is None:
        raise DomainError("no interior cells: the packing is too small to measure tightness")
    return TightnessReport(best, saturated, where, interior_only)


# ---------------------------------------------------------------------------
# Contact graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ContactGraph:
    n: int
    edges: tuple[tuple[int, int], ...]
    positions: np.ndarray  # planar chart coordinates used for the embedding

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph


def _planar_chart(g: Geometry, pts: np.ndarray) -> np.ndarray:
    if g is Geometry.SPHERICAL:
        mean = pts.mean(axis=0)
        norm = np.linalg.norm(mean)
        if norm < 1e-12:
            raise DomainError("contact graph embedding needs centers in an open hemisphere")
        moved = pts @ kern.to_origin(g, mean / norm).T
        if np.min(moved[:, 2]) <= 0:
            raise DomainError("contact graph embedding needs centers in an open hemisphere")
        return moved[:, :2] / moved[:, 2:3]
    return kern.to_chart(g, pts, chart="klein")


def contact_graph(packing: Packing) -> ContactGraph:
    g, pts = packing.geometry, packing.centers
    d = kern.pairwise_distances(g, pts)
    n = len(pts)
    edges = tuple((i, j) for i in range(n) for j in range(i + 1, n) if abs(d[i, j] - 2 * packing.rho) <= CONTACT_TOL)
    try:
        pos = _planar_chart(g, pts)
    except DomainError:
        pos = kern.to_chart(g, pts)
    return ContactGraph(n, edges, pos)


def contact_number(packing: Packing) -> int:
    return len(contact_graph(packing).edges)


def is_triangle_free(graph: ContactGraph) -> bool:
    return sum(nx.triangles(graph.to_networkx()).values()) == 0


def _embedding(graph: ContactGraph) -> nx.PlanarEmbedding:
    emb = nx.PlanarEmbedding()
    pos = graph.positions
    nbrs: dict[int, list[int]] = {v: [] for v in range(graph.n)}
    for i, j in graph.edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    data = {}
    for v, lst in nbrs.items():
        ang = [math.atan2(pos[u][1] - pos[v][1], pos[u][0] - pos[v][0]) for u in lst]
        data[v] = [u for _, u in sorted(zip(ang, lst), reverse=True)]  # clockwise
    emb.set_data(data)
    return emb


def _walk_area(pos: np.ndarray, walk: list[int]) -> float:
    xy = pos[walk]
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def outer_face_incidences(graph: ContactGraph) -> int:
    """Vertex-face incidences on the outer face, with cut vertices counted once per visit.

    Each component contributes the length of its outer boundary walk; an
    isolated vertex contributes one incidence.
    """
    emb = _embedding(graph)
    total = 0
    visited: set[tuple[int, int]] = set()
    comp_of = {}
    for c, comp in enumerate(nx.connected_components(graph.to_networkx())):
        for v in comp:
            comp_of[v] = c
    faces_by_comp: dict[int, list[list[int]]] = {}
    for v in range(graph.n):
        if not emb.has_node(v) or emb.degree(v) == 0:
            total += 1
            continue
        for w in emb.neighbors_cw_order(v):
            if (v, w) in visited:
                continue
            face = emb.traverse_face(v, w, mark_half_edges=visited)
            faces_by_comp.setdefault(comp_of[v], []).append(face)
    for faces in faces_by_comp.values():
        # networkx walks inner faces clockwise, so the outer walk has the largest signed area
        outer = max(faces, key=lambda f: _walk_area(graph.positions, f))
        total += len(outer)
    return total


def triangle_free_edge_bound(n: int, k: int) -> int:
    """``floor(2n - k/2 - 2)``: edge cap for triangle-free plane graphs whose outer face has ``k`` incidences."""
    return (4 * n - k - 4) // 2


# ---------------------------------------------------------------------------
# Packing files
# ---------------------------------------------------------------------------

HEADER_KEYS = ("geometry", "rho", "lambda", "count")


def format_packing(packing: Packing) -> str:
    lines = [
        "# seppack packing",
        f"geometry {packing.geometry.label}",
        f"rho {packing.rho:.17g}",
        f"lambda {packing.lam:.17g}",
        f"count {packing.size}",
    ]
    lines.extend(" ".join(f"{v:.17g}" for v in p) for p in packing.centers)
    return "\n".join(lines) + "\n"


def write_packing(target: str | Path | IO[str], packing: Packing) -> None:
    text = format_packing(packing)
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def parse_packing(text: str, check_packing: bool = True) -> Packing:
    """Parse packing text; raise :class:`PackingFormatError` at the first bad record."""
    header: dict[str, str] = {}
    records: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key = line.split()[0].lower()
        if not records and key in HEADER_KEYS:
            parts = line.split()
            if len(parts) != 2:
                raise PackingFormatError(f"malformed header line: {line!r}")
            if key in header:
                raise PackingFormatError(f"duplicate header key {key!r}")
            header[key] = parts[1]
        else:
            records.append(line)
    missing = [k for k in HEADER_KEYS if k not in header]
    if missing:
        raise PackingFormatError(f"missing header keys: {', '.join(missing)}")
    try:
        g = Geometry.parse(header["geometry"])
    except ValueError as exc:
        raise PackingFormatError(str(exc)) from exc
    try:
        rho = float(header["rho"])
        lam = float(header["lambda"])
        count = int(header["count"])
    except ValueError as exc:
        raise PackingFormatError(f"bad numeric header value: {exc}") from exc
    try:
        check_params(g, lam, rho)
    except DomainError as exc:
        raise PackingFormatError(str(exc)) from exc
    if count != len(records):
        raise PackingFormatError(f"header count {count} but {len(records)} center records",
                                 record=min(count, len(records)))
    pts = []
    for idx, rec in enumerate(records):
        parts = rec.split()
        if len(parts) != 3:
            raise PackingFormatError(f"record {idx} must have 3 coordinates", record=idx)
        try:
            coords = tuple(float(v) for v in parts)
            p = kern.ModelPoint(g, coords).xyz
        except (ValueError, SeppackError) as exc:
            raise PackingFormatError(f"record {idx}: {exc}", record=idx) from exc
        if check_packing and pts:
            d = kern.distances(g, np.array(pts), p)
            k = int(np.argmin(d))
            if d[k] < 2 * rho - PACKING_TOL:
                raise PackingFormatError(
                    f"record {idx} overlaps record {k}: distance {float(d[k]):.17g} < 2 rho", record=idx)
        pts.append(p)
    return Packing(g, np.array(pts).reshape(-1, 3), rho, lam)


def read_packing(source: str | Path | IO[str], check_packing: bool = True) -> Packing:
    text = source.read() if hasattr(source, "read") else Path(source).read_text(encoding="utf-8")
    return parse_packing(text, check_packing)

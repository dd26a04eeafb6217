"""Static SVG 1.1 drawings of packings, decompositions and curve families.

Projections are fixed so that output is diffable: the plane is drawn as is,
the sphere orthographically from above the north pole (far hemisphere
faded) and the hyperbolic plane in the Poincare disk.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from typing import Mapping, Sequence

import numpy as np

from . import geometry as kern
from .decomposition import Decomposition
from .geometry import Geometry

SIZE = 600
MARGIN = 20
EDGE_SAMPLES = 24
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2")
KIND_FILL = {"type1": "#dbe9f6", "type2": "#f8e0c8", "boundary": "#eeeeee", "molnar": "#e4f2df"}


def _fmt(v: float) -> str:
    return f"{v:.6f}".rstrip("0").rstrip(".")


def _project_to_model(g: Geometry, p: np.ndarray) -> np.ndarray:
    if g is Geometry.EUCLIDEAN:
        return p / p[..., 2:3]
    return kern.normalize_points(g, p)


def geodesic_samples(g: Geometry, a: np.ndarray, b: np.ndarray, n: int = EDGE_SAMPLES) -> np.ndarray:
    """Points along the geodesic segment from ``a`` to ``b``.

    Geodesics are plane sections through the origin of R^3 in the curved
    models, so renormalized chords trace them exactly.
    """
    t = np.linspace(0.0, 1.0, n + 1)[:, None]
    return _project_to_model(g, (1 - t) * a + t * b)


def circle_samples(g: Geometry, center: np.ndarray, radius: float, n: int = 72) -> np.ndarray:
    theta = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    ring = kern.polar_points(g, np.full(n, radius), theta)
    return (np.linalg.inv(kern.to_origin(g, center)) @ ring.T).T


class _Canvas:
    def __init__(self, g: Geometry, extent_pts: np.ndarray, title: str):
        self.g = g
        if g is Geometry.EUCLIDEAN:
            xy = kern.to_chart(g, extent_pts)
            lo, hi = xy.min(axis=0), xy.max(axis=0)
            span = float(max(hi - lo)) or 1.0
            self.lo, self.span = lo, span
        else:
            self.lo, self.span = np.array([-1.0, -1.0]), 2.0
        self.root = ET.Element("svg", {
            "xmlns": "http://www.w3.org/2000/svg", "version": "1.1",
            "width": str(SIZE), "height": str(SIZE), "viewBox": f"0 0 {SIZE} {SIZE}",
        })
        ET.SubElement(self.root, "title").text = title
        if g is not Geometry.EUCLIDEAN:
            c = SIZE / 2
            ET.SubElement(self.root, "circle", {"cx": _fmt(c), "cy": _fmt(c), "r": _fmt(c - MARGIN),
                                                "fill": "none", "stroke": "#999999"})

    def xy(self, pts: np.ndarray) -> np.ndarray:
        chart = kern.to_chart(self.g, pts)
        scale = (SIZE - 2 * MARGIN) / self.span
        out = (chart - self.lo) * scale + MARGIN
        out[..., 1] = SIZE - out[..., 1]
        return out

    def path(self, pts: np.ndarray, closed: bool, attrs: dict) -> None:
        xy = self.xy(pts)
        d = "M" + " L".join(f"{_fmt(x)} {_fmt(y)}" for x, y in xy) + (" Z" if closed else "")
        a = {"d": d, "fill": "none", "stroke": "#000000", "stroke-width": "1"}
        a.update(attrs)
        if self.g is Geometry.SPHERICAL and float(np.mean(pts[:, 2])) < 0:
            a["opacity"] = "0.25"
        ET.SubElement(self.root, "path", a)

    def dot(self, p: np.ndarray, r: float = 2.0, color: str = "#000000") -> None:
        (x, y), = self.xy(p[None, :])
        a = {"cx": _fmt(x), "cy": _fmt(y), "r": _fmt(r), "fill": color}
        if self.g is Geometry.SPHERICAL and p[2] < 0:
            a["opacity"] = "0.25"
        ET.SubElement(self.root, "circle", a)

    def text(self) -> str:
        ET.indent(self.root)
        return ET.tostring(self.root, encoding="unicode") + "\n"


def _polyline(g: Geometry, verts: np.ndarray, closed: bool) -> np.ndarray:
    seq = list(verts) + ([verts[0]] if closed else [])
    parts = [geodesic_samples(g, seq[i], seq[i + 1])[:-1] for i in range(len(seq) - 1)]
    parts.append(np.asarray(seq[-1])[None, :])
    return np.vstack(parts)


def packing_svg(geometry: Geometry | str, centers: np.ndarray, rho: float, lam: float | None = None,
                title: str = "packing") -> str:
    """Disks of radius ``rho`` (solid) and, when given, separation disks of radius ``lam`` (dashed)."""
    g = Geometry.parse(geometry)
    centers = np.asarray(centers, float)
    rim = np.vstack([circle_samples(g, c, rho) for c in centers]) if len(centers) else centers
    canvas = _Canvas(g, rim if len(rim) else np.array([[0.0, 0.0, 1.0]]), title)
    for c in centers:
        canvas.path(circle_samples(g, c, rho), True, {"fill": "#dbe9f6"})
        if lam:
            canvas.path(circle_samples(g, c, lam), True, {"stroke-dasharray": "3 3", "stroke": "#555555"})
        canvas.dot(c)
    return canvas.text()


def decomposition_svg(decomp: Decomposition, title: str = "decomposition") -> str:
    """Cells with solid edges, bridges (replaced separating sides) dashed, centers as dots."""
    g = decomp.geometry
    canvas = _Canvas(g, decomp.points, title)
    for cell in decomp.cells:
        canvas.path(_polyline(g, cell.vertices, True), True,
                    {"fill": KIND_FILL.get(cell.kind, "none"), "class": cell.kind})
    for br in decomp.bridges:
        i, j = br.edge
        side = _polyline(g, np.array([decomp.points[i], decomp.points[j]]), False)
        canvas.path(side, False, {"stroke-dasharray": "5 4", "stroke": "#d62728", "class": "separator"})
    for p in decomp.points:
        canvas.dot(p)
    return canvas.text()


def curves_svg(series: Mapping[str, tuple[Sequence[float], Sequence[float]]], title: str,
               x_label: str = "lambda", y_label: str = "y") -> str:
    """Plain line plot of named curves; non-finite samples break a curve."""
    finite = [v for xs, ys in series.values() for v in zip(xs, ys) if math.isfinite(v[0]) and math.isfinite(v[1])]
    if not finite:
        raise ValueError("no finite samples to plot")
    arr = np.array(finite)
    lo, hi = arr.min(axis=0), arr.max(axis=0)
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    inner = SIZE - 3 * MARGIN

    def to_px(x, y):
        return 2 * MARGIN + (x - lo[0]) / span[0] * inner, SIZE - 2 * MARGIN - (y - lo[1]) / span[1] * inner

    root = ET.Element("svg", {"xmlns": "http://www.w3.org/2000/svg", "version": "1.1",
                              "width": str(SIZE), "height": str(SIZE), "viewBox": f"0 0 {SIZE} {SIZE}"})
    ET.SubElement(root, "title").text = title
    x0, y0 = to_px(lo[0], lo[1])
    x1, y1 = to_px(hi[0], hi[1])
    ET.SubElement(root, "path", {"d": f"M{_fmt(x0)} {_fmt(y1)} L{_fmt(x0)} {_fmt(y0)} L{_fmt(x1)} {_fmt(y0)}",
                                 "fill": "none", "stroke": "#000000"})
    for label, (x, y, anchor) in {x_label: (x1, y0 + 16, "end"), y_label: (x0 + 4, y1 - 4, "start")}.items():
        ET.SubElement(root, "text", {"x": _fmt(x), "y": _fmt(y), "font-size": "12", "text-anchor": anchor}).text = label
    for k, (name, (xs, ys)) in enumerate(series.items()):
        color = PALETTE[k % len(PALETTE)]
        runs, cur = [], []
        for x, y in zip(xs, ys):
            if math.isfinite(x) and math.isfinite(y):
                cur.append(to_px(x, y))
            elif cur:
                runs.append(cur)
                cur = []
        if cur:
            runs.append(cur)
        d = " ".join("M" + " L".join(f"{_fmt(a)} {_fmt(b)}" for a, b in run) for run in runs)
        ET.SubElement(root, "path", {"d": d, "fill": "none", "stroke": color, "stroke-width": "1.5", "class": name})
        ET.SubElement(root, "text", {"x": _fmt(SIZE - MARGIN), "y": _fmt(MARGIN + 14 * (k + 1)), "font-size": "12",
                                     "text-anchor": "end", "fill": color}).text = name
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"

"""``seppack`` command line.

Exit codes: 0 when everything checked holds, 1 when a checked property is
violated, 2 for unusable input (bad flags, unreadable files, parameters
outside the domain).  Relative output paths resolve against
``$SEPPACK_OUTDIR`` when it is set.  Angles are in radians.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import analysis, bounds, decomposition, formulas, generators, svg
from .errors import NotSaturatedError, SeppackError
from .geometry import Geometry

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT = 0, 1, 2
OUTDIR_ENV = "SEPPACK_OUTDIR"


class InputError(Exception):
    """Unusable command-line input; maps to exit status 2."""


def _num(v: float) -> str:
    return f"{v:.17g}"


def parse_grid(text: str) -> np.ndarray:
    """``"v"`` or ``"start:stop:count"`` (inclusive, evenly spaced)."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return np.array([float(parts[0])])
        if len(parts) == 3:
            count = int(parts[2])
            if count < 1:
                raise ValueError("count must be positive")
            return np.linspace(float(parts[0]), float(parts[1]), count)
    except ValueError as exc:
        raise InputError(f"bad grid {text!r}: {exc}") from exc
    raise InputError(f"bad grid {text!r}: expected VALUE or START:STOP:COUNT")


def output_path(path: str) -> Path:
    p = Path(path)
    base = os.environ.get(OUTDIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    p.parent.mkdir(parents=True, exist_ok=True)
    return p


def _emit(text: str, out: str | None, stdout) -> None:
    if out is None:
        stdout.write(text)
    else:
        output_path(out).write_text(text, encoding="utf-8")


def _format_for(out: str | None, requested: str | None, default: str) -> str:
    if requested:
        return requested
    if out and out.lower().endswith(".svg"):
        return "svg"
    if out and out.lower().endswith(".csv"):
        return "csv"
    return default


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_num(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Library-level helpers behind the verbs
# ---------------------------------------------------------------------------


def bound_rows(geometry: Geometry, lam: float, rho: float) -> list[dict]:
    return [bounds.density_bound(geometry, lam, rho).summary(), bounds.tightness_bound(geometry, lam, rho).summary()]


def sweep_rows(geometry: Geometry, quantity: str, lams: np.ndarray, rhos: np.ndarray) -> list[tuple]:
    """``(lambda, rho, value, regime)`` per grid point; points outside the domain get ``nan`` and ``domain``."""
    fn = bounds.density_bound if quantity == "density" else bounds.tightness_bound
    rows = []
    for rho in rhos:
        for lam in lams:
            try:
                res = fn(geometry, float(lam), float(rho))
                rows.append((float(lam), float(rho), res.value, res.regime.value))
            except SeppackError:
                rows.append((float(lam), float(rho), math.nan, "domain"))
    return rows


def _safe(fn: Callable[[float], float | None], lam: float) -> float:
    try:
        v = fn(lam)
    except SeppackError:
        return math.nan
    return math.nan if v is None or not math.isfinite(v) else float(v)


def region_curves(geometry: Geometry, lams: np.ndarray) -> dict[str, list[float]]:
    """Regime-boundary curves over ``lams``; ``nan`` where a curve is undefined."""
    if geometry is Geometry.SPHERICAL:
        curves = {
            "y_s": lambda t: bounds.spherical_thresholds(t)[0],
            "y_b": lambda t: bounds.spherical_thresholds(t)[1],
            "quarter_pi": lambda t: formulas.QUARTER_PI,
            "arcsin_sqrt2_sin": lambda t: math.asin(math.sqrt(2) * math.sin(t)) if math.sqrt(2) * math.sin(t) <= 1 else None,
            "half_pi_minus_lambda": lambda t: formulas.HALF_PI - t,
        }
    elif geometry is Geometry.HYPERBOLIC:
        curves = {
            "lambda": lambda t: t,
            "x_at_y_min": lambda t: formulas.x_hyperbolic(formulas.y_min(geometry, t), t),
            "y_s": lambda t: formulas.y_s(geometry, t),
            "y_min": lambda t: formulas.y_min(geometry, t),
            "arcsinh_sqrt2_sinh": lambda t: math.asinh(math.sqrt(2) * math.sinh(t)),
        }
    else:
        curves = {
            "sqrt3_over_2": lambda t: math.sqrt(3) / 2,
            "two_sqrt2_over_3": lambda t: 2 * math.sqrt(2) / 3,
        }
    return {name: [_safe(fn, float(t)) for t in lams] for name, fn in curves.items()}


def build_packing(args) -> analysis.Packing:
    kind = args.kind
    if kind == "density-lattice":
        return generators.euclidean_extremal_density_lattice(args.lam, args.window)
    if kind == "tightness-lattice":
        return generators.euclidean_extremal_tightness_config(args.lam, args.window)
    if kind == "platonic":
        return generators.platonic_caps(args.n, args.lam)
    if kind == "square-grid":
        return generators.square_grid(args.n, args.lam)
    if kind == "hex-patch":
        return generators.hexagonal_patch(args.n, args.lam)
    if kind == "regular-triangle":
        return generators.regular_triangle_packing(args.geometry, args.rho, args.lam)
    rng = np.random.default_rng(args.seed)
    return generators.random_saturated_packing(args.geometry, rng, args.rho, args.extent, args.lam)


# ---------------------------------------------------------------------------
# Verbs
# ---------------------------------------------------------------------------


def run_bounds(args, stdout) -> int:
    rows = bound_rows(args.geometry, args.lam, args.rho)
    if _format_for(args.out, args.format, "text") == "csv":
        keys = list(rows[0])
        _emit(_csv_text(keys, [[r[k] for k in keys] for r in rows]), args.out, stdout)
        return EXIT_OK
    lines = []
    for r in rows:
        lines.append(f"{r['quantity']}: {_num(r['value'])}")
        lines.append(f"  regime: {r['regime']}")
        lines.append(f"  extremal triangle: {r['triangle'] or '-'}")
        lines.append(f"  sharp: {'yes' if r['sharp'] else 'no'}")
    header = f"geometry {args.geometry.label}, lambda {_num(args.lam)}, rho {_num(args.rho)}"
    _emit(header + "\n" + "\n".join(lines) + "\n", args.out, stdout)
    return EXIT_OK


def run_sweep(args, stdout) -> int:
    lams = parse_grid(args.lam_grid)
    fmt = _format_for(args.out, args.format, "csv")
    if args.quantity == "regions":
        curves = region_curves(args.geometry, lams)
        if fmt == "svg":
            text = svg.curves_svg({k: (lams, v) for k, v in curves.items()},
                                  f"{args.geometry.label} regime boundaries")
        else:
            names = list(curves)
            rows = [[float(t)] + [curves[k][i] for k in names] for i, t in enumerate(lams)]
            text = _csv_text(["lambda"] + names, rows)
        _emit(text, args.out, stdout)
        return EXIT_OK
    rhos = parse_grid(args.rho_grid)
    rows = sweep_rows(args.geometry, args.quantity, lams, rhos)
    if fmt == "svg":
        series = {f"rho={_num(r)}": ([row[0] for row in rows if row[1] == r], [row[2] for row in rows if row[1] == r])
                  for r in rhos}
        text = svg.curves_svg(series, f"{args.geometry.label} {args.quantity} bound", y_label=args.quantity)
    elif len(rhos) == 1:
        text = _csv_text(["lambda", "value", "regime"], [(a, c, d) for a, _, c, d in rows])
    else:
        text = _csv_text(["lambda", "rho", "value", "regime"], rows)
    _emit(text, args.out, stdout)
    return EXIT_OK


def _load(args) -> analysis.Packing:
    packing = analysis.read_packing(args.path)
    if getattr(args, "lam", None) is not None:
        packing = packing.with_lambda(args.lam)
    return packing


def run_verify(args, stdout) -> int:
    packing = _load(args)
    check = analysis.verify_packing(packing)
    if not check.ok:
        i, j = check.pair
        stdout.write(f"FAIL overlap: centers {i} and {j} at distance {_num(check.distance)} < 2 rho\n")
        return EXIT_VIOLATED
    result = analysis.is_lambda_separable(packing)
    status = EXIT_OK
    if result.separable:
        stdout.write(f"PASS {packing.size} disks are {_num(packing.lam)}-separable\n")
    else:
        i, j = result.failing_pair
        stdout.write(f"FAIL pair ({i}, {j}) has best separating clearance {_num(result.best_clearance)}"
                     f" < lambda {_num(packing.lam)}\n")
        status = EXIT_VIOLATED
    if args.oracle:
        oracle = analysis.separability_oracle(packing)
        agree = oracle.separable == result.separable
        stdout.write(f"oracle: {'separable' if oracle.separable else 'not separable'}"
                     f" ({'agrees' if agree else 'DISAGREES'})\n")
        if not agree:
            status = EXIT_VIOLATED
    return status


def run_decompose(args, stdout) -> int:
    packing = _load(args)
    rho = packing.rho if args.rho is None else args.rho
    decomp = decomposition.molnar(packing.centers, packing.geometry)
    if not args.no_refine:
        try:
            decomp = decomposition.refine(decomp, rho)
        except NotSaturatedError as exc:
            stdout.write(f"FAIL {exc}\n")
            return EXIT_VIOLATED
    fmt = _format_for(args.out, args.format, "records")
    if fmt == "svg":
        text = svg.decomposition_svg(decomp, f"{packing.geometry.label} decomposition ({decomp.stage})")
    else:
        text = f"# stage {decomp.stage}\n" + "".join(r + "\n" for r in decomp.records())
    _emit(text, args.out, stdout)
    return EXIT_OK


def run_generate(args, stdout) -> int:
    packing = build_packing(args)
    if args.format == "svg":
        text = svg.packing_svg(packing.geometry, packing.centers, packing.rho, packing.lam, args.kind)
    else:
        text = analysis.format_packing(packing)
    _emit(text, args.out, stdout)
    return EXIT_OK


def run_contact(args, stdout) -> int:
    packing = _load(args)
    graph = analysis.contact_graph(packing)
    n, m = graph.n, len(graph.edges)
    tri_free = analysis.is_triangle_free(graph)
    lines = [f"disks {n}", f"contacts {m}", f"triangle-free {'yes' if tri_free else 'no'}"]
    status = EXIT_OK
    if packing.geometry is Geometry.EUCLIDEAN and n >= 2:
        lam = packing.lam / packing.rho
        cb = bounds.contact_bounds(n, lam)
        if cb.exact:
            lines.append(f"maximum contacts for lambda {_num(lam)}: {cb.lower}")
            if m > cb.lower:
                status = EXIT_VIOLATED
        else:
            lines.append(f"lower bound on the maximum: {cb.lower}")
            lines.append(f"upper estimate (additive constant unresolved): {_num(cb.upper)}")
            if not tri_free:
                lines.append("FAIL contact graph has a triangle although lambda > sqrt(3)/2")
                status = EXIT_VIOLATED
    if tri_free and n >= 3:
        k = analysis.outer_face_incidences(graph)
        cap = analysis.triangle_free_edge_bound(n, k)
        lines.append(f"outer-face incidences {k}")
        lines.append(f"triangle-free edge bound {cap}")
        if m > cap:
            status = EXIT_VIOLATED
    stdout.write("\n".join(lines) + "\n")
    return status


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _geometry(text: str) -> Geometry:
    try:
        return Geometry.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="seppack", description="Bounds and measurements for lambda-separable disk packings.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def geo(p, required=True):
        p.add_argument("--geometry", type=_geometry, required=required, default=None if required else Geometry.EUCLIDEAN,
                       help="euclidean, sphere or hyperbolic")

    p = sub.add_parser("bounds", help="density and tightness bounds at one parameter pair")
    geo(p)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--format", choices=("text", "csv"))
    p.add_argument("--out")
    p.set_defaults(func=run_bounds)

    p = sub.add_parser("sweep", help="bound values or regime curves over a lambda grid")
    geo(p)
    p.add_argument("--quantity", choices=("density", "tightness", "regions"), required=True)
    p.add_argument("--lambda", dest="lam_grid", required=True, help="VALUE or START:STOP:COUNT")
    p.add_argument("--rho", dest="rho_grid", default="1", help="VALUE or START:STOP:COUNT")
    p.add_argument("--format", choices=("csv", "svg"))
    p.add_argument("--out")
    p.set_defaults(func=run_sweep)

    p = sub.add_parser("verify", help="check the packing condition and lambda-separability of a packing file")
    p.add_argument("path")
    p.add_argument("--lambda", dest="lam", type=float, help="override the file's lambda")
    p.add_argument("--oracle", action="store_true", help="cross-check with the exhaustive oracle (small inputs)")
    p.set_defaults(func=run_verify)

    p = sub.add_parser("decompose", help="refined decomposition of a packing file")
    p.add_argument("path")
    p.add_argument("--rho", type=float)
    p.add_argument("--no-refine", action="store_true")
    p.add_argument("--format", choices=("records", "svg"))
    p.add_argument("--out")
    p.set_defaults(func=run_decompose)

    p = sub.add_parser("generate", help="write a named or random packing")
    p.add_argument("kind", choices=("density-lattice", "tightness-lattice", "platonic", "square-grid",
                                    "hex-patch", "regular-triangle", "random"))
    geo(p, required=False)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--n", type=int, default=3, help="platonic vertex count, grid side or patch size")
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--extent", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("packing", "svg"), default="packing")
    p.add_argument("--out")
    p.set_defaults(func=run_generate)

    p = sub.add_parser("contact", help="contact graph statistics of a packing file")
    p.add_argument("path")
    p.set_defaults(func=run_contact)
    return parser


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, stdout)
    except (SeppackError, InputError, OSError) as exc:
        stderr.write(f"seppack {args.verb}: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())

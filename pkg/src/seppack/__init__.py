"""Density, tightness and contact bounds for lambda-separable packings of congruent disks
in the Euclidean plane, on the sphere and in the hyperbolic plane."""

from .analysis import (
    Packing,
    contact_graph,
    contact_number,
    is_lambda_separable,
    packing_density,
    packing_tightness,
    read_packing,
    separability_oracle,
    verify_packing,
    write_packing,
)
from .bounds import BoundResult, Regime, contact_bounds, density_bound, tightness_bound
from .decomposition import delaunay, molnar, refine, refined_decomposition
from .errors import (
    DegenerateTriangleError,
    DomainError,
    NoCircumcircleError,
    NotSaturatedError,
    PackingFormatError,
    SeppackError,
)
from .geometry import Geometry, ModelPoint
from .triangles import IsoTriangle, family_triangle, regular_triangle

__version__ = "0.1.0"

__all__ = [
    "BoundResult", "DegenerateTriangleError", "DomainError", "Geometry", "IsoTriangle", "ModelPoint",
    "NoCircumcircleError", "NotSaturatedError", "Packing", "PackingFormatError", "Regime", "SeppackError",
    "contact_bounds", "contact_graph", "contact_number", "delaunay", "density_bound", "family_triangle",
    "is_lambda_separable", "molnar", "packing_density", "packing_tightness", "read_packing", "refine",
    "refined_decomposition", "regular_triangle", "separability_oracle", "tightness_bound", "verify_packing",
    "write_packing",
]

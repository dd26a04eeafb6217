import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from seppack.geometry import Geometry

settings.register_profile(
    "seppack",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("seppack")

ALL_GEOMETRIES = (Geometry.EUCLIDEAN, Geometry.SPHERICAL, Geometry.HYPERBOLIC)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_points(g: Geometry, rng: np.random.Generator, n: int, spread: float = 1.0) -> np.ndarray:
    """Random model points at distance at most ``spread`` from the origin."""
    from seppack.geometry import polar_points

    r = spread * np.sqrt(rng.uniform(0.0, 1.0, n))
    theta = rng.uniform(0.0, 2 * math.pi, n)
    return polar_points(g, r, theta)

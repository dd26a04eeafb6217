import math

import numpy as np
import pytest

from seppack import bounds as B
from seppack import formulas as F
from seppack import geometry as kern
from seppack import triangles as T
from seppack.analysis import (contact_number, is_lambda_separable, packing_density, packing_tightness,
                              verify_packing)
from seppack.decomposition import delaunay
from seppack.errors import DomainError
from seppack.generators import (PLATONIC_RADII, density_lattice_basis, euclidean_extremal_density_lattice,
                                euclidean_extremal_tightness_config, hexagonal_patch, hexagonal_spiral,
                                platonic_caps, random_saturated_packing, regular_triangle_packing,
                                special_tiling, special_tiling_constants, square_grid)
from seppack.geometry import Geometry

E, S, H = Geometry.EUCLIDEAN, Geometry.SPHERICAL, Geometry.HYPERBOLIC
LAMS = [0.0, 0.2, 0.5, math.sqrt(3) / 2, 0.9, 0.93, 0.95, 2 * math.sqrt(2) / 3, 0.97, 1.0]


class TestEuclideanExtremal:
    @pytest.mark.parametrize("lam", LAMS)
    def test_density_lattice(self, lam):
        lattice = euclidean_extremal_density_lattice(lam, window=4)
        assert verify_packing(lattice).ok
        assert is_lambda_separable(lattice).separable
        assert packing_density(lattice).value == pytest.approx(B.density_bound_euclidean(lam).value, abs=1e-9)

    @pytest.mark.parametrize("lam", LAMS)
    def test_tightness_config(self, lam):
        cfg = euclidean_extremal_tightness_config(lam, window=4)
        assert verify_packing(cfg).ok
        assert is_lambda_separable(cfg).separable
        assert packing_tightness(cfg).value == pytest.approx(B.tightness_bound_euclidean(lam).value, abs=1e-9)

    def test_long_leg_basis(self):
        lam = 0.93
        u, v = density_lattice_basis(lam)
        y = u[0] / 2
        assert math.hypot(*v) == pytest.approx(2.0, abs=1e-14)
        assert y == pytest.approx(math.sqrt(2 - 2 * math.sqrt(1 - lam ** 2)), abs=1e-14)

    def test_middle_regime_value(self):
        cfg = euclidean_extremal_tightness_config(0.9)
        expected = math.sqrt(2 - 2 * math.sqrt(1 - 0.81)) / 0.9
        assert packing_tightness(cfg).value == pytest.approx(expected, abs=1e-12)

    def test_steep_regime_edges(self):
        lam = 1.0
        cfg = euclidean_extremal_tightness_config(lam, window=3)
        edges = sorted({round(float(d), 9) for cell in delaunay(cfg.centers, E)
                        for d in kern.pairwise_distances(E, cell.vertices)[np.triu_indices(3, 1)]})
        assert edges == pytest.approx(sorted({round(3 * lam / math.sqrt(2), 9), round(math.sqrt(6) * lam, 9)}))

    def test_errors(self):
        with pytest.raises(DomainError):
            euclidean_extremal_density_lattice(1.2)
        with pytest.raises(DomainError):
            euclidean_extremal_tightness_config(0.5, window=1)


class TestSphere:
    def test_octahedron_spacing(self):
        p = platonic_caps(6)
        d = kern.pairwise_distances(S, p.centers)
        assert np.min(d[np.triu_indices(6, 1)]) == pytest.approx(math.pi / 2, abs=1e-14)

    def test_tetrahedron_edge(self):
        p = platonic_caps(4)
        d = kern.pairwise_distances(S, p.centers)[np.triu_indices(4, 1)]
        np.testing.assert_allclose(d, math.acos(-1 / 3), atol=1e-14)
        assert math.acos(-1 / 3) == pytest.approx(2 * PLATONIC_RADII[4], abs=1e-14)

    def test_icosahedron_cells(self):
        cells = delaunay(platonic_caps(12).centers, S)
        assert len(cells) == 20
        expected = T.regular_triangle(S, PLATONIC_RADII[12]).circumradius
        for c in cells:
            assert c.circumradius == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("n", [4, 6, 12])
    def test_platonic_density(self, n):
        rho = PLATONIC_RADII[n]
        assert packing_density(platonic_caps(n)).value == pytest.approx(
            T.triangle_density(T.regular_triangle(S, rho), rho), abs=1e-9)

    def test_special_constants(self):
        assert special_tiling_constants("H16") == pytest.approx((0.57186, 0.53644), abs=5e-6)
        assert special_tiling_constants("H20") == pytest.approx((0.55357, 0.46365), abs=5e-6)
        assert special_tiling_constants("H20")[0] == pytest.approx(PLATONIC_RADII[12], abs=1e-14)
        with pytest.raises(DomainError):
            special_tiling_constants("H12")

    @pytest.mark.parametrize("name", ["H16", "H20"])
    def test_special_tile_matches_short_leg_family(self, name):
        tile = special_tiling(name)
        assert tile.variant == 1 and tile.residual < 1e-4
        tri = T.isosceles_triangle(S, tile.half_base, tile.rho)
        assert tri.area * tile.tiles == pytest.approx(4 * math.pi, abs=1e-12)
        assert F.x1_sphere(tile.half_base, tile.lam) == pytest.approx(tile.rho, abs=1e-12)


class TestContactWitnesses:
    def test_square_grid(self):
        grid = square_grid(3)
        assert contact_number(grid) == 12 == math.floor(2 * 9 - 2 * 3)
        assert is_lambda_separable(grid).separable

    def test_hexagonal_spiral_is_deterministic_and_compact(self):
        coords = hexagonal_spiral(19)
        assert coords[0] == (0, 0) and len(set(coords)) == 19
        assert coords == hexagonal_spiral(19)
        assert hexagonal_spiral(7) == coords[:7]
        ring = lambda q, r: max(abs(q), abs(r), abs(q + r))
        assert [ring(*c) for c in coords] == sorted(ring(*c) for c in coords)

    @pytest.mark.parametrize("n", [2, 3, 7, 12, 19, 30, 37])
    def test_hexagonal_patch_is_packing(self, n):
        patch = hexagonal_patch(n)
        assert verify_packing(patch).ok
        assert contact_number(patch) >= n - 1

    def test_flower(self):
        assert contact_number(hexagonal_patch(7)) == 12 == math.floor(3 * 7 - math.sqrt(81))


class TestRandom:
    @pytest.mark.parametrize("g,rho", [(E, 1.0), (S, 0.3), (H, 0.3)])
    def test_reproducible_valid_and_separable(self, g, rho):
        a = random_saturated_packing(g, np.random.default_rng(5), rho, attempts=400)
        b = random_saturated_packing(g, np.random.default_rng(5), rho, attempts=400)
        assert np.array_equal(a.centers, b.centers)
        assert verify_packing(a).ok
        assert is_lambda_separable(a).separable

    @pytest.mark.parametrize("g", [E, S, H])
    def test_regular_triangle_packing(self, g):
        p = regular_triangle_packing(g, 0.4, 0.1)
        d = kern.pairwise_distances(g, p.centers)[np.triu_indices(3, 1)]
        np.testing.assert_allclose(d, 0.8, atol=1e-12)

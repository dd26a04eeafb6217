import math

import numpy as np
import pytest

from decomposition_checks import all_defects, contains_point, proper_crossing
from seppack import bounds as B
from seppack import geometry as kern
from seppack.decomposition import (cell_area, cell_density, delaunay, hull_area, molnar, refine,
                                   refined_decomposition, saturation_check)
from seppack.errors import DegenerateTriangleError, DomainError, NotSaturatedError
from seppack.generators import euclidean_extremal_density_lattice, platonic_vertices, random_saturated_packing
from seppack.geometry import Geometry

E, S, H = Geometry.EUCLIDEAN, Geometry.SPHERICAL, Geometry.HYPERBOLIC


def lifted(xy):
    return [(x, y, 1.0) for x, y in xy]


class TestCheckerSelfTest:
    def test_crossing_predicate(self):
        assert proper_crossing([0, 0, 1], [2, 2, 1], [0, 2, 1], [2, 0, 1])
        assert not proper_crossing([0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1])
        assert not proper_crossing([0, 0, 1], [2, 0, 1], [2, 0, 1], [3, 1, 1])
        a, b = np.array([1, 0, 0.1]), np.array([0, 1, 0.1])
        assert not proper_crossing(a / np.linalg.norm(a), b / np.linalg.norm(b),
                                   -a / np.linalg.norm(a) + [0, 0, 0.3], -b / np.linalg.norm(b), sphere=True)

    def test_containment_predicate(self):
        a, b, c = np.array([0, 0, 1.0]), np.array([2, 0, 1.0]), np.array([0, 2, 1.0])
        assert contains_point(a, b, c, np.array([0.5, 0.5, 1.0]))
        assert not contains_point(a, b, c, np.array([2, 2, 1.0]))


class TestDelaunay:
    def test_unit_square_is_one_cell(self):
        cells = delaunay(lifted([(0, 0), (1, 0), (1, 1), (0, 1)]), E)
        assert len(cells) == 1 and cells[0].size == 4
        assert cells[0].circumradius == pytest.approx(math.sqrt(2) / 2, abs=1e-12)

    def test_octahedron(self):
        cells = delaunay(platonic_vertices(6), S)
        assert len(cells) == 8
        for c in cells:
            assert c.size == 3
            assert c.circumradius == pytest.approx(math.acos(1 / math.sqrt(3)), abs=1e-12)

    @pytest.mark.parametrize("g", [E, S, H])
    def test_random_empty_circumdisk(self, g, rng):
        from conftest import random_points

        pts = random_points(g, rng, 50, spread=1.0)
        decomp = molnar(pts, g)
        assert not all_defects(decomp).get("empty_circumdisk")

    def test_errors(self):
        with pytest.raises(DomainError):
            delaunay(lifted([(0, 0), (1, 0)]), E)
        with pytest.raises(DegenerateTriangleError):
            delaunay(lifted([(0, 0), (1, 0), (2, 0), (3, 0)]), E)
        with pytest.raises(DomainError):
            delaunay(lifted([(0, 0), (0, 0), (1, 1)]), E)


class TestMolnar:
    def test_thin_apex_over_deep_triangle_gets_bridge(self):
        decomp = molnar(lifted([(0, 0), (2, 0), (1, 0.3), (1, -4)]), E)
        assert len(decomp.bridges) == 1
        br = decomp.bridges[0]
        # circumcenter (1, k) of (0,0), (2,0), (1,0.3): 1 + k^2 = (0.3 - k)^2
        k = (0.09 - 1) / 0.6
        assert br.applied and set(br.edge) == {0, 1}
        np.testing.assert_allclose(br.apex, [1, k, 1], atol=1e-12)
        upper = next(c for c in decomp.cells if 2 in c.point_ids)
        assert len(upper.vertices) == 4
        assert not all_defects(decomp)

    def test_short_diagonal_kite_has_no_bridge(self):
        decomp = molnar(lifted([(0, 0), (2, 0), (1, 0.3), (1, -0.3)]), E)
        assert decomp.bridges == ()
        for cell, dcell in zip(decomp.cells, decomp.delaunay_cells):
            np.testing.assert_allclose(cell.vertices, dcell.vertices)

    def test_centered_cells_leave_delaunay_unchanged(self):
        lattice = euclidean_extremal_density_lattice(0.5, window=3)
        decomp = molnar(lattice.centers, E)
        assert not decomp.bridges
        assert len(decomp.cells) == len(decomp.delaunay_cells)

    @pytest.mark.parametrize("g,rho,extent", [(E, 1.0, 4.0), (S, 0.35, None), (H, 0.3, 1.2)])
    def test_random_saturated_invariants(self, g, rho, extent, rng):
        for _ in range(5):
            p = random_saturated_packing(g, rng, rho, extent=extent, attempts=600)
            m = molnar(p.centers, g)
            assert not all_defects(m)
            r = refine(m, rho)
            assert not all_defects(r)


class TestRefine:
    def test_lattice_cells_are_regular_type1(self):
        lattice = euclidean_extremal_density_lattice(0.5, window=4)
        decomp = refined_decomposition(lattice.centers, E, 1.0)
        inner = decomp.interior_cells()
        assert inner and all(c.kind == "type1" for c in inner)
        for c in inner:
            sides = kern.pairwise_distances(E, c.vertices)[np.triu_indices(3, 1)]
            np.testing.assert_allclose(sides, 2.0, atol=1e-9)
            assert cell_density(c, 1.0, E) == pytest.approx(math.pi / math.sqrt(12), abs=1e-12)

    def test_octahedron_cells(self):
        rho = math.pi / 4
        pts = platonic_vertices(6)
        assert saturation_check(pts, S, rho)
        decomp = refined_decomposition(pts, S, rho)
        assert decomp.stage == "refined"
        assert decomp.total_area() == pytest.approx(4 * math.pi, rel=1e-12)
        for c in decomp.cells:
            assert c.kind == "type1"
            assert cell_density(c, rho, S) == pytest.approx(3 * (1 - math.sqrt(2) / 2), abs=1e-12)

    def test_large_sphere_radius_skips_refinement(self):
        decomp = refined_decomposition(platonic_vertices(4), S, 0.9)
        assert decomp.stage == "molnar-unrefined"

    def test_dented_triangle_gives_truncated_cell(self):
        decomp = refined_decomposition(lifted([(0, 0), (2, 0), (1, 0.3), (1, -4)]), E, 0.5)
        dented = [c for c in decomp.cells if c.inner_apex is not None]
        assert len(dented) == 1 and dented[0].kind == "type2"
        assert set(dented[0].generating_edge) == {0, 1}
        np.testing.assert_allclose(dented[0].inner_apex, decomp.bridges[0].apex)
        assert decomp.total_area() == pytest.approx(hull_area(decomp.points, E), rel=1e-12)

    def test_not_saturated(self):
        pts = lifted([(x, y) for x in range(0, 40, 8) for y in range(0, 40, 8)])
        assert not saturation_check(pts, E, 1.0)
        with pytest.raises(NotSaturatedError):
            refined_decomposition(pts, E, 1.0)

    def test_saturation_examples(self):
        assert not saturation_check(lifted([(0, 0), (50, 0)]), E, 1.0)
        dense = lifted([(x, y) for x in range(6) for y in range(6)])
        assert saturation_check(dense, E, 0.5)

    def test_refine_requires_molnar_stage(self):
        decomp = refined_decomposition(platonic_vertices(6), S, math.pi / 4)
        with pytest.raises(DomainError):
            refine(decomp, math.pi / 4)

    @pytest.mark.parametrize("g,rho,extent", [(E, 1.0, 4.0), (S, 0.35, None), (H, 0.3, 1.2)])
    def test_cell_density_at_most_plain_bound(self, g, rho, extent, rng):
        bound = B.density_bound(g, 0.0, rho).value
        for _ in range(5):
            p = random_saturated_packing(g, rng, rho, extent=extent, attempts=600)
            decomp = refined_decomposition(p.centers, g, rho)
            for c in decomp.interior_cells():
                assert cell_density(c, rho, g) <= bound + 1e-9

    def test_zero_area_cell_density_raises(self):
        decomp = refined_decomposition(platonic_vertices(6), S, math.pi / 4)
        cell = decomp.cells[0]
        flat = type(cell)(cell.kind, cell.keys, np.array([cell.vertices[0]] * 3), cell.source)
        with pytest.raises(DegenerateTriangleError):
            cell_density(flat, math.pi / 4, S)
        assert cell_area(S, cell) == pytest.approx(math.pi / 2)


class TestRecords:
    def test_record_fields_round_trip(self):
        decomp = refined_decomposition(platonic_vertices(6), S, math.pi / 4)
        records = decomp.records()
        assert len(records) == len(decomp.cells)
        for rec, cell in zip(records, decomp.cells):
            kind, flag, verts, center, radius = rec.split("\t")
            assert kind == cell.kind and flag == "interior"
            parsed = np.array([[float(v) for v in p.split()] for p in verts.split("|")])
            assert np.array_equal(parsed, cell.vertices)
            assert float(radius) == pytest.approx(math.acos(1 / math.sqrt(3)), abs=1e-15)
            assert len(center.split()) == 3

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.stats import qmc

from seppack import formulas as F
from seppack import geometry as kern
from seppack import triangles as T
from seppack.errors import DomainError, NoCircumcircleError
from seppack.geometry import Geometry

E, S, H = Geometry.EUCLIDEAN, Geometry.SPHERICAL, Geometry.HYPERBOLIC


def sphere_member(lam, u):
    lo = math.asin(math.tan(lam))
    return lo + (math.pi / 2 - lo) * u


def measured(tri):
    t = T.model_triangle(tri)
    return kern.triangle_area(t), kern.circumcircle(t)[1]


class TestClosedFormsAgainstConstruction:
    @given(st.floats(0.02, 0.75), st.floats(0.002, 0.998), st.sampled_from((1, 2)))
    def test_sphere(self, lam, u, variant):
        y = sphere_member(lam, u)
        tri = T.family_triangle(S, y, lam, variant)
        area, radius = measured(tri)
        assert tri.area == pytest.approx(area, abs=1e-9)
        if tri.circumradius is not None:
            assert tri.circumradius == pytest.approx(radius, abs=1e-9)

    @given(st.floats(0.02, 2.0), st.floats(1.01, 3.0))
    def test_hyperbolic(self, lam, ratio):
        tri = T.family_triangle(H, lam * ratio, lam)
        t = T.model_triangle(tri)
        assert tri.area == pytest.approx(kern.triangle_area(t), abs=1e-9)
        if tri.circumradius is None:
            with pytest.raises(NoCircumcircleError):
                kern.circumcircle(t)
        else:
            assert tri.circumradius == pytest.approx(kern.circumcircle(t)[1], abs=1e-9)

    @given(st.floats(0.05, 3.0), st.floats(1.01, 3.0))
    def test_euclidean(self, lam, ratio):
        tri = T.family_triangle(E, lam * ratio, lam)
        area, radius = measured(tri)
        assert tri.area == pytest.approx(area, rel=1e-9)
        assert tri.circumradius == pytest.approx(radius, rel=1e-9)

    @given(st.floats(0.05, 0.99))
    def test_euclidean_unit_leg_member_area(self, lam):
        y = math.sqrt(2 * lam * lam / (1 + math.sqrt(1 - lam * lam)))  # cancellation-free sqrt(2 - 2 sqrt(1 - lam^2))
        tri = T.family_triangle(E, y, lam)
        assert tri.half_leg == pytest.approx(1.0, rel=1e-12)
        assert tri.area == pytest.approx(2 * lam, rel=1e-12)

    @given(st.floats(0.05, 3.0))
    def test_euclidean_minimal_circumradius(self, lam):
        tri = T.family_triangle(E, math.sqrt(1.5) * lam, lam)
        assert tri.circumradius == pytest.approx(3 * math.sqrt(3) / 4 * lam, rel=1e-12)

    def test_half_area_cosine_matches_area(self):
        for g, y, lam, variant in ((S, 0.9, 0.4, 1), (H, 1.2, 0.6, None)):
            c = T.family_half_area_cosine(g, y, lam, variant)
            assert c == pytest.approx(math.cos(T.family_area(g, y, lam, variant) / 2), abs=1e-12)


class TestRegular:
    def test_examples(self):
        assert T.regular_triangle(E, 1).circumradius == pytest.approx(2 / math.sqrt(3))
        octa = T.regular_triangle(S, math.pi / 4)
        assert octa.circumradius == pytest.approx(math.acos(1 / math.sqrt(3)), abs=1e-15)
        assert octa.area == pytest.approx(math.pi / 2, abs=1e-15)
        assert T.regular_triangle(H, 1e-5).circumradius / 1e-5 == pytest.approx(2 / math.sqrt(3), rel=1e-9)

    def test_spherical_limit(self):
        with pytest.raises(DomainError):
            T.regular_triangle(S, math.pi / 3)

    @given(st.sampled_from((E, S, H)), st.floats(0.05, 1.0))
    def test_matches_construction(self, g, rho):
        tri = T.regular_triangle(g, rho)
        area, radius = measured(tri)
        assert tri.area == pytest.approx(area, abs=1e-10)
        assert tri.circumradius == pytest.approx(radius, abs=1e-10)


class TestMidpointLineCondition:
    @given(st.floats(0.02, 0.75), st.floats(0.002, 0.998))
    def test_sphere_short_family(self, lam, u):
        assert T.satisfies_cstarstar(T.family_triangle(S, sphere_member(lam, u), lam, 1))

    @given(st.floats(0.05, 1.5), st.floats(1.05, 3.0))
    def test_hyperbolic_and_euclidean_families(self, lam, ratio):
        assert T.satisfies_cstarstar(T.family_triangle(H, lam * ratio, lam))
        assert T.satisfies_cstarstar(T.family_triangle(E, lam * ratio, lam))

    def test_regular_euclidean(self):
        reg = T.regular_triangle(E, 1.0)
        assert T.satisfies_cstarstar(reg, math.sqrt(3) / 2)
        assert not T.satisfies_cstarstar(reg, 0.9)


class TestCircumcenterContainment:
    @pytest.mark.parametrize("lam", [0.1, 0.3, 0.6])
    def test_sphere_short_family_threshold(self, lam):
        threshold = math.asin(math.sqrt(2) * math.sin(lam))
        for y in np.linspace(math.asin(math.tan(lam)) + 1e-6, math.pi / 2 - 1e-6, 60):
            t = T.model_triangle(T.family_triangle(S, y, lam, 1))
            if abs(y - threshold) > 1e-6:
                assert kern.contains_circumcenter(t) == (y < threshold)
        assert kern.contains_circumcenter(T.model_triangle(T.family_triangle(S, threshold, lam, 1)))

    @pytest.mark.parametrize("lam", [0.1, 0.3, 0.6])
    def test_sphere_long_family_always(self, lam):
        for y in np.linspace(math.asin(math.tan(lam)) + 1e-6, math.pi / 2 - 1e-3, 40):
            tri = T.family_triangle(S, y, lam, 2)
            if 2 * tri.half_leg < math.pi - 1e-3:
                assert kern.contains_circumcenter(T.model_triangle(tri))

    @pytest.mark.parametrize("g, threshold", [(H, lambda t: math.asinh(math.sqrt(2) * math.sinh(t))),
                                              (E, lambda t: math.sqrt(2) * t)])
    def test_flat_and_hyperbolic_threshold(self, g, threshold):
        lam = 0.5
        for y in np.linspace(lam * 1.01, lam * 3, 60):
            if abs(y - threshold(lam)) < 1e-6:
                continue
            tri = T.family_triangle(g, y, lam)
            try:
                inside = kern.contains_circumcenter(T.model_triangle(tri))
            except Exception:
                assert g is H
                continue
            assert inside == (y < threshold(lam))


class TestSideOrdering:
    def test_trichotomy(self):
        for lam in np.linspace(0.02, 0.78, 40):
            ys_ = F.y_s(S, lam) if lam <= math.asin(0.6) else math.inf
            yb_ = F.y_b(lam) if lam <= math.asin(0.6) else math.inf
            lo = math.asin(math.tan(lam))
            for y in np.linspace(lo + 1e-7, math.pi / 2 - 1e-7, 80):
                x1, x2 = F.x1_sphere(y, lam), F.x2_sphere(y, lam)
                if min(abs(y - ys_), abs(y - yb_)) < 1e-7:
                    continue
                if lam <= math.asin(1 / math.sqrt(3)) and y <= ys_:
                    assert y <= x1 <= x2
                elif lam <= math.asin(0.6) and ys_ <= y <= yb_:
                    assert x1 <= y <= x2
                else:
                    assert x1 <= x2 <= y


class TestMonotonicity:
    @pytest.mark.parametrize("lam", [0.1, 0.4, 0.7])
    def test_sphere_areas(self, lam):
        lo, mid = math.asin(math.tan(lam)), math.asin(math.sqrt(2) * math.sin(lam))
        a1 = [T.family_area(S, y, lam, 1) for y in np.linspace(lo + 1e-9, mid, 300)]
        a2 = [T.family_area(S, y, lam, 1) for y in np.linspace(mid, math.pi / 2, 300)]
        assert np.all(np.diff(a1) < 0) and np.all(np.diff(a2) > 0)
        a3 = [T.family_area(S, y, lam, 2) for y in np.linspace(lo + 1e-9, math.pi / 2, 300)]
        assert np.all(np.diff(a3) > 0)

    @pytest.mark.parametrize("lam", [0.1, 0.4, 0.7])
    def test_sphere_circumradii(self, lam):
        lo, ym = math.asin(math.tan(lam)), F.y_min(S, lam)
        r1 = [T.family_circumradius(S, y, lam, 1) for y in np.linspace(lo + 1e-9, ym, 300)]
        assert np.all(np.diff(r1) < 0)
        hi = math.asin(math.sqrt(2) * math.sin(lam))
        r1 = [T.family_circumradius(S, y, lam, 1) for y in np.linspace(ym, hi, 300)]
        assert np.all(np.diff(r1) > 0)
        r2 = [T.family_circumradius(S, y, lam, 2) for y in np.linspace(lo + 1e-9, math.pi / 2 - 1e-3, 300)]
        assert np.all(np.diff(r2) > 0)

    @pytest.mark.parametrize("g", [E, S, H])
    def test_two_disk_density_decreasing(self, g):
        rho = 0.3
        legs = np.linspace(0.62, 1.0, 40)
        bases = np.linspace(0.6, 1.0, 40)
        grid = np.array([[T.two_disk_density(g, leg, base, rho) if base / 2 < leg and (g is not S or leg / 2 < base) else np.nan
                          for leg in legs] for base in bases])
        d_leg = np.diff(grid, axis=1)
        d_base = np.diff(grid, axis=0)
        assert np.all(d_leg[np.isfinite(d_leg)] < 0)
        assert np.all(d_base[np.isfinite(d_base)] < 0)

    def test_two_disk_density_monte_carlo(self):
        rho, leg, base = 1.0, 2.6, 2.2
        d = T.two_disk_density(E, leg, base, rho)
        pts = T._construct(E, base / 2, leg / 2)[:, :2]
        sample = qmc.Sobol(2, seed=7).random_base2(20)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        xy = lo + sample * (hi - lo)
        a, b, c = pts
        def side(p, q):
            return (q[0] - p[0]) * (xy[:, 1] - p[1]) - (q[1] - p[1]) * (xy[:, 0] - p[0])
        s1, s2, s3 = side(a, b), side(b, c), side(c, a)
        inside = ((s1 >= 0) & (s2 >= 0) & (s3 >= 0)) | ((s1 <= 0) & (s2 <= 0) & (s3 <= 0))
        covered = inside & ((np.hypot(*(xy - a).T) <= rho) | (np.hypot(*(xy - b).T) <= rho))
        assert d == pytest.approx(covered.sum() / inside.sum(), abs=1e-3)

    def test_two_disk_density_flat_limit(self):
        eps = 1e-3
        flat = T.two_disk_density(E, 2.6, 2.2, 1.0)
        for g in (S, H):
            assert T.two_disk_density(g, 2.6 * eps, 2.2 * eps, eps) == pytest.approx(flat, rel=1e-4)

    def test_two_disk_density_domain(self):
        with pytest.raises(DomainError):
            T.two_disk_density(E, 2.0, 1.5, 1.0)


class TestDensity:
    def test_octahedron_face(self):
        rho = math.pi / 4
        assert T.triangle_density(T.regular_triangle(S, rho), rho) == pytest.approx(3 * (1 - math.sqrt(2) / 2), abs=1e-14)

    def test_hexagonal(self):
        assert T.triangle_density(T.regular_triangle(E, 1.0), 1.0) == pytest.approx(math.pi / math.sqrt(12))

    def test_describe(self):
        assert T.family_triangle(S, 0.9, 0.4, 2).describe().startswith("T2[sphere]")

import itertools
import json
import math

import numpy as np
import pytest

from loopfluct.geometry import (ConvexPolygon, DegenerateHullError, Disk,
                                EmptyRegionError, InconsistentHullError, Point2,
                                RasterBudgetError, RasterRegion, Segment,
                                chebyshev_inradius_convex, convex_hull,
                                dist_point_segment, enclosed_region,
                                hull_arclength, inradius, longest_facet,
                                max_local_roughness, outradius, signed_area)

from conftest import arclength, circle_points, polyline_polygon, star_polygon

SQ2 = math.sqrt(2.0)


class TestSignedArea:
    def test_unit_square_ccw(self):
        sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
        assert signed_area(np.array(sq, float)) == pytest.approx(1.0)

    def test_unit_square_cw(self):
        sq = np.array([(0, 0), (0, 1), (1, 1), (1, 0)], float)
        assert signed_area(sq) == pytest.approx(-1.0)

    def test_regular_4gon_circumradius_1(self):
        assert signed_area(circle_points(1.0, 4)) == pytest.approx(2.0)

    def test_too_few_points(self):
        with pytest.raises(ValueError):
            signed_area(np.array([(0, 0), (1, 1)], float))

    def test_orientation_flip(self, nprng):
        for _ in range(20):
            pts = nprng.normal(size=(int(nprng.integers(3, 50)), 2))
            assert signed_area(pts[::-1]) == pytest.approx(-signed_area(pts))


class TestConvexHull:
    def test_square_with_center(self):
        pts = np.array([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)], float)
        hull = convex_hull(pts)
        assert len(hull) == 4
        assert {tuple(v) for v in hull.vertices} == {(0, 0), (2, 0), (2, 2), (0, 2)}

    def test_collinear_raises_with_extreme_pair(self):
        pts = np.array([(0, 0), (1, 1), (2, 2)], float)
        with pytest.raises(DegenerateHullError) as exc:
            convex_hull(pts)
        assert exc.value.extreme_pair == (Point2(0, 0), Point2(2, 2))

    def test_ccw_positive_area(self, nprng):
        for _ in range(10):
            hull = convex_hull(nprng.normal(size=(30, 2)))
            assert hull.area > 0

    def test_against_triangle_containment_oracle(self, nprng):
        # a point is a hull vertex iff it is in no triangle of other points
        pts = nprng.normal(size=(50, 2))
        hull = convex_hull(pts)
        combos = np.array(list(itertools.combinations(range(len(pts)), 3)))
        expected = set()
        for i, p in enumerate(pts):
            tri = combos[np.all(combos != i, axis=1)]
            a, b, c = pts[tri[:, 0]], pts[tri[:, 1]], pts[tri[:, 2]]
            d1 = (b[:, 0] - a[:, 0]) * (p[1] - a[:, 1]) - (p[0] - a[:, 0]) * (b[:, 1] - a[:, 1])
            d2 = (c[:, 0] - b[:, 0]) * (p[1] - b[:, 1]) - (p[0] - b[:, 0]) * (c[:, 1] - b[:, 1])
            d3 = (a[:, 0] - c[:, 0]) * (p[1] - c[:, 1]) - (p[0] - c[:, 0]) * (a[:, 1] - c[:, 1])
            inside = np.any(((d1 >= 0) & (d2 >= 0) & (d3 >= 0))
                            | ((d1 <= 0) & (d2 <= 0) & (d3 <= 0)))
            if not inside:
                expected.add(i)
        got = {tuple(v) for v in hull.vertices}
        assert got == {tuple(pts[i]) for i in expected}

    def test_contains_every_input(self, nprng):
        for _ in range(10):
            pts = nprng.normal(size=(100, 2)) * nprng.uniform(0.1, 30)
            hull = convex_hull(pts)
            assert np.all(hull.signed_edge_distances(pts) >= -1e-9)

    def test_validation(self):
        with pytest.raises(ValueError):
            ConvexPolygon([(0, 0), (1, 0)])
        with pytest.raises(ValueError):
            ConvexPolygon([(0, 0), (0, 1), (1, 0)])  # clockwise


class TestEnclosedRegion:
    def test_circle_area(self):
        reg = enclosed_region(circle_points(1.0, 1024), 1 / 128)
        assert reg.area == pytest.approx(math.pi, rel=0.02)

    def test_figure_eight_two_components(self):
        s1 = np.array([(0, 0), (1, 0), (1, 1), (0, 1)], float)
        s2 = np.array([(0, 0), (-1, 0), (-1, -1), (0, -1)], float)
        loop = np.vstack([polyline_polygon(s1, 8), polyline_polygon(s2, 8)])
        reg = enclosed_region(loop, 1 / 128)
        assert abs(reg.area - 2.0) <= 3 * (1 / 128) * 8

    def test_simple_polygon_matches_shoelace(self, nprng):
        for _ in range(25):
            pts = star_polygon(nprng)
            h = float(nprng.uniform(0.003, 0.02)) * float(np.abs(pts).max())
            reg = enclosed_region(pts, h)
            assert abs(reg.area - abs(signed_area(pts))) <= 3 * h * arclength(pts)

    def test_halving_h_first_order(self, nprng):
        for _ in range(6):
            pts = star_polygon(nprng)
            h = 0.01 * float(np.abs(pts).max())
            a1 = enclosed_region(pts, h).area
            a2 = enclosed_region(pts, h / 2).area
            assert abs(a1 - a2) < 2 * h * arclength(pts)

    def test_bad_h(self):
        with pytest.raises(ValueError):
            enclosed_region(circle_points(1.0, 16), 0.0)

    def test_cell_budget(self):
        with pytest.raises(RasterBudgetError):
            enclosed_region(circle_points(1.0, 64), 1e-4, max_cells=10_000)

    def test_pgm_and_header(self, tmp_path):
        reg = enclosed_region(circle_points(1.0, 256), 1 / 32)
        stem = tmp_path / "region"
        reg.save(stem)
        raw = (tmp_path / "region.pgm").read_bytes()
        assert raw.startswith(b"P5\n")
        ny, nx = reg.grid.shape
        header, rest = raw.split(b"255\n", 1)
        assert header == f"P5\n{nx} {ny}\n".encode()
        assert len(rest) == nx * ny
        meta = json.loads((tmp_path / "region.json").read_text())
        assert meta["cell_count"] == reg.cell_count
        assert meta["dims"] == [ny, nx]
        assert meta["h"] == reg.h


class TestInradius:
    def test_square_side_2(self):
        sq = polyline_polygon([(-1, -1), (1, -1), (1, 1), (-1, 1)], 32)
        h = 1 / 64
        disk = inradius(enclosed_region(sq, h))
        assert abs(disk.radius - 1.0) <= h * SQ2
        assert np.hypot(disk.center.x, disk.center.y) <= 2 * h

    def test_disk(self):
        h = 1 / 64
        disk = inradius(enclosed_region(circle_points(0.7, 512), h))
        assert abs(disk.radius - 0.7) <= h * SQ2

    def test_rectangle_2x1(self):
        rect = polyline_polygon([(0, 0), (2, 0), (2, 1), (0, 1)], 32)
        h = 1 / 100
        assert abs(inradius(enclosed_region(rect, h)).radius - 0.5) <= h * SQ2

    def test_empty_region(self):
        empty = RasterRegion(origin=Point2(0, 0), h=0.1,
                             grid=np.zeros((4, 4), bool), cell_count=0)
        with pytest.raises(EmptyRegionError):
            inradius(empty)

    def test_inradius_below_outradius(self, nprng):
        for _ in range(8):
            pts = star_polygon(nprng)
            reg = enclosed_region(pts, 0.01 * float(np.abs(pts).max()))
            r_in = inradius(reg).radius
            r_out = outradius(reg.cell_centers()).radius
            assert r_in <= r_out

    def test_disk_near_equality(self):
        h = 1 / 128
        reg = enclosed_region(circle_points(1.0, 1024), h)
        r_in = inradius(reg).radius
        r_out = outradius(reg.cell_centers()).radius
        assert r_out - r_in <= 2 * h * SQ2


class TestOutradius:
    def test_right_triangle(self):
        d = outradius(np.array([(0, 0), (3, 0), (0, 4)], float))
        assert d.radius == pytest.approx(2.5, abs=1e-9)
        assert (d.center.x, d.center.y) == pytest.approx((1.5, 2.0), abs=1e-9)

    def test_square_corners(self):
        d = outradius(np.array([(-1, -1), (1, -1), (1, 1), (-1, 1)], float))
        assert d.radius == pytest.approx(SQ2, abs=1e-9)

    def test_circle_points(self):
        d = outradius(circle_points(5.0, 100))
        assert d.radius == pytest.approx(5.0, rel=1e-9)

    def test_empty(self):
        with pytest.raises(ValueError):
            outradius(np.empty((0, 2)))

    def test_contains_all_points(self, nprng):
        for _ in range(20):
            pts = nprng.normal(size=(int(nprng.integers(1, 200)), 2))
            d = outradius(pts)
            dist = np.hypot(pts[:, 0] - d.center.x, pts[:, 1] - d.center.y)
            assert np.all(dist <= d.radius + 1e-9 * max(d.radius, 1.0))

    def test_single_and_pair(self):
        assert outradius(np.array([[2.0, 3.0]])).radius == 0.0
        d = outradius(np.array([[0.0, 0.0], [2.0, 0.0]]))
        assert d.radius == pytest.approx(1.0)


class TestMaxLocalRoughness:
    def test_zero_for_hull_vertices(self):
        pts = circle_points(2.0, 12)
        assert max_local_roughness(pts, convex_hull(pts)) == pytest.approx(0.0, abs=1e-12)

    def test_center_point_square(self):
        loop = np.array([(-1, -1), (1, -1), (1, 1), (-1, 1), (0, 0)], float)
        hull = convex_hull(loop)
        assert max_local_roughness(loop, hull) == pytest.approx(1.0)

    def test_matches_brute_force(self, nprng):
        for _ in range(10):
            pts = star_polygon(nprng)
            hull = convex_hull(pts)
            got = max_local_roughness(pts, hull)
            v = hull.vertices
            brute = max(min(dist_point_segment(p, (v[i], v[(i + 1) % len(v)]))
                            for i in range(len(v))) for p in pts)
            assert got == pytest.approx(brute, abs=1e-12)

    def test_outside_vertex_raises(self):
        hull = convex_hull(np.array([(0, 0), (1, 0), (1, 1), (0, 1)], float))
        with pytest.raises(InconsistentHullError):
            max_local_roughness(np.array([(0.5, 0.5), (3.0, 3.0)]), hull)


class TestFacetsAndArclength:
    def test_square_facet(self):
        hull = convex_hull(np.array([(-1, -1), (1, -1), (1, 1), (-1, 1)], float))
        assert longest_facet(hull) == pytest.approx(2.0)

    @pytest.mark.parametrize("k", [5, 8, 12, 100])
    def test_regular_kgon_facet(self, k):
        hull = convex_hull(circle_points(1.0, k))
        assert longest_facet(hull) == pytest.approx(2 * math.sin(math.pi / k), rel=1e-12)

    def test_merged_near_collinear(self):
        # bottom's middle vertex turns by ~1e-6 rad; tol 1e-4 fuses the two
        # bottom edges into one facet whose length is the endpoint chord
        eps = 5e-7
        v = np.array([(0, 0), (1, -eps), (2, 0), (1.5, 1), (0.5, 1)], float)
        hull = ConvexPolygon(v, collinearity_tol=1e-9)
        assert longest_facet(hull, merge_tol=1e-4) == pytest.approx(2.0, rel=1e-9)
        # below the middle turn angle nothing merges
        assert longest_facet(hull, merge_tol=1e-8) == pytest.approx(math.sqrt(1.25), rel=1e-9)

    def test_square_arclength(self):
        hull = convex_hull(np.array([(-1, -1), (1, -1), (1, 1), (-1, 1)], float))
        assert hull_arclength(hull) == pytest.approx(8.0)

    @pytest.mark.parametrize("k", [3, 7, 64, 512])
    def test_kgon_arclength(self, k):
        hull = convex_hull(circle_points(1.0, k))
        assert hull_arclength(hull) == pytest.approx(2 * k * math.sin(math.pi / k), rel=1e-12)

    def test_isoperimetric(self, nprng):
        for _ in range(50):
            hull = convex_hull(nprng.normal(size=(40, 2)) * nprng.uniform(0.1, 10))
            assert hull_arclength(hull) ** 2 >= 4 * math.pi * hull.area - 1e-9


class TestDistPointSegment:
    def test_above_middle(self):
        assert dist_point_segment((0, 1), Segment(Point2(-1, 0), Point2(1, 0))) == 1.0

    def test_on_segment(self):
        assert dist_point_segment((0.25, 0), ((-1, 0), (1, 0))) == 0.0

    def test_endpoint_regime(self):
        assert dist_point_segment((2, 0), ((-1, 0), (1, 0))) == 1.0

    def test_degenerate_segment(self):
        assert dist_point_segment((3, 4), ((0, 0), (0, 0))) == 5.0


class TestChebyshevInradius:
    def test_square(self):
        hull = convex_hull(np.array([(-1, -1), (1, -1), (1, 1), (-1, 1)], float))
        d = chebyshev_inradius_convex(hull)
        assert d.radius == pytest.approx(1.0, abs=1e-9)
        assert (d.center.x, d.center.y) == pytest.approx((0, 0), abs=1e-9)

    def test_equilateral_triangle(self):
        s = 2.0
        tri = np.array([(0, 0), (s, 0), (s / 2, s * math.sqrt(3) / 2)])
        d = chebyshev_inradius_convex(convex_hull(tri))
        assert d.radius == pytest.approx(s / (2 * math.sqrt(3)), abs=1e-9)

    def test_matches_raster_inradius(self, nprng):
        for _ in range(5):
            hull = convex_hull(nprng.normal(size=(25, 2)) * 2.0)
            h = 0.01 * float(np.abs(hull.vertices).max())
            reg = enclosed_region(polyline_polygon(hull.vertices, 8), h)
            assert abs(chebyshev_inradius_convex(hull).radius
                       - inradius(reg).radius) <= h * SQ2

"""Tests for F-lines, geodesics, standard position and bisectors."""

import logging
import math

import pytest

from hypergeo.algebra import I, quat
from hypergeo.errors import DomainError
from hypergeo.geometry import (
    Bisector,
    FLine,
    Geodesic,
    bisector_contains,
    bisector_point_on_ray,
    dirichlet_membership,
    dist_to_spine,
    distance_to_geodesic,
    geodesic_point,
    geodesic_through,
    halfspace_side,
    move_to_standard,
    project_to_fline,
    pythagoras_check,
    segment_point,
    slice_points,
    spine_point,
    standard_bisector,
    standard_pair,
)
from hypergeo.hermitian import (
    BallPoint,
    Triple,
    distance,
    random_ball_point,
    random_boundary_triple,
    random_isometry,
)

MINUS = BallPoint.of(0.0, -1.0)
PLUS = BallPoint.of(0.0, 1.0)


class TestFLine:
    """Lines spanned by two lifts and the projection onto them."""

    def test_standard_line_membership(self):
        line = FLine.standard(2)
        assert line.contains(BallPoint.of(0.0, 0.4))
        assert line.contains(BallPoint.of(0.0, quat(0.1, 0.2, -0.3, 0.4)))
        assert not line.contains(BallPoint.of(0.3, 0.4))

    def test_projection_onto_standard_line(self):
        image = project_to_fline(FLine.standard(2), BallPoint.of(0.3, 0.4))
        assert image.chordal(BallPoint.of(0.0, 0.4)) < 1e-12

    def test_projection_fixes_line_points(self):
        p = BallPoint.of(0.0, quat(0.2, 0.0, 0.5))
        assert project_to_fline(FLine.standard(2), p).chordal(p) < 1e-12

    def test_line_through_two_points(self, rng):
        p, q = random_ball_point(rng), random_ball_point(rng)
        line = FLine.through(p, q)
        assert line.contains(p) and line.contains(q)
        assert line.contains(segment_point(p, q, 0.3))

    def test_line_through_coincident_points_raises(self):
        p = BallPoint.of(0.1, 0.2)
        with pytest.raises(DomainError):
            FLine.through(p, p)

    def test_pythagoras(self, rng):
        line = FLine.standard(2)
        for _ in range(20):
            p = random_ball_point(rng)
            s = BallPoint.of(0.0, quat(*rng.uniform(-0.4, 0.4, size=4)))
            assert pythagoras_check(p, line, s) < 1e-9

    def test_right_triangle_projects_onto_the_right_angle(self, rng):
        origin = BallPoint.origin(2)
        for u, sigma in ((0.5, 0.3), (-0.7, 0.6), (0.2, -0.8)):
            g = random_isometry(rng, spread=1.0)
            z, w = g.apply(BallPoint.of(u, 0.0)), g.apply(origin)
            s = g.apply(BallPoint.of(0.0, sigma))
            assert pythagoras_check(z, FLine.through(w, s), s) < 1e-9
            assert project_to_fline(FLine.through(w, s), z).chordal(w) < 1e-8


class TestGeodesics:
    """Unit-speed real geodesics."""

    @pytest.mark.parametrize("s", [-3.0, -0.5, 0.0, 0.8, 2.5])
    def test_standard_geodesic_points(self, s):
        g = Geodesic(MINUS, PLUS)
        assert geodesic_point(g, s).chordal(BallPoint.of(0.0, math.tanh(s / 2.0))) < 1e-14

    def test_unit_speed(self, rng):
        x = random_boundary_triple(rng)
        g = Geodesic(x.p1, x.p2)
        for s, t in ((0.0, 1.0), (-2.0, 0.5), (1.5, 4.0)):
            assert distance(g.point(s), g.point(t)) == pytest.approx(t - s, abs=1e-9)

    def test_orientation(self, rng):
        x = random_boundary_triple(rng)
        g = Geodesic(x.p1, x.p2)
        assert g.point(-40.0).chordal(x.p1) < 1e-6
        assert g.point(40.0).chordal(x.p2) < 1e-6

    def test_interior_endpoints_raise(self):
        with pytest.raises(DomainError):
            Geodesic(BallPoint.of(0.0, 0.5), PLUS)
        with pytest.raises(DomainError):
            Geodesic(PLUS, PLUS)

    def test_geodesic_through_interior_points(self):
        g = geodesic_through(BallPoint.of(0.0, -0.2), BallPoint.of(0.0, 0.5))
        assert g.a.chordal(MINUS) < 1e-9
        assert g.b.chordal(PLUS) < 1e-9

    def test_distance_to_geodesic(self):
        g = Geodesic(MINUS, PLUS)
        d = distance_to_geodesic(BallPoint.of(0.5, 0.0), g)
        assert d == pytest.approx(2.0 * math.atanh(0.5), abs=1e-9)

    def test_segment_endpoints(self, rng):
        p, q = random_ball_point(rng), random_ball_point(rng)
        assert segment_point(p, q, 0.0).chordal(p) < 1e-12
        assert segment_point(p, q, 1.0).chordal(q) < 1e-12


class TestStandardPosition:
    """Moving boundary pairs to (0, -1), (0, 1)."""

    def test_move_to_standard(self, rng):
        for _ in range(20):
            x = random_boundary_triple(rng)
            g = move_to_standard(x.p1, x.p2)
            assert g.residual() < 1e-9
            assert g.apply(x.p1).chordal(MINUS) < 1e-8
            assert g.apply(x.p2).chordal(PLUS) < 1e-8

    def test_interior_input_raises(self):
        with pytest.raises(DomainError):
            move_to_standard(BallPoint.of(0.0, 0.5), PLUS)

    def test_standard_pair(self):
        minus, plus = standard_pair(3)
        assert minus.chordal(BallPoint.of(0.0, 0.0, -1.0)) == 0.0
        assert plus.chordal(BallPoint.of(0.0, 0.0, 1.0)) == 0.0

    def test_dist_to_spine_worked_example(self):
        x = Triple(MINUS, PLUS, BallPoint.of(math.sqrt(3.0) / 2.0, 0.5 * I))
        assert dist_to_spine(x) == pytest.approx(math.log(3.0), abs=1e-9)

    def test_dist_to_spine_on_the_real_circle(self):
        x = Triple(MINUS, PLUS, BallPoint.of(1.0, 0.0))
        assert dist_to_spine(x) == pytest.approx(0.0, abs=1e-9)


class TestBisectors:
    """Equidistant sets and Dirichlet half-spaces."""

    def test_standard_bisector_membership(self):
        b = standard_bisector(0.5)
        for p in (BallPoint.of(0.3, 0.4 * I), BallPoint.of(quat(0.1, 0.2), quat(0.0, 0.3, -0.2)),
                  BallPoint.origin(2)):
            assert abs(bisector_contains(b, p)) < 1e-9

    def test_residual_sign(self):
        b = standard_bisector(0.5)
        assert bisector_contains(b, BallPoint.of(0.0, 0.3)) > 0.0
        assert bisector_contains(b, BallPoint.of(0.0, -0.3)) < 0.0

    def test_spine_point_is_midpoint(self):
        assert spine_point(standard_bisector(0.4)).chordal(BallPoint.origin(2)) < 1e-12

    def test_point_on_ray(self):
        b = standard_bisector(0.5)
        p = bisector_point_on_ray(b, BallPoint.of(0.0, -0.5), BallPoint.of(0.0, 0.5))
        assert p.chordal(BallPoint.origin(2)) < 1e-9

    def test_ray_missing_the_bisector_raises(self):
        b = standard_bisector(0.5)
        with pytest.raises(DomainError):
            bisector_point_on_ray(b, BallPoint.of(0.0, 0.2), BallPoint.of(0.0, 0.6))

    def test_boundary_centers_raise(self):
        with pytest.raises(DomainError):
            Bisector(BallPoint.origin(2), PLUS)

    def test_halfspace_side(self):
        z, w = BallPoint.of(0.0, -0.5), BallPoint.of(0.0, 0.5)
        assert halfspace_side(z, w, BallPoint.of(0.0, -0.1)) == 1
        assert halfspace_side(z, w, BallPoint.of(0.0, 0.1)) == -1
        assert halfspace_side(z, w, BallPoint.of(0.2, 0.0)) == 0

    def test_dirichlet_membership(self):
        orbit = [BallPoint.of(0.0, 0.5), BallPoint.of(0.0, -0.5)]
        center = BallPoint.origin(2)
        assert dirichlet_membership(center, orbit, BallPoint.of(0.1, 0.1))
        assert not dirichlet_membership(center, orbit, BallPoint.of(0.0, 0.4))

    def test_face_points_are_not_members(self):
        orbit = [BallPoint.of(0.0, 0.5), BallPoint.of(0.0, -0.5)]
        center = BallPoint.origin(2)
        on_face = spine_point(Bisector(center, orbit[0]))
        assert abs(bisector_contains(Bisector(center, orbit[0]), on_face)) < 1e-12
        assert not dirichlet_membership(center, orbit, on_face)
        assert dirichlet_membership(center, orbit, segment_point(center, on_face, 0.9))

    def test_empty_orbit_is_vacuous(self, caplog):
        with caplog.at_level(logging.WARNING):
            assert dirichlet_membership(BallPoint.origin(2), [], BallPoint.of(0.0, 0.9))
        assert "EMPTY_ORBIT" in caplog.text

    def test_slice_points_lie_on_the_bisector(self, rng):
        b = standard_bisector(0.5)
        for p in slice_points(quat(0.0, 0.3, 0.1), rng, 10):
            assert abs(bisector_contains(b, p)) < 1e-9
            assert p.coords[-1] == quat(0.0, 0.3, 0.1)

    def test_bisector_is_invariant(self, rng):
        g = random_isometry(rng)
        b = standard_bisector(0.3)
        moved = Bisector(g.apply(b.z1), g.apply(b.z2))
        p = g.apply(BallPoint.of(0.2, 0.5 * I))
        assert abs(bisector_contains(moved, p)) < 1e-8

    def test_slices_of_a_moved_bisector(self, rng):
        g = random_isometry(rng, spread=1.0)
        standard = standard_bisector(0.4)
        moved = Bisector(g.apply(standard.z1), g.apply(standard.z2))
        for p in slice_points(quat(0.0, 0.2, -0.4, 0.1), rng, 20):
            assert abs(bisector_contains(moved, g.apply(p))) < 1e-9

    def test_bisector_points_project_into_the_spine(self, rng):
        for _ in range(10):
            g = random_isometry(rng, spread=1.0)
            standard = standard_bisector(float(rng.uniform(0.1, 0.8)))
            b = Bisector(g.apply(standard.z1), g.apply(standard.z2))
            line = FLine.through(b.z1, b.z2)
            for _ in range(10):
                y = random_ball_point(rng, max_radius=0.9)
                start = b.z2 if bisector_contains(b, y) < 0.0 else b.z1
                x = bisector_point_on_ray(b, start, y)
                assert abs(bisector_contains(b, x)) < 1e-9
                image = project_to_fline(line, x)
                assert abs(distance(image, b.z1) - distance(image, b.z2)) < 1e-9
                assert line.contains(image)

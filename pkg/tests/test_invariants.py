"""Tests for the angular invariant, the area oracle, triple isometries and the character."""

import math

import pytest

from hypergeo.algebra import I, Octonion, quat
from hypergeo.errors import ChainNotClosedError, DomainError, NotOnLineError
from hypergeo.geometry import FLine
from hypergeo.hermitian import BallPoint, Triple, random_boundary_triple, random_isometry
from hypergeo.invariants import (
    CHARACTER_BOUND,
    TriangulatedCycle,
    cartan_angular,
    cartan_signature,
    character_eval,
    classify_triple,
    fline_residual,
    octonion_angular,
    real_circle_residual,
    toledo,
    toledo_via_area,
    triangle_area_gb,
    triple_isometry,
)

MINUS = BallPoint.of(0.0, -1.0)
PLUS = BallPoint.of(0.0, 1.0)
WORKED = Triple(MINUS, PLUS, BallPoint.of(math.sqrt(3.0) / 2.0, 0.5 * I))
HLINE = Triple(MINUS, PLUS, BallPoint.of(0.0, I))
REAL = Triple(MINUS, PLUS, BallPoint.of(1.0, 0.0))

PERMUTATIONS = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0)]


class TestCartanAngular:
    """Angular invariant of boundary triples."""

    def test_worked_example(self):
        report = cartan_signature(WORKED)
        assert report.tan_angle == pytest.approx(4.0 / 3.0, abs=1e-12)
        assert report.toledo == pytest.approx(2.0 * math.atan(4.0 / 3.0), abs=1e-12)
        assert report.dist_to_spine == pytest.approx(math.log(3.0), abs=1e-9)
        assert report.classification == "generic"
        assert report.triple_product == pytest.approx((-1.5, -2.0, 0.0, 0.0), abs=1e-12)

    def test_hline_triple(self):
        report = cartan_signature(HLINE)
        assert report.angle == pytest.approx(math.pi / 2.0, abs=1e-12)
        assert report.tan_angle == math.inf
        assert report.dist_to_spine == math.inf
        assert report.classification == "H-line"

    def test_real_plane_triple(self):
        assert cartan_angular(REAL) == 0.0
        assert classify_triple(REAL) == "real-plane"
        assert classify_triple(HLINE, "C") == "C-line"

    def test_standard_position_residuals(self):
        assert real_circle_residual(REAL) < 1e-9
        assert fline_residual(HLINE) < 1e-9
        assert fline_residual(WORKED) == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-9)

    def test_permutation_invariance(self, rng):
        for _ in range(20):
            x = random_boundary_triple(rng)
            base = cartan_angular(x)
            assert 0.0 <= base <= math.pi / 2.0
            for order in PERMUTATIONS:
                assert cartan_angular(x.permuted(order)) == pytest.approx(base, abs=1e-9)

    def test_isometry_invariance(self, rng):
        for _ in range(20):
            x = random_boundary_triple(rng)
            g = random_isometry(rng)
            assert cartan_angular(x.mapped(g)) == pytest.approx(cartan_angular(x), abs=1e-8)

    def test_toledo_is_twice_the_angle(self, rng):
        x = random_boundary_triple(rng)
        assert toledo(x) == 2.0 * cartan_angular(x)

    def test_as_dict(self):
        d = cartan_signature(WORKED).as_dict()
        assert set(d) == {"angle", "tan_angle", "toledo", "dist_to_spine", "classification", "triple_product"}


class TestAreaOracle:
    """Gauss-Bonnet area inside an F-line."""

    def test_worked_example_matches_toledo(self):
        assert toledo_via_area(WORKED) == pytest.approx(toledo(WORKED), abs=1e-9)

    def test_random_triples_match_toledo(self, rng):
        for _ in range(20):
            x = random_boundary_triple(rng)
            assert toledo_via_area(x) == pytest.approx(toledo(x), abs=1e-7)

    def test_ideal_third_vertex(self):
        assert triangle_area_gb(MINUS, PLUS, BallPoint.of(0.0, I), FLine.standard(2)) == math.pi

    def test_centre_vertex_has_zero_area(self):
        area = triangle_area_gb(MINUS, PLUS, BallPoint.origin(2), FLine.standard(2))
        assert area == pytest.approx(0.0, abs=1e-12)

    def test_vertex_off_the_line_raises(self):
        with pytest.raises(NotOnLineError):
            triangle_area_gb(MINUS, PLUS, BallPoint.of(0.3, 0.4), FLine.standard(2))


class TestTripleIsometry:
    """Constructive isometries between triples with equal invariants."""

    def test_maps_image_triple(self, rng):
        for _ in range(10):
            x = random_boundary_triple(rng)
            y = x.mapped(random_isometry(rng))
            f = triple_isometry(x, y)
            assert f is not None
            assert f.residual() < 1e-8
            for p, q in zip(x.points, y.points):
                assert f.apply(p).chordal(q) < 1e-8

    def test_different_invariants_give_none(self):
        assert triple_isometry(WORKED, REAL) is None

    def test_real_triples_are_congruent(self):
        other = Triple(BallPoint.of(1.0, 0.0), BallPoint.of(0.0, 1.0), BallPoint.of(-0.6, -0.8))
        f = triple_isometry(REAL, other)
        assert f is not None
        assert f.apply(REAL.p3).chordal(other.p3) < 1e-8


class TestOctonionAngular:
    def test_values(self):
        assert octonion_angular(quat(0.0, 0.5)) == pytest.approx(math.atan(4.0 / 3.0), abs=1e-12)
        assert octonion_angular(quat(0.4)) == 0.0
        assert octonion_angular(quat(0.6, 0.0, 0.8)) == pytest.approx(math.pi / 2.0, abs=1e-12)

    def test_octonion_input(self):
        zn = Octonion.from_components([0.0, 0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 0.0])
        assert octonion_angular(zn) == pytest.approx(math.atan(4.0 / 3.0), abs=1e-12)

    def test_outside_raises(self):
        with pytest.raises(DomainError):
            octonion_angular(quat(1.0, 1.0))

    def test_unit_real_with_round_off(self):
        assert octonion_angular(quat(1.0, 1e-14)) == 0.0
        zn = Octonion.from_components([-1.0, 0.0, 0.0, 3e-15, 0.0, 0.0, -2e-15, 0.0])
        assert octonion_angular(zn) == 0.0


class TestCharacter:
    """Character of a boundary map on a simplicial 2-cycle."""

    TETRAHEDRON = TriangulatedCycle.of([
        (1, ("b", "c", "d")),
        (-1, ("a", "c", "d")),
        (1, ("a", "b", "d")),
        (-1, ("a", "b", "c")),
    ])

    def test_tetrahedron_is_closed(self):
        assert self.TETRAHEDRON.is_closed
        assert self.TETRAHEDRON.vertices == ["a", "b", "c", "d"]

    def test_single_triangle_is_open(self):
        cycle = TriangulatedCycle.of([(1, ("a", "b", "c"))])
        assert cycle.boundary() == {("b", "c"): 1, ("a", "c"): -1, ("a", "b"): 1}
        assert not cycle.is_closed

    def test_real_circle_map_vanishes(self):
        vertices = {
            "a": BallPoint.of(1.0, 0.0),
            "b": BallPoint.of(0.0, 1.0),
            "c": BallPoint.of(-0.6, -0.8),
            "d": BallPoint.of(0.28, -0.96),
        }
        report = character_eval(self.TETRAHEDRON, vertices)
        assert report.closed
        assert report.bound_ok
        assert report.value == pytest.approx(0.0, abs=1e-9)

    def test_hline_triangle_reaches_the_bound(self):
        cycle = TriangulatedCycle.of([(1, ("a", "b", "c"))])
        vertices = {"a": MINUS, "b": PLUS, "c": BallPoint.of(0.0, I)}
        report = character_eval(cycle, vertices, require_closed=False)
        assert not report.closed
        assert report.bound_ok
        assert report.value == pytest.approx(CHARACTER_BOUND, abs=1e-9)

    def test_open_chain_raises_when_closure_required(self):
        cycle = TriangulatedCycle.of([(1, ("a", "b", "c"))])
        with pytest.raises(ChainNotClosedError):
            character_eval(cycle, {"a": MINUS, "b": PLUS, "c": BallPoint.of(0.0, I)})

    def test_missing_vertex_raises(self):
        with pytest.raises(DomainError):
            character_eval(self.TETRAHEDRON, {"a": MINUS, "b": PLUS})

    def test_tetrahedron_on_random_points_is_bounded(self, rng):
        points = [random_boundary_triple(rng) for _ in range(2)]
        vertices = dict(zip("abcd", [points[0].p1, points[0].p2, points[0].p3, points[1].p1]))
        report = character_eval(self.TETRAHEDRON, vertices)
        assert report.bound_ok
        assert abs(report.value) <= 4 * CHARACTER_BOUND + 1e-9

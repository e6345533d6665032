"""Tests for the Hermitian form, ball points, distance and isometries."""

import math

import numpy as np
import pytest

from hypergeo.algebra import ONE, I, quat
from hypergeo.errors import DegenerateTripleError, DomainError, InfiniteDistanceError
from hypergeo.hermitian import (
    BallPoint,
    HVector,
    Isometry,
    Triple,
    axis_translation,
    ball_point_from_lift,
    distance,
    distance_via_form,
    form,
    form_real,
    from_complex,
    lift,
    qarray,
    random_ball_point,
    random_isometry,
    to_complex,
    triple_product,
)


class TestForm:
    """The indefinite form and lifts."""

    def test_origin_lift_is_negative(self):
        assert form_real(lift(BallPoint.origin(2))) == -1.0

    def test_boundary_lift_is_null(self):
        p = BallPoint.of(0.6, quat(0.0, 0.0, 0.8))
        assert abs(form_real(lift(p))) < 1e-15

    def test_form_is_hermitian(self, rng):
        z = HVector(qarray([quat(*rng.normal(size=4)) for _ in range(3)]))
        w = HVector(qarray([quat(*rng.normal(size=4)) for _ in range(3)]))
        diff = form(z, w) - form(w, z).conjugate()
        assert abs(diff) < 1e-12

    def test_form_is_left_linear(self, rng):
        z = HVector(qarray([quat(*rng.normal(size=4)) for _ in range(3)]))
        w = HVector(qarray([quat(*rng.normal(size=4)) for _ in range(3)]))
        lam = quat(0.3, -1.2, 0.7, 0.1)
        assert abs(form(z.scaled(lam), w) - lam * form(z, w)) < 1e-12

    def test_complex_embedding_round_trip(self, rng):
        m = qarray([[quat(*rng.normal(size=4)) for _ in range(3)] for _ in range(3)])
        back = from_complex(to_complex(m))
        assert all(abs(a - b) == 0.0 for a, b in zip(m.ravel(), back.ravel()))

    def test_complex_embedding_is_multiplicative(self, rng):
        a = qarray([[quat(*rng.normal(size=4)) for _ in range(2)] for _ in range(2)])
        b = qarray([[quat(*rng.normal(size=4)) for _ in range(2)] for _ in range(2)])
        direct = np.array([[sum((a[i, k] * b[k, j] for k in range(2)), quat()) for j in range(2)]
                           for i in range(2)], dtype=np.quaternion)
        via = from_complex(to_complex(a) @ to_complex(b))
        assert max(abs(x - y) for x, y in zip(direct.ravel(), via.ravel())) < 1e-12


class TestBallPoint:
    """Points of the closed ball."""

    def test_outside_raises(self):
        with pytest.raises(DomainError):
            BallPoint.of(0.8, 0.8)

    def test_boundary_and_interior(self):
        assert BallPoint.of(0.0, 1.0).is_boundary
        assert BallPoint.of(0.0, 1.0 + 5e-10).is_boundary
        assert BallPoint.of(0.3, 0.4).is_interior
        assert BallPoint.of(0.3, 0.4).kind == "interior"

    def test_lift_round_trip_under_left_scaling(self, rng):
        p = random_ball_point(rng)
        lam = quat(0.4, -0.3, 1.1, 0.2)
        q = ball_point_from_lift(lift(p).scaled(lam))
        assert p.chordal(q) < 1e-14

    def test_positive_lift_raises(self):
        with pytest.raises(DomainError):
            ball_point_from_lift(HVector(qarray([2.0, 0.0, 1.0])))

    def test_coincident_triple_raises(self):
        p = BallPoint.of(0.0, 1.0)
        with pytest.raises(DegenerateTripleError):
            Triple(p, p, BallPoint.of(1.0, 0.0))


class TestDistance:
    """Hyperbolic distance."""

    @pytest.mark.parametrize("t", [0.0, 0.1, 0.5, 0.9, 0.999])
    def test_distance_from_origin(self, t):
        d = distance(BallPoint.origin(2), BallPoint.of(t, 0.0))
        assert d == pytest.approx(2.0 * math.atanh(t), abs=1e-12)

    def test_boundary_distance_raises(self):
        with pytest.raises(InfiniteDistanceError):
            distance(BallPoint.origin(2), BallPoint.of(0.0, 1.0))

    def test_matches_projective_formula(self, rng):
        for _ in range(200):
            p, q = random_ball_point(rng), random_ball_point(rng)
            assert abs(distance(p, q) - distance_via_form(p, q)) < 1e-7

    def test_nearby_points_keep_precision(self):
        p = BallPoint.of(0.5, 0.0)
        q = BallPoint.of(0.5 + 1e-9, 0.0)
        assert distance(p, q) == pytest.approx(2e-9 / 0.75, rel=1e-6)


class TestIsometry:
    """Matrices preserving the form, acting on the right."""

    def test_random_isometries_preserve_form_and_distance(self, rng):
        for _ in range(50):
            g = random_isometry(rng)
            p, q = random_ball_point(rng), random_ball_point(rng)
            assert g.residual() < 1e-10
            assert abs(distance(g.apply(p), g.apply(q)) - distance(p, q)) < 1e-8 * max(1.0, distance(p, q))

    def test_composition_order(self, rng):
        g, h = random_isometry(rng), random_isometry(rng)
        p = random_ball_point(rng)
        assert (g @ h).apply(p).chordal(h.apply(g.apply(p))) < 1e-10

    def test_inverse(self, rng):
        g = random_isometry(rng)
        assert (g @ g.inverse()).distance_to(Isometry.identity(2)) < 1e-10

    def test_axis_translation(self):
        r = 0.7
        image = axis_translation(2, r).apply(BallPoint.origin(2))
        assert image.chordal(BallPoint.of(0.0, math.tanh(r))) < 1e-15
        assert axis_translation(2, r).is_loxodromic()

    def test_boundary_points_stay_on_boundary(self, rng):
        g = random_isometry(rng)
        p = BallPoint.of(quat(0.0, 0.6), quat(0.0, 0.0, 0.0, 0.8))
        assert g.apply(p).is_boundary


class TestTripleProduct:
    def test_standard_triple(self):
        x = Triple(BallPoint.of(0.0, -1.0), BallPoint.of(0.0, 1.0), BallPoint.of(0.0, 0.5))
        assert abs(triple_product(x) - quat(-1.5)) < 1e-15

    def test_hline_triple_is_imaginary(self):
        x = Triple(BallPoint.of(0.0, -ONE), BallPoint.of(0.0, ONE), BallPoint.of(0.0, I))
        q = triple_product(x)
        assert abs(q.w) < 1e-15
        assert abs(q) > 1.0

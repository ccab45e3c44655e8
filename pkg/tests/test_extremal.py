"""Tests for the inradius and circumradius solvers and the grid oracles."""

import math

import numpy as np
import pytest

from hadamard_radii import (
    Circle,
    ConvexPolygon,
    DomainError,
    ModelPoint,
    SolverOptions,
    circumcircle_three_points,
    circumradius,
    distance,
    enclosing_circle,
    gap,
    inradius,
    oracle_radii,
    random_isometry,
)
from hadamard_radii.extremal import (
    circle_boundary_polygon,
    circle_radii_oracle,
    circumradius_oracle,
    inradius_oracle,
    sample_inball,
)
from hadamard_radii.hyperbolic import distance_to_line, exp_point, tangent_frame


def regular_inradius(n: int, circumradius: float, k: float) -> float:
    """Apothem of a regular n-gon from the right triangle center/midpoint/vertex."""
    return math.atanh(math.tanh(k * circumradius) * math.cos(math.pi / n)) / k


def triangle_inradius(a: float, b: float, c: float) -> float:
    """Closed-form inradius of a curvature -1 triangle with the given sides."""
    s = (a + b + c) / 2
    t2 = math.sinh(s - a) * math.sinh(s - b) * math.sinh(s - c) / math.sinh(s)
    return math.atanh(math.sqrt(t2))


class TestInradius:
    """Tests for the maximin solver."""

    @pytest.mark.parametrize("n, radius, k", [(3, 0.3, 1.0), (4, 0.25, 1.0), (6, 0.5, 0.7), (9, 1.2, 1.5)])
    def test_regular_polygon(self, n, radius, k):
        result = inradius(ConvexPolygon.regular(n, radius, k=k))
        assert result.r == pytest.approx(regular_inradius(n, radius, k), abs=1e-9)
        assert result.center.isclose(ModelPoint.origin(k), tol=1e-7)
        assert set(result.active_sides) == set(range(n))

    def test_scalene_triangle_closed_form(self):
        a, b, c = ModelPoint.origin(), ModelPoint.polar(0.9, 0.2), ModelPoint.polar(0.6, 1.4)
        polygon = ConvexPolygon((a, b, c))
        expected = triangle_inradius(distance(b, c), distance(a, c), distance(a, b))
        assert inradius(polygon).r == pytest.approx(expected, abs=1e-9)

    def test_inball_inside_polygon(self, pentagon, rng):
        result = inradius(pentagon)
        for p in sample_inball(result, rng, 10_000):
            assert pentagon.contains(p, tol=1e-9)

    def test_perturbation_does_not_improve(self, small_corpus):
        for polygon in small_corpus[:5]:
            result = inradius(polygon)
            e1, e2 = tangent_frame(result.center)
            for j in range(16):
                theta = 2 * math.pi * j / 16
                moved = exp_point(result.center, math.cos(theta) * e1 + math.sin(theta) * e2, 1e-3)
                value = min(distance_to_line(moved, line) for line in polygon.side_lines)
                assert value <= result.r + 1e-6

    def test_isometry_invariance(self, small_corpus, rng):
        for polygon in small_corpus[:5]:
            moved = polygon.transformed(random_isometry(rng))
            assert inradius(moved).r == pytest.approx(inradius(polygon).r, abs=1e-9)

    def test_matches_grid_oracle(self, small_corpus):
        for polygon in small_corpus[:8]:
            _, r = inradius_oracle(polygon)
            assert inradius(polygon).r == pytest.approx(r, abs=1e-4)

    def test_active_sides_at_distance_r(self, square):
        result = inradius(square)
        lines = square.side_lines
        for i in result.active_sides:
            assert distance_to_line(result.center, lines[i]) == pytest.approx(result.r, abs=1e-9)

    def test_to_dict(self, square):
        data = inradius(square).to_dict()
        assert set(data) == {"center", "r", "active_sides", "method"}
        assert data["method"] in ("ascent", "polish", "simplex")


class TestCircumradius:
    """Tests for the smallest enclosing circle."""

    @pytest.mark.parametrize("n, radius, k", [(3, 0.3, 1.0), (5, 0.2, 0.8), (8, 1.0, 1.0)])
    def test_regular_polygon(self, n, radius, k):
        result = circumradius(ConvexPolygon.regular(n, radius, k=k))
        assert result.R == pytest.approx(radius, abs=1e-9)
        assert result.center.isclose(ModelPoint.origin(k), tol=1e-7)
        assert set(result.support) == set(range(n))

    def test_obtuse_triangle_two_support(self):
        a, c, b = ModelPoint.polar(0.5, 0.0), ModelPoint.polar(0.1, math.pi / 2), ModelPoint.polar(0.5, math.pi)
        result = circumradius(ConvexPolygon((a, c, b)))
        assert result.R == pytest.approx(0.5, abs=1e-9)
        assert set(result.support) == {0, 2}

    def test_acute_triangle_is_circumcircle(self):
        a, b, c = ModelPoint.polar(0.4, 0.1), ModelPoint.polar(0.4, 2.2), ModelPoint.polar(0.4, 4.1)
        circle = circumcircle_three_points(a, b, c)
        assert circle is not None
        assert circumradius(ConvexPolygon((a, b, c))).R == pytest.approx(circle.radius, abs=1e-9)

    def test_encloses_all_vertices(self, small_corpus):
        for polygon in small_corpus:
            result = circumradius(polygon)
            assert all(distance(result.center, v) <= result.R + 1e-9 for v in polygon.vertices)

    def test_matches_grid_oracle(self, small_corpus):
        for polygon in small_corpus[:8]:
            _, R = circumradius_oracle(polygon.vertices, polygon.k)
            assert circumradius(polygon).R == pytest.approx(R, abs=1e-4)

    def test_isometry_invariance(self, small_corpus, rng):
        for polygon in small_corpus[:5]:
            moved = polygon.transformed(random_isometry(rng))
            assert circumradius(moved).R == pytest.approx(circumradius(polygon).R, abs=1e-9)

    def test_shuffle_seed_does_not_matter(self, small_corpus):
        polygon = small_corpus[0]
        radii = [circumradius(polygon, SolverOptions(shuffle_seed=s)).R for s in range(5)]
        assert max(radii) - min(radii) < 1e-9

    def test_enclosing_circle_of_scattered_points(self, rng):
        points = [ModelPoint.from_disk(*rng.uniform(-0.5, 0.5, 2)) for _ in range(40)]
        circle = enclosing_circle(points, seed=3)
        assert all(circle.contains(p, tol=1e-9) for p in points)
        _, R = circumradius_oracle(points, 1.0)
        assert circle.radius == pytest.approx(R, abs=1e-4)

    def test_single_point(self):
        circle = enclosing_circle([ModelPoint.polar(0.3, 1.0)])
        assert circle.radius == 0.0

    def test_empty_raises(self):
        with pytest.raises(DomainError):
            enclosing_circle([])


class TestGap:
    """Tests for R - r."""

    def test_r_not_above_R(self, small_corpus):
        for polygon in small_corpus:
            assert inradius(polygon).r <= circumradius(polygon).R + 1e-12
            assert gap(polygon) >= 0.0

    def test_many_sided_polygon_is_nearly_round(self):
        assert gap(ConvexPolygon.regular(64, 0.5)) < 1e-3

    def test_triangle_gap_is_large(self):
        assert gap(ConvexPolygon.regular(3, 0.5)) > 0.2


class TestOracles:
    """Tests for the grid-refinement oracles themselves."""

    @pytest.mark.parametrize("radius, k", [(0.5, 1.0), (1.0, 0.5), (0.2, 2.0)])
    def test_geodesic_disk(self, radius, k):
        circle = Circle(ModelPoint.origin(k), radius)
        r, R = circle_radii_oracle(circle)
        assert r == pytest.approx(regular_inradius(256, radius, k), abs=1e-4)
        assert r < radius
        assert R == pytest.approx(radius, abs=1e-4)

    def test_off_center_disk(self):
        circle = Circle(ModelPoint.polar(0.7, 2.0), 0.3)
        r, R = circle_radii_oracle(circle)
        assert r == pytest.approx(0.3, abs=1e-4)
        assert R == pytest.approx(0.3, abs=1e-4)

    def test_boundary_polygon(self):
        circle = Circle(ModelPoint.polar(0.4, 1.0), 0.6)
        polygon = circle_boundary_polygon(circle, 12)
        assert polygon.n == 12
        assert all(distance(circle.center, v) == pytest.approx(0.6, abs=1e-12) for v in polygon.vertices)
        assert circumradius(polygon).R == pytest.approx(0.6, abs=1e-9)
        assert inradius(polygon).r == pytest.approx(regular_inradius(12, 0.6, 1.0), abs=1e-9)

    def test_boundary_polygon_needs_three_samples(self):
        with pytest.raises(DomainError):
            circle_boundary_polygon(Circle(ModelPoint.origin(1.0), 0.5), 2)

    def test_oracle_radii_of_regular_polygon(self):
        polygon = ConvexPolygon.regular(5, 0.4)
        r, R = oracle_radii(polygon)
        assert r == pytest.approx(regular_inradius(5, 0.4, 1.0), abs=1e-4)
        assert R == pytest.approx(0.4, abs=1e-4)

    def test_circumcircle_to_refined_precision(self):
        a, b, c = ModelPoint.polar(0.3, 0.0), ModelPoint.polar(0.35, 2.0), ModelPoint.polar(0.25, 4.0)
        circle = circumcircle_three_points(a, b, c)
        _, R = circumradius_oracle([a, b, c], 1.0, levels=8)
        assert circle.radius == pytest.approx(R, abs=1e-6)

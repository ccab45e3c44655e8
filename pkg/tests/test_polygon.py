"""Tests for convex polygons, vertex curvatures and hypotheses."""

import math

import numpy as np
import pytest

from hadamard_radii import (
    ConvexityError,
    ConvexPolygon,
    CurvatureBand,
    CurvatureDefinition,
    DegenerateInputError,
    DomainError,
    InputFormatError,
    ModelPoint,
    ScaleMismatchError,
    check_theorem2_hypotheses,
    distance,
    interior_angles,
    random_isometry,
    side_lengths,
    vertex_curvature_A,
    vertex_curvature_B,
)
from hadamard_radii.hyperbolic import exp_point, midpoint, rotate_tangent, unit_tangent
from hadamard_radii.polygon import (
    global_hypothesis,
    kappa_definition_a,
    kappa_definition_b,
    vertex_threshold,
)


def equilateral(side: float = 1.0) -> ConvexPolygon:
    """Equilateral triangle of curvature -1 with the given side."""
    gamma = math.acos((math.cosh(side) ** 2 - math.cosh(side)) / math.sinh(side) ** 2)
    return ConvexPolygon((ModelPoint.origin(), ModelPoint.polar(side, 0.0), ModelPoint.polar(side, gamma)))


def with_flat_vertex(polygon: ConvexPolygon, side: int, bulge: float) -> ConvexPolygon:
    """Insert a vertex `bulge` outside the midpoint of a side."""
    v = list(polygon.vertices)
    a, b = v[side - 1], v[side]
    m = midpoint(a, b)
    outward = rotate_tangent(m, unit_tangent(m, b), -math.pi / 2)
    v.insert(side, exp_point(m, outward, bulge))
    return ConvexPolygon(tuple(v))


class TestConvexPolygon:
    """Tests for polygon construction."""

    def test_regular_polygon(self, square):
        """Test vertex count, scale and equal sides."""
        assert square.n == 4
        assert square.k == 1.0
        lengths = side_lengths(square)
        assert max(lengths) - min(lengths) < 1e-12

    def test_clockwise_rejected(self, square):
        """Test that clockwise order is rejected."""
        with pytest.raises(ConvexityError):
            ConvexPolygon(tuple(reversed(square.vertices)))

    def test_reflex_vertex_rejected(self):
        """Test that a non-convex quadrilateral is rejected."""
        pts = [(0.3, 0.0), (0.0, 0.05), (-0.3, 0.0), (0.0, 0.3)]
        with pytest.raises(ConvexityError):
            ConvexPolygon.from_disk(pts)

    def test_repeated_vertex_rejected(self):
        """Test that a repeated vertex is a degenerate input."""
        pts = [(0.1, 0.0), (0.0, 0.1), (0.0, 0.1), (-0.1, 0.0)]
        with pytest.raises(DegenerateInputError):
            ConvexPolygon.from_disk(pts)

    def test_too_few_vertices(self):
        """Test that two vertices are not a polygon."""
        with pytest.raises(ConvexityError):
            ConvexPolygon.from_disk([(0.1, 0.0), (0.0, 0.1)])

    def test_mixed_scales_rejected(self):
        """Test that vertices of different k are rejected."""
        with pytest.raises(ScaleMismatchError):
            ConvexPolygon((ModelPoint.polar(0.2, 0.0), ModelPoint.polar(0.2, 2.0), ModelPoint.polar(0.2, 4.0, 0.5)))

    def test_contains(self, square):
        """Test interior and exterior points."""
        assert square.contains(ModelPoint.origin())
        assert not square.contains(ModelPoint.polar(0.5, 0.0))

    def test_dict_round_trip(self, pentagon):
        """Test the JSON form keeps the vertices."""
        data = pentagon.to_dict()
        assert set(data) == {"k", "vertices"}
        restored = ConvexPolygon.from_dict(data)
        assert all(p.isclose(q) for p, q in zip(pentagon.vertices, restored.vertices))

    def test_from_dict_malformed(self):
        """Test that missing keys are input-format errors."""
        with pytest.raises(InputFormatError):
            ConvexPolygon.from_dict({"k": 1.0})
        with pytest.raises(InputFormatError):
            ConvexPolygon.from_dict({"vertices": [[0.1, 0.2, 0.3]]})

    def test_gauss_bonnet(self, pentagon):
        """Test that exterior angles sum to 2π plus k²·area."""
        turns = sum(math.pi - a for a in interior_angles(pentagon))
        assert turns > 2 * math.pi
        assert turns == pytest.approx(2 * math.pi + pentagon.k**2 * pentagon.area(), abs=1e-12)


class TestSideLengths:
    """Tests for side lengths and angles."""

    def test_equilateral(self):
        """Test the constructed equilateral triangle."""
        assert side_lengths(equilateral()) == pytest.approx([1.0, 1.0, 1.0], abs=1e-12)

    def test_cyclic_indexing(self, pentagon):
        """Test that side i joins A[i-1] and A[i]."""
        v = pentagon.vertices
        assert side_lengths(pentagon)[0] == pytest.approx(distance(v[-1], v[0]), abs=1e-15)

    def test_rescaling(self, pentagon):
        """Test lengths after moving the disk coordinates to another k."""
        moved = pentagon.with_scale(0.4)
        v = moved.vertices
        expected = [distance(v[i - 1], v[i]) for i in range(moved.n)]
        assert side_lengths(moved) == pytest.approx(expected, abs=1e-15)
        assert side_lengths(moved) == pytest.approx([2.0 * x for x in side_lengths(pentagon)], rel=1e-10)


class TestVertexCurvature:
    """Tests for the two vertex curvature definitions."""

    def test_definition_a_right_angle(self):
        """Test α = π/2 with unit sides gives π/2."""
        assert kappa_definition_a(math.pi / 2, 1.0, 1.0) == pytest.approx(1.5708, abs=1e-4)

    def test_definition_b_right_angle(self):
        """Test α = π/2 with unit sides and k1 = 1 gives about 1.6996."""
        assert kappa_definition_b(math.pi / 2, 1.0, 1.0, 1.0) == pytest.approx(1.6996, abs=1e-4)

    def test_flat_vertex_limit(self):
        """Test κ → 0 as α → π."""
        assert kappa_definition_a(math.pi - 1e-9, 0.5, 0.5) < 1e-8

    def test_definitions_agree_for_short_sides(self):
        """Test the ratio B/A → 1 as sides shrink."""
        ratio = kappa_definition_b(1.0, 1e-4, 2e-4, 1.0) / kappa_definition_a(1.0, 1e-4, 2e-4)
        assert ratio == pytest.approx(1.0, abs=1e-8)

    def test_equilateral_triangle(self):
        """Test κ = π - α on the unit equilateral triangle."""
        report = vertex_curvature_A(equilateral())
        alpha = interior_angles(equilateral())[0]
        assert report.kappas == pytest.approx([math.pi - alpha] * 3, abs=1e-12)

    def test_b_dominates_a(self, rng):
        """Test definition B ≥ definition A on random polygons."""
        for _ in range(200):
            n = int(rng.integers(3, 9))
            angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
            if np.min(np.diff(np.append(angles, angles[0] + 2 * math.pi))) < 1e-2:
                continue
            radius = float(rng.uniform(0.2, 1.5))
            poly = ConvexPolygon(tuple(ModelPoint.polar(radius, float(a)) for a in angles))
            for row in vertex_curvature_B(poly, float(rng.uniform(0.3, 2.0))).vertices:
                assert row.kappa_b >= row.kappa_a - 1e-12

    def test_positive(self, pentagon):
        """Test κ > 0 at every strictly convex vertex."""
        report = vertex_curvature_B(pentagon, 1.0)
        assert all(row.kappa_a > 0 and row.kappa_b > 0 for row in report.vertices)

    def test_isometry_invariance(self, pentagon, rng):
        """Test vertex curvatures survive random isometries."""
        moved = pentagon.transformed(random_isometry(rng))
        assert vertex_curvature_A(moved).kappas == pytest.approx(vertex_curvature_A(pentagon).kappas, abs=1e-10)

    def test_report_needs_k1_for_b(self, square):
        """Test that definition B values are absent from a definition A report."""
        row = vertex_curvature_A(square).vertices[0]
        assert row.kappa_b is None
        with pytest.raises(DomainError):
            row.kappa(CurvatureDefinition.B)

    @pytest.mark.parametrize("k1", [0.0, -1.0])
    def test_definition_b_needs_positive_scale(self, square, k1):
        """Test k1 ≤ 0 is rejected."""
        with pytest.raises(DomainError):
            vertex_curvature_B(square, k1)


class TestHypotheses:
    """Tests for the hypothesis predicates."""

    def test_global_flag_example(self, band):
        """Test k2·coth(k2·ρ) ≈ 2.04 ≥ 1 for (1, 0.5) and ρ = 0.5."""
        assert 0.5 / math.tanh(0.25) == pytest.approx(2.0416, abs=1e-4)
        assert global_hypothesis(band, 0.5)

    def test_global_flag_constant_curvature(self):
        """Test that k1 = k2 always satisfies the global condition."""
        for rho in (0.1, 1.0, 10.0, 100.0):
            assert global_hypothesis(CurvatureBand(0.7, 0.7), rho)

    def test_global_flag_fails_for_large_rho(self, band):
        """Test that large ρ breaks the global condition."""
        assert not global_hypothesis(band, 5.0)

    def test_zero_k2(self):
        """Test the k2 = 0 reading 1/ρ ≥ k1."""
        assert global_hypothesis(CurvatureBand(1.0, 0.0), 0.9)
        assert not global_hypothesis(CurvatureBand(1.0, 0.0), 1.1)

    def test_threshold(self):
        """Test the vertex threshold (π/2)·k1·coth(k1·ρ)."""
        assert vertex_threshold(1.0, 0.5) == pytest.approx(math.pi / 2 * 2.16395, abs=1e-4)

    def test_small_polygon_passes(self, pentagon, band):
        """Test a small regular polygon passes every predicate."""
        flags = check_theorem2_hypotheses(pentagon, band, 0.5)
        assert flags.passed
        assert flags.min_vertex_margin > 0
        assert flags.failed_predicates() == []

    def test_flat_vertex_fails(self, band):
        """Test a near-flat vertex fails its flag."""
        poly = with_flat_vertex(ConvexPolygon.regular(3, 0.25), 1, 1e-3)
        flags = check_theorem2_hypotheses(poly, band, 0.5)
        assert not flags.vertex_flags[1]
        assert not flags.passed
        assert any("vertex 1" in p for p in flags.failed_predicates())

    def test_definition_b_is_weaker(self, band, rng):
        """Test that definition B passes whenever definition A does."""
        for _ in range(50):
            poly = ConvexPolygon.regular(int(rng.integers(3, 9)), float(rng.uniform(0.1, 0.5)), rotation=float(rng.uniform(0, 1)))
            a = check_theorem2_hypotheses(poly, band, 0.5, CurvatureDefinition.A)
            b = check_theorem2_hypotheses(poly, band, 0.5, CurvatureDefinition.B)
            if a.passed:
                assert b.passed

    def test_rho_must_be_positive(self, square, band):
        """Test ρ ≤ 0 is rejected."""
        with pytest.raises(DomainError):
            check_theorem2_hypotheses(square, band, 0.0)

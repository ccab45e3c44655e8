#!/usr/bin/env python3
"""
Corner Rounding

Replaces the sides of a convex polygon by circular arcs of one radius ρ that
bulge outward, checks when the resulting arc chain is convex, and offsets it to
the parallel curve at distance ε made of circles only.

For side i the arc runs from A[i-1] to A[i] on the circle of radius ρ about
O[i], the intersection of the two radius-ρ circles about the endpoints that
lies on the polygon's side of the side line. At each end the chord makes the
angle π/2 - δ with the radius, where

    sin δ = tanh(k·ℓ/2) / tanh(k·ρ)

in the model of curvature -k²; δ̄ is the same expression evaluated with k1.

Three conditions are reported per vertex:
- junction: the signed angle at A[i] from O[i] to O[i+1] lies in [0, π]
- measured: δ_i + δ_{i+1} ≤ π - α with δ measured in the model
- comparison: δ̄_i + δ̄_{i+1} ≤ π - α with δ̄ from the comparison formula

comparison ⇒ measured ⇒ junction whenever the model curvature is at least -k1².
"""

import math
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .bounds import arccoth_bounds
from .entities import ConvexityError, CurvatureBand, CurvatureDefinition, DomainError, SpanError
from .hyperbolic import (
    ModelPoint,
    circle_normal_curvature,
    distance,
    distance_to_line,
    exp_point,
    midpoint,
    rotate_tangent,
    signed_angle,
    unit_tangent,
)
from .polygon import (
    ConvexPolygon,
    interior_angles,
    kappa_definition_a,
    kappa_definition_b,
    side_lengths,
)

logger = logging.getLogger(__name__)

# Slack allowed when checking that one condition implies the next.
IMPLICATION_TOLERANCE = 1e-9


def _span_ratio(length: float, rho: float, k: float) -> float:
    return math.tanh(k * length / 2.0) / math.tanh(k * rho)


def delta_bar(length: float, rho: float, k1: float) -> float:
    """
    Comparison angle arcsin(tanh(k1·ℓ/2)/tanh(k1·ρ)) in [0, π/2].

    Raises:
        SpanError: If an arc of radius ρ cannot span a chord of length ℓ
    """
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    ratio = _span_ratio(length, rho, k1)
    if ratio > 1.0 + 1e-12:
        raise SpanError(f"an arc of radius {rho} cannot span a side of length {length}")
    return math.asin(min(1.0, ratio))


@dataclass(frozen=True)
class Arc:
    """
    A circular arc.

    Attributes:
        center: Center of the supporting circle
        radius: Radius
        start: Unit tangent at the center pointing to the first endpoint
        sweep: Signed central angle from the first to the last endpoint
    """

    center: ModelPoint
    radius: float
    start: np.ndarray
    sweep: float

    @property
    def curvature(self) -> float:
        """Normal curvature toward the center."""
        return circle_normal_curvature(self.center.k, self.radius)

    @property
    def length(self) -> float:
        k = self.center.k
        return abs(self.sweep) * math.sinh(k * self.radius) / k

    def point_at(self, t: float) -> ModelPoint:
        """Point at parameter t ∈ [0, 1]."""
        direction = rotate_tangent(self.center, self.start, t * self.sweep)
        return exp_point(self.center, direction, self.radius)

    def sample(self, count: int) -> List[ModelPoint]:
        return [self.point_at(t) for t in np.linspace(0.0, 1.0, count)]

    def distance_to(self, p: ModelPoint) -> float:
        """Distance from p to the arc."""
        first, last = self.point_at(0.0), self.point_at(1.0)
        d_center = distance(self.center, p)
        if d_center > 0:
            a = signed_angle(self.center, first, p)
            if a * self.sweep >= 0 and abs(a) <= abs(self.sweep):
                return abs(d_center - self.radius)
        return min(distance(first, p), distance(last, p))


@dataclass(frozen=True)
class ConditionReport:
    """
    Convexity conditions at one vertex of an arc chain.

    Attributes:
        index: Vertex index i
        junction_angle: Signed angle at A[i] from O[i] to O[i+1]
        delta_prev, delta_next: Measured δ of sides i and i+1
        delta_bar_prev, delta_bar_next: Comparison δ̄ of sides i and i+1
        turn: π - α at the vertex
        junction_ok, measured_ok, comparison_ok: The three conditions
        implication_ok: No condition holds while a weaker one fails
    """

    index: int
    junction_angle: float
    delta_prev: float
    delta_next: float
    delta_bar_prev: float
    delta_bar_next: float
    turn: float
    junction_ok: bool
    measured_ok: bool
    comparison_ok: bool
    implication_ok: bool

    @property
    def measured_margin(self) -> float:
        return self.turn - (self.delta_prev + self.delta_next)

    @property
    def comparison_margin(self) -> float:
        return self.turn - (self.delta_bar_prev + self.delta_bar_next)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "junction_angle": self.junction_angle,
            "delta": [self.delta_prev, self.delta_next],
            "delta_bar": [self.delta_bar_prev, self.delta_bar_next],
            "junction_ok": self.junction_ok,
            "measured_ok": self.measured_ok,
            "comparison_ok": self.comparison_ok,
            "implication_ok": self.implication_ok,
            "margins": {"measured": self.measured_margin, "comparison": self.comparison_margin},
        }


@dataclass(frozen=True)
class CurvatureChain:
    """
    The inequality chain leading from the vertex hypothesis to the comparison condition.

    terms[0] = δ̄_i + δ̄_{i+1}
    terms[1] = (π/2)·(sin δ̄_i + sin δ̄_{i+1})
    terms[2] = (π/2)/tanh(k1ρ)·(tanh(k1ℓ_i/2) + tanh(k1ℓ_{i+1}/2))
    terms[3] = κ·(tanh(k1ℓ_i/2) + tanh(k1ℓ_{i+1}/2))/k1
    terms[4] = κ·(ℓ_i + ℓ_{i+1})/2, or terms[3] under definition B

    Each link terms[j] ≤ terms[j+1]; the third one is the vertex hypothesis.
    """

    terms: Tuple[float, float, float, float, float]

    @property
    def slacks(self) -> List[float]:
        return [self.terms[j + 1] - self.terms[j] for j in range(4)]

    @property
    def min_slack(self) -> float:
        return min(self.slacks)


def check_curvature_chain(
    l_prev: float,
    l_next: float,
    kappa: float,
    k1: float,
    rho: float,
    definition: CurvatureDefinition = CurvatureDefinition.A,
) -> CurvatureChain:
    """Evaluate each link of the vertex inequality chain at one vertex."""
    d_prev, d_next = delta_bar(l_prev, rho, k1), delta_bar(l_next, rho, k1)
    tanh_sum = math.tanh(k1 * l_prev / 2.0) + math.tanh(k1 * l_next / 2.0)
    last = kappa * (l_prev + l_next) / 2.0
    if definition is CurvatureDefinition.B:
        last = kappa * tanh_sum / k1
    return CurvatureChain(
        (
            d_prev + d_next,
            math.pi / 2.0 * (math.sin(d_prev) + math.sin(d_next)),
            math.pi / 2.0 / math.tanh(k1 * rho) * tanh_sum,
            kappa * tanh_sum / k1,
            last,
        )
    )


@dataclass(frozen=True)
class ArcChain:
    """
    A polygon with every side replaced by an outward arc of radius rho.

    Attributes:
        polygon: The underlying polygon
        rho: Common arc radius
        centers: O[i] for side i (from A[i-1] to A[i])
        deltas: Measured δ of each side
    """

    polygon: ConvexPolygon
    rho: float
    centers: Tuple[ModelPoint, ...]
    deltas: Tuple[float, ...]

    @property
    def k(self) -> float:
        return self.polygon.k

    def arcs(self) -> List[Arc]:
        v = self.polygon.vertices
        out = []
        for i, center in enumerate(self.centers):
            start = unit_tangent(center, v[i - 1])
            out.append(Arc(center, self.rho, start, signed_angle(center, v[i - 1], v[i])))
        return out

    def junction_angle(self, i: int) -> float:
        """Signed angle at A[i] from the direction of O[i] to that of O[i+1]."""
        n = self.polygon.n
        return signed_angle(self.polygon.vertices[i], self.centers[i], self.centers[(i + 1) % n])

    def contains(self, p: ModelPoint, tol: float = 1e-12) -> bool:
        """Whether p lies in the region bounded by the chain."""
        if self.polygon.contains(p, tol):
            return True
        return any(
            distance_to_line(p, line) < 0 and distance(center, p) <= self.rho + tol
            for line, center in zip(self.polygon.side_lines, self.centers)
        )

    def distance_to_region(self, p: ModelPoint) -> float:
        """Distance from p to the region bounded by the chain (0 inside)."""
        if self.contains(p):
            return 0.0
        return min(arc.distance_to(p) for arc in self.arcs())

    def sample(self, per_arc: int = 64) -> List[ModelPoint]:
        return [p for arc in self.arcs() for p in arc.sample(per_arc)]

    def to_list(self) -> List[dict]:
        """JSON form: one record per arc."""
        n = self.polygon.n
        return [
            {
                "center_xy": list(center.to_disk()),
                "rho": self.rho,
                "from_index": (i - 1) % n,
                "to_index": i,
            }
            for i, center in enumerate(self.centers)
        ]


def build_arc_chain(polygon: ConvexPolygon, rho: float) -> ArcChain:
    """
    Replace each side by the outward arc of radius rho through its endpoints.

    Args:
        polygon: Convex polygon
        rho: Arc radius

    Returns:
        ArcChain with centers on the interior side of each side line

    Raises:
        SpanError: If rho is too small for some side; `side` names it
    """
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    k = polygon.k
    v = polygon.vertices
    centers = []
    deltas = []
    for i, (line, length) in enumerate(zip(polygon.side_lines, side_lengths(polygon))):
        if _span_ratio(length, rho, k) > 1.0 + 1e-12:
            raise SpanError(
                f"side {i} has length {length:.6g} > 2*rho = {2 * rho:.6g}; no arc of radius "
                f"{rho} joins A[{(i - 1) % polygon.n}] and A[{i}]",
                side=i,
            )
        # Apex of the isosceles triangle on the perpendicular bisector
        ratio = math.cosh(k * rho) / math.cosh(k * length / 2.0)
        height = math.acosh(max(1.0, ratio)) / k
        center = exp_point(midpoint(v[i - 1], v[i]), line.normal, height)
        centers.append(center)
        base_angle = abs(signed_angle(v[i], v[i - 1], center))
        deltas.append(math.pi / 2.0 - base_angle)
    logger.debug("built arc chain n=%d rho=%g", polygon.n, rho)
    return ArcChain(polygon, rho, tuple(centers), tuple(deltas))


def convexity_condition(chain: ArcChain, i: int, k1: Optional[float] = None) -> ConditionReport:
    """
    Evaluate the junction, measured and comparison conditions at vertex i.

    Args:
        chain: Arc chain
        i: Vertex index
        k1: Scale of the comparison formula, the model's own k by default
    """
    poly = chain.polygon
    n = poly.n
    k1 = chain.k if k1 is None else k1
    alpha = interior_angles(poly)[i]
    lengths = side_lengths(poly)
    turn = math.pi - alpha
    j = (i + 1) % n
    d_prev, d_next = chain.deltas[i], chain.deltas[j]
    db_prev, db_next = delta_bar(lengths[i], chain.rho, k1), delta_bar(lengths[j], chain.rho, k1)
    junction = chain.junction_angle(i)

    junction_ok = -IMPLICATION_TOLERANCE <= junction <= math.pi + IMPLICATION_TOLERANCE
    measured_ok = d_prev + d_next <= turn
    comparison_ok = db_prev + db_next <= turn
    implication_ok = not (
        comparison_ok and d_prev + d_next > turn + IMPLICATION_TOLERANCE
    ) and not (measured_ok and not junction_ok)
    return ConditionReport(
        index=i,
        junction_angle=junction,
        delta_prev=d_prev,
        delta_next=d_next,
        delta_bar_prev=db_prev,
        delta_bar_next=db_next,
        turn=turn,
        junction_ok=junction_ok,
        measured_ok=measured_ok,
        comparison_ok=comparison_ok,
        implication_ok=implication_ok,
    )


def condition_reports(chain: ArcChain, k1: Optional[float] = None) -> List[ConditionReport]:
    return [convexity_condition(chain, i, k1) for i in range(chain.polygon.n)]


def curvature_chains(
    chain: ArcChain, k1: float, definition: CurvatureDefinition = CurvatureDefinition.A
) -> List[CurvatureChain]:
    """The vertex inequality chain at every vertex of the chain's polygon."""
    poly = chain.polygon
    lengths = side_lengths(poly)
    angles = interior_angles(poly)
    out = []
    for i in range(poly.n):
        l_prev, l_next = lengths[i], lengths[(i + 1) % poly.n]
        if definition is CurvatureDefinition.A:
            kappa = kappa_definition_a(angles[i], l_prev, l_next)
        else:
            kappa = kappa_definition_b(angles[i], l_prev, l_next, k1)
        out.append(check_curvature_chain(l_prev, l_next, kappa, k1, chain.rho, definition))
    return out


@dataclass(frozen=True)
class ParallelCurve:
    """
    The outward parallel of an arc chain at distance eps.

    Side pieces are arcs of radius rho+eps about O[i]; vertex pieces are arcs of
    radius eps about A[i] sweeping the junction angle.
    """

    base: ArcChain
    eps: float

    @property
    def side_radius(self) -> float:
        return self.base.rho + self.eps

    def pieces(self) -> List[Arc]:
        """Arcs in counterclockwise order: side 0, vertex 0, side 1, vertex 1, ..."""
        poly = self.base.polygon
        v = poly.vertices
        n = poly.n
        out = []
        for i, arc in enumerate(self.base.arcs()):
            out.append(Arc(arc.center, self.side_radius, arc.start, arc.sweep))
            away = -unit_tangent(v[i], self.base.centers[i])
            out.append(Arc(v[i], self.eps, away, self.base.junction_angle(i)))
        assert len(out) == 2 * n
        return out

    def piece_curvatures(self) -> Tuple[float, float]:
        """(side piece curvature, vertex piece curvature) in the model."""
        k = self.base.k
        return circle_normal_curvature(k, self.side_radius), circle_normal_curvature(k, self.eps)

    def curvature_ranges(self, band: CurvatureBand) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        """Allowed normal-curvature ranges of side and vertex pieces for the band."""
        side = (
            circle_normal_curvature(band.k2, self.side_radius),
            circle_normal_curvature(band.k1, self.side_radius),
        )
        vertex = (
            circle_normal_curvature(band.k2, self.eps),
            circle_normal_curvature(band.k1, self.eps),
        )
        return side, vertex

    def curvatures_within(self, band: CurvatureBand, tol: float = 1e-12) -> bool:
        side_k, vertex_k = self.piece_curvatures()
        (s_lo, s_hi), (v_lo, v_hi) = self.curvature_ranges(band)
        return s_lo - tol <= side_k <= s_hi + tol and v_lo - tol <= vertex_k <= v_hi + tol

    @property
    def min_curvature(self) -> float:
        return min(self.piece_curvatures())

    def theorem1_r_bound(self, band: CurvatureBand) -> float:
        """Inradius bound for a curve that is k2·coth(k2·(rho+eps))-convex."""
        return arccoth_bounds(band, self.side_radius).r_max

    def contains(self, p: ModelPoint, tol: float = 1e-12) -> bool:
        return self.base.distance_to_region(p) <= self.eps + tol

    def sample(self, per_piece: int = 32) -> List[ModelPoint]:
        return [p for arc in self.pieces() for p in arc.sample(per_piece)]

    def curvature_table(self, band: CurvatureBand) -> dict:
        side_k, vertex_k = self.piece_curvatures()
        (s_lo, s_hi), (v_lo, v_hi) = self.curvature_ranges(band)
        return {
            "eps": self.eps,
            "side_curvature": side_k,
            "side_range": [s_lo, s_hi],
            "vertex_curvature": vertex_k,
            "vertex_range": [v_lo, v_hi],
            "within": self.curvatures_within(band),
            "r_bound": self.theorem1_r_bound(band),
        }


def parallel_curve(chain: ArcChain, eps: float) -> ParallelCurve:
    """
    Offset an arc chain outward by eps.

    Raises:
        DomainError: If eps ≤ 0
        ConvexityError: If some junction angle leaves [0, π]
    """
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")
    for i in range(chain.polygon.n):
        junction = chain.junction_angle(i)
        if not -IMPLICATION_TOLERANCE <= junction <= math.pi + IMPLICATION_TOLERANCE:
            raise ConvexityError(
                f"arc chain is not convex at vertex {i} (junction angle {junction:.6g})"
            )
    return ParallelCurve(chain, eps)


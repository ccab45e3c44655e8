#!/usr/bin/env python3
"""
Convex Geodesic Polygons

Strictly convex counterclockwise polygons in the model of curvature -k², their
side lengths and interior angles, the two discrete vertex curvatures and the
hypothesis predicates of the polygon radius theorem.

Indexing is cyclic: side i joins A[i-1] to A[i], so vertex i sits between
side i (previous) and side i+1 (next).

Example:
    >>> poly = ConvexPolygon.regular(4, circumradius=0.2, k=1.0)
    >>> report = vertex_curvature_A(poly)
    >>> all(k > 0 for k in report.kappas)
    True
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .entities import (
    ConvexityError,
    CurvatureBand,
    CurvatureDefinition,
    DegenerateInputError,
    DomainError,
    InputFormatError,
    ScaleMismatchError,
)
from .hyperbolic import (
    COINCIDENCE_TOLERANCE,
    GeodesicLine,
    ModelPoint,
    angle_at,
    circle_normal_curvature,
    distance,
    distance_to_line,
)

logger = logging.getLogger(__name__)

# Every vertex must lie this far strictly left of every side line it is not on.
TURN_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ConvexPolygon:
    """
    A strictly convex, simple, counterclockwise geodesic polygon.

    Construction checks that every vertex lies strictly on the left of every
    side line it does not belong to. That single test gives strict convexity,
    simplicity and counterclockwise orientation at once.

    Attributes:
        vertices: Ordered vertices A[0..n-1], n ≥ 3, all with the same k

    Raises:
        ConvexityError: If the vertices do not form such a polygon
        DegenerateInputError: If two vertices coincide
        ScaleMismatchError: If the vertices carry different k
    """

    vertices: Tuple[ModelPoint, ...]
    _lines: Tuple[GeodesicLine, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        vertices = tuple(self.vertices)
        object.__setattr__(self, "vertices", vertices)
        n = len(vertices)
        if n < 3:
            raise ConvexityError(f"a polygon needs at least 3 vertices, got {n}")
        k = vertices[0].k
        for v in vertices:
            if v.k != k:
                raise ScaleMismatchError(f"polygon vertices mix curvature scales {k} and {v.k}")
        for i in range(n):
            for j in range(i + 1, n):
                if distance(vertices[i], vertices[j]) < COINCIDENCE_TOLERANCE:
                    raise DegenerateInputError(f"vertices {i} and {j} coincide")

        lines = tuple(GeodesicLine.through(vertices[i - 1], vertices[i]) for i in range(n))
        for i, line in enumerate(lines):
            for j in range(n):
                if j in (i, (i - 1) % n):
                    continue
                d = distance_to_line(vertices[j], line)
                if d <= TURN_TOLERANCE:
                    raise ConvexityError(
                        f"vertex {j} is not strictly left of side {i} (signed distance {d:.3e}); "
                        "vertices must form a strictly convex counterclockwise polygon"
                    )
        object.__setattr__(self, "_lines", lines)

    @property
    def k(self) -> float:
        return self.vertices[0].k

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def side_lines(self) -> Tuple[GeodesicLine, ...]:
        """Side lines, line i through A[i-1] and A[i] with the interior on its positive side."""
        return self._lines

    def side_normals(self) -> np.ndarray:
        """(n, 3) array of side-line normals."""
        return np.stack([line.normal for line in self._lines])

    def contains(self, p: ModelPoint, tol: float = 0.0) -> bool:
        """Whether p lies in the closed polygon, up to tol."""
        return all(distance_to_line(p, line) >= -tol for line in self._lines)

    def area(self) -> float:
        """Area from the angle deficit."""
        deficit = (self.n - 2) * math.pi - sum(interior_angles(self))
        return deficit / (self.k * self.k)

    def transformed(self, matrix: np.ndarray) -> "ConvexPolygon":
        """Image under an orientation-preserving isometry."""
        return ConvexPolygon(tuple(v.transformed(matrix) for v in self.vertices))

    def with_scale(self, k: float) -> "ConvexPolygon":
        """The polygon with the same disk coordinates in the model of scale k."""
        return ConvexPolygon(tuple(v.with_scale(k) for v in self.vertices))

    @classmethod
    def from_disk(cls, points: Iterable[Sequence[float]], k: float = 1.0) -> "ConvexPolygon":
        """Create polygon from Poincaré-disk coordinates."""
        return cls(tuple(ModelPoint.from_disk(float(u), float(v), k) for u, v in points))

    @classmethod
    def regular(
        cls, n: int, circumradius: float, k: float = 1.0, rotation: float = 0.0
    ) -> "ConvexPolygon":
        """Regular n-gon centered at the origin."""
        return cls(
            tuple(
                ModelPoint.polar(circumradius, rotation + 2.0 * math.pi * j / n, k)
                for j in range(n)
            )
        )

    def to_dict(self) -> dict:
        """Convert polygon to its JSON form."""
        return {"k": self.k, "vertices": [list(v.to_disk()) for v in self.vertices]}

    @classmethod
    def from_dict(cls, data: dict) -> "ConvexPolygon":
        """
        Create polygon from its JSON form.

        Raises:
            InputFormatError: If required keys are missing or malformed
        """
        try:
            k = float(data.get("k", 1.0))
            points = [(float(u), float(v)) for u, v in data["vertices"]]
        except (KeyError, TypeError, ValueError) as e:
            raise InputFormatError(f"malformed polygon record: {e}") from e
        return cls.from_disk(points, k)


@dataclass(frozen=True)
class VertexCurvature:
    """Angle, adjacent sides and discrete curvatures at one vertex."""

    index: int
    alpha: float
    l_prev: float
    l_next: float
    kappa_a: float
    kappa_b: Optional[float] = None

    def kappa(self, definition: CurvatureDefinition) -> float:
        if definition is CurvatureDefinition.A:
            return self.kappa_a
        if self.kappa_b is None:
            raise DomainError("definition B needs k1; use vertex_curvature_B")
        return self.kappa_b


@dataclass(frozen=True)
class VertexCurvatureReport:
    """
    Per-vertex curvature data of a polygon.

    Attributes:
        definition: Which definition `kappas` returns
        vertices: One row per vertex
        k1: Scale used by definition B, if computed
    """

    definition: CurvatureDefinition
    vertices: Tuple[VertexCurvature, ...]
    k1: Optional[float] = None

    @property
    def kappas(self) -> List[float]:
        return [v.kappa(self.definition) for v in self.vertices]


@dataclass(frozen=True)
class HypothesisFlags:
    """
    Outcome of the polygon-theorem hypotheses.

    Attributes:
        vertex_flags: κ(A_i) ≥ threshold at each vertex
        global_flag: k2·coth(k2·ρ) ≥ k1 (1/ρ ≥ k1 when k2 = 0)
        threshold: The vertex threshold (π/2)·k1·coth(k1·ρ)
        kappas: Vertex curvatures under `definition`
        definition: Vertex curvature definition used
    """

    vertex_flags: Tuple[bool, ...]
    global_flag: bool
    threshold: float
    kappas: Tuple[float, ...]
    definition: CurvatureDefinition = CurvatureDefinition.A

    @property
    def passed(self) -> bool:
        return self.global_flag and all(self.vertex_flags)

    @property
    def min_vertex_margin(self) -> float:
        return min(kappa - self.threshold for kappa in self.kappas)

    def failed_predicates(self) -> List[str]:
        """Human-readable names of the predicates that failed."""
        failed = [
            f"vertex {i}: kappa {kappa:.6g} < {self.threshold:.6g}"
            for i, (kappa, ok) in enumerate(zip(self.kappas, self.vertex_flags))
            if not ok
        ]
        if not self.global_flag:
            failed.insert(0, "k2*coth(k2*rho) >= k1")
        return failed

    def to_dict(self) -> dict:
        return {
            "vertex_flags": list(self.vertex_flags),
            "global_flag": self.global_flag,
            "threshold": self.threshold,
            "definition": self.definition.value,
            "passed": self.passed,
        }


# ============================================================================
# Scalar formulas
# ============================================================================


def kappa_definition_a(alpha: float, l_prev: float, l_next: float) -> float:
    """2(π - α)/(ℓ_prev + ℓ_next)."""
    return 2.0 * (math.pi - alpha) / (l_prev + l_next)


def kappa_definition_b(alpha: float, l_prev: float, l_next: float, k1: float) -> float:
    """(π - α)/((1/k1)·tanh(k1·ℓ_prev/2) + (1/k1)·tanh(k1·ℓ_next/2))."""
    half = (math.tanh(k1 * l_prev / 2.0) + math.tanh(k1 * l_next / 2.0)) / k1
    return (math.pi - alpha) / half


def vertex_threshold(k1: float, rho: float) -> float:
    """Least vertex curvature (π/2)·k1·coth(k1·ρ) the hypotheses allow."""
    return math.pi / 2.0 * circle_normal_curvature(k1, rho)


def global_hypothesis(band: CurvatureBand, rho: float) -> bool:
    """k2·coth(k2·ρ) ≥ k1, reading 1/ρ ≥ k1 when k2 = 0."""
    return circle_normal_curvature(band.k2, rho) >= band.k1


# ============================================================================
# Operations
# ============================================================================


def side_lengths(polygon: ConvexPolygon) -> List[float]:
    """ℓ_i = d(A[i-1], A[i]) for i = 0..n-1."""
    v = polygon.vertices
    return [distance(v[i - 1], v[i]) for i in range(polygon.n)]


def interior_angles(polygon: ConvexPolygon) -> List[float]:
    """Interior angle at every vertex."""
    v = polygon.vertices
    n = polygon.n
    return [angle_at(v[i], v[i - 1], v[(i + 1) % n]) for i in range(n)]


def _vertex_rows(polygon: ConvexPolygon, k1: Optional[float]) -> Tuple[VertexCurvature, ...]:
    lengths = side_lengths(polygon)
    angles = interior_angles(polygon)
    n = polygon.n
    rows = []
    for i in range(n):
        l_prev, l_next = lengths[i], lengths[(i + 1) % n]
        alpha = angles[i]
        rows.append(
            VertexCurvature(
                index=i,
                alpha=alpha,
                l_prev=l_prev,
                l_next=l_next,
                kappa_a=kappa_definition_a(alpha, l_prev, l_next),
                kappa_b=None if k1 is None else kappa_definition_b(alpha, l_prev, l_next, k1),
            )
        )
    return tuple(rows)


def vertex_curvature_A(polygon: ConvexPolygon) -> VertexCurvatureReport:
    """Vertex curvatures 2(π - α)/(ℓ_i + ℓ_{i+1}); rows carry kappa_b = None."""
    return VertexCurvatureReport(CurvatureDefinition.A, _vertex_rows(polygon, None))


def vertex_curvature_B(polygon: ConvexPolygon, k1: float) -> VertexCurvatureReport:
    """Vertex curvatures with tanh-weighted side lengths; rows carry both definitions."""
    if not k1 > 0:
        raise DomainError(f"k1 must be positive, got {k1}")
    return VertexCurvatureReport(CurvatureDefinition.B, _vertex_rows(polygon, k1), k1=k1)


def check_theorem2_hypotheses(
    polygon: ConvexPolygon,
    band: CurvatureBand,
    rho: float,
    definition: CurvatureDefinition = CurvatureDefinition.A,
) -> HypothesisFlags:
    """
    Evaluate the vertex and global hypotheses of the polygon radius bounds.

    Args:
        polygon: Polygon to check
        band: Curvature band (k1, k2)
        rho: Radius parameter ρ > 0
        definition: Vertex curvature definition

    Returns:
        HypothesisFlags with per-vertex and global results
    """
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    if definition is CurvatureDefinition.A:
        report = vertex_curvature_A(polygon)
    else:
        report = vertex_curvature_B(polygon, band.k1)
    threshold = vertex_threshold(band.k1, rho)
    kappas = tuple(report.kappas)
    flags = HypothesisFlags(
        vertex_flags=tuple(kappa >= threshold for kappa in kappas),
        global_flag=global_hypothesis(band, rho),
        threshold=threshold,
        kappas=kappas,
        definition=definition,
    )
    logger.debug(
        "hypotheses n=%d passed=%s min margin %.3e", polygon.n, flags.passed, flags.min_vertex_margin
    )
    return flags

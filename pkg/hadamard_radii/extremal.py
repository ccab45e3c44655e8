#!/usr/bin/env python3
"""
Inradius and Circumradius

Largest inscribed and smallest enclosing circles of convex polygons in the
model of curvature -k², plus grid-refinement oracles that recompute both from
scratch for cross-checking.

Solvers:
- inradius: ε-subgradient ascent of x ↦ min_i d(x, side_i) with a geodesic
  line search, an exact polish on the active side triple and a Nelder-Mead
  fallback in disk coordinates
- circumradius: randomized move-to-front recursion over at most three support
  vertices, built on the exact circumcircle primitive

Example:
    >>> poly = ConvexPolygon.regular(5, circumradius=0.3)
    >>> round(circumradius(poly).R, 9)
    0.3
"""

import math
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import optimize

from .entities import DomainError, NumericFailureError
from .hyperbolic import (
    Circle,
    GeodesicLine,
    ModelPoint,
    circumcircle_three_points,
    diameter_circle,
    disk_to_sheet,
    distance,
    distance_to_line,
    sheet_distances,
    sheet_inner,
    tangent_frame,
)
from .polygon import ConvexPolygon

logger = logging.getLogger(__name__)

# Relative slack of the enclosing-circle membership test.
CIRCLE_TOLERANCE = 1e-12
# Sides or vertices within this distance of the optimum count as active/support.
ACTIVE_TOLERANCE = 1e-9

_J = np.array([-1.0, 1.0, 1.0])


@dataclass(frozen=True)
class SolverOptions:
    """
    Knobs of the inradius ascent.

    Attributes:
        step_tolerance: Converged once accepted steps fall below this length
        max_iterations: Iteration cap before the simplex fallback
        active_tolerance: Final width of the ε-active set
        shuffle_seed: Seed of the circumradius point order
    """

    step_tolerance: float = 1e-10
    max_iterations: int = 100_000
    active_tolerance: float = 1e-9
    shuffle_seed: int = 0


DEFAULT_OPTIONS = SolverOptions()


@dataclass(frozen=True)
class InballResult:
    """
    Largest inscribed circle.

    Attributes:
        center: Incenter
        r: Inradius
        active_sides: Sides at distance r (within ACTIVE_TOLERANCE)
        iterations: Ascent iterations used
        method: "ascent", "polish" or "simplex"
    """

    center: ModelPoint
    r: float
    active_sides: Tuple[int, ...]
    iterations: int = 0
    method: str = "ascent"

    @property
    def circle(self) -> Circle:
        return Circle(self.center, self.r)

    def to_dict(self) -> dict:
        return {
            "center": self.center.to_dict(),
            "r": self.r,
            "active_sides": list(self.active_sides),
            "method": self.method,
        }


@dataclass(frozen=True)
class CircumballResult:
    """
    Smallest enclosing circle.

    Attributes:
        center: Circumcenter
        R: Circumradius
        support: Vertices at distance R (within ACTIVE_TOLERANCE)
    """

    center: ModelPoint
    R: float
    support: Tuple[int, ...]

    @property
    def circle(self) -> Circle:
        return Circle(self.center, self.R)

    def to_dict(self) -> dict:
        return {"center": self.center.to_dict(), "R": self.R, "support": list(self.support)}


# ============================================================================
# Inradius
# ============================================================================


class _SideField:
    """Vectorized signed distances to the side lines of one polygon."""

    def __init__(self, polygon: ConvexPolygon):
        self.k = polygon.k
        self.normals = polygon.side_normals()
        self._jn = self.normals * _J

    def scaled(self, coords: np.ndarray) -> np.ndarray:
        """k·⟨x,u_i⟩ for every side."""
        return self.k * (self._jn @ coords)

    def distances(self, coords: np.ndarray) -> np.ndarray:
        return np.arcsinh(self.scaled(coords)) / self.k

    def minimum(self, coords: np.ndarray) -> float:
        return float(self.distances(coords).min())

    def equidistant(self, triple: Sequence[int]) -> Optional[np.ndarray]:
        """The point with equal positive distance to three side lines, if any."""
        m = self._jn[list(triple)]
        try:
            w = np.linalg.solve(m, np.ones(3))
        except np.linalg.LinAlgError:
            return None
        norm2 = -w[0] * w[0] + w[1] * w[1] + w[2] * w[2]
        if not (norm2 < 0 and w[0] > 0 and np.all(np.isfinite(w))):
            return None
        return w / (self.k * math.sqrt(-norm2))


def _min_norm_in_hull(vectors: np.ndarray) -> np.ndarray:
    """Minimum-norm element of the convex hull of a few planar vectors."""
    if len(vectors) > 1:
        angles = np.sort(np.arctan2(vectors[:, 1], vectors[:, 0]))
        gaps = np.diff(np.append(angles, angles[0] + 2.0 * math.pi))
        if gaps.max() <= math.pi + 1e-12:
            return np.zeros(2)
    best = vectors[np.argmin(np.einsum("ij,ij->i", vectors, vectors))]
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            a, b = vectors[i], vectors[j]
            edge = b - a
            length2 = float(edge @ edge)
            if length2 == 0.0:
                continue
            t = min(1.0, max(0.0, -float(a @ edge) / length2))
            candidate = a + t * edge
            if candidate @ candidate < best @ best:
                best = candidate
    return best


def _vertex_centroid(polygon: ConvexPolygon) -> np.ndarray:
    s = np.sum([v.coords for v in polygon.vertices], axis=0)
    return s / (polygon.k * math.sqrt(-(-s[0] * s[0] + s[1] * s[1] + s[2] * s[2])))


def _geodesic(coords: np.ndarray, direction: np.ndarray, t: float, k: float) -> np.ndarray:
    return math.cosh(k * t) * coords + math.sinh(k * t) / k * direction


def _polish(field: _SideField, coords: np.ndarray) -> Optional[np.ndarray]:
    """Snap to the exact equidistant point of the best active side triple."""
    d = field.distances(coords)
    order = np.argsort(d)
    floor = float(d[order[0]])
    close = int(np.sum(d <= floor + 1e-6))
    candidates = [int(i) for i in order[: max(3, min(close, 6))]]
    best, best_value = None, floor - 1e-14
    for a in range(len(candidates)):
        for b in range(a + 1, len(candidates)):
            for c in range(b + 1, len(candidates)):
                y = field.equidistant((candidates[a], candidates[b], candidates[c]))
                if y is None:
                    continue
                value = field.minimum(y)
                if value > best_value:
                    best, best_value = y, value
    return best


def _simplex_fallback(
    field: _SideField, coords: np.ndarray, options: SolverOptions
) -> Tuple[np.ndarray, bool]:
    k = field.k

    def objective(w: np.ndarray) -> float:
        if w @ w >= 1.0:
            return math.inf
        return -field.minimum(disk_to_sheet(w, k))

    start = ModelPoint(coords, k).to_disk()
    res = optimize.minimize(
        objective,
        x0=np.array(start),
        method="Nelder-Mead",
        options={"xatol": options.step_tolerance, "fatol": 1e-14, "maxiter": 20_000},
    )
    return disk_to_sheet(res.x, k), bool(res.success)


def _finish(
    field: _SideField, coords: np.ndarray, iterations: int, method: str
) -> InballResult:
    center = ModelPoint(coords, field.k)
    d = field.distances(center.coords)
    r = float(d.min())
    active = tuple(int(i) for i in np.flatnonzero(d <= r + ACTIVE_TOLERANCE))
    return InballResult(center, r, active, iterations, method)


def inradius(polygon: ConvexPolygon, options: SolverOptions = DEFAULT_OPTIONS) -> InballResult:
    """
    Largest inscribed circle of a convex polygon.

    Maximizes F(x) = min_i d(x, side_i). Each iteration moves along the geodesic
    in the direction of the minimum-norm element of the hull of the ε-active
    side gradients; ε shrinks whenever no ascent is found. The final point is
    snapped to the exact equidistant point of its active triple.

    Args:
        polygon: Convex polygon
        options: Solver tolerances

    Returns:
        InballResult with center, r and active sides

    Raises:
        NumericFailureError: If neither the ascent nor the fallback converges;
            `best` carries the best InballResult found
    """
    field = _SideField(polygon)
    k = field.k
    x = _vertex_centroid(polygon)
    value = field.minimum(x)
    span = max(distance(ModelPoint(x, k), v) for v in polygon.vertices)
    eps = max(0.1 * value, options.active_tolerance)
    converged = False
    iterations = 0

    for iterations in range(1, options.max_iterations + 1):
        scaled = field.scaled(x)
        d = np.arcsinh(scaled) / k
        value = float(d.min())
        active = np.flatnonzero(d <= value + eps)
        e1, e2 = tangent_frame(ModelPoint(x, k))
        weights = 1.0 / np.sqrt(1.0 + scaled[active] ** 2)
        grads = np.stack([sheet_inner(field.normals[active], e) for e in (e1, e2)], axis=1)
        g = _min_norm_in_hull(grads * weights[:, None])
        gnorm = float(np.hypot(g[0], g[1]))

        step = 0.0
        if gnorm > 1e-12:
            direction = (g[0] * e1 + g[1] * e2) / gnorm
            hi = span
            while hi > options.step_tolerance:
                res = optimize.minimize_scalar(
                    lambda t: -field.minimum(_geodesic(x, direction, t, k)),
                    bounds=(0.0, hi),
                    method="bounded",
                    options={"xatol": options.step_tolerance / 10.0},
                )
                if -res.fun > value:
                    step = float(res.x)
                    x = _geodesic(x, direction, step, k)
                    x = x / (k * math.sqrt(x[0] * x[0] - x[1] * x[1] - x[2] * x[2]))
                    break
                hi /= 10.0

        if step < options.step_tolerance:
            if eps <= options.active_tolerance:
                converged = True
                break
            eps = max(eps / 10.0, options.active_tolerance)

    method = "ascent"
    if not converged:
        logger.warning(
            "inradius ascent stalled after %d iterations; falling back to Nelder-Mead", iterations
        )
        x_simplex, ok = _simplex_fallback(field, x, options)
        if field.minimum(x_simplex) > field.minimum(x):
            x = x_simplex
            method = "simplex"
        if not ok:
            raise NumericFailureError(
                f"inradius did not converge within {options.max_iterations} iterations",
                best=_finish(field, x, iterations, method),
            )

    polished = _polish(field, x)
    if polished is not None and field.minimum(polished) >= field.minimum(x) - 1e-14:
        x = polished
        method = "polish" if method == "ascent" else method
    result = _finish(field, x, iterations, method)
    logger.debug("inradius r=%.12g after %d iterations (%s)", result.r, iterations, method)
    return result


# ============================================================================
# Circumradius
# ============================================================================


def _is_in_circle(circle: Optional[Circle], p: ModelPoint) -> bool:
    return circle is not None and circle.contains(p, CIRCLE_TOLERANCE)


def _side_of(line: GeodesicLine, p: ModelPoint) -> float:
    return distance_to_line(p, line)


def _circle_one_point(points: Sequence[ModelPoint], p: ModelPoint) -> Circle:
    circle = Circle(p, 0.0)
    for i, q in enumerate(points):
        if not _is_in_circle(circle, q):
            if circle.radius == 0.0:
                circle = diameter_circle(p, q)
            else:
                circle = _circle_two_points(points[: i + 1], p, q)
    return circle


def _circle_two_points(points: Sequence[ModelPoint], p: ModelPoint, q: ModelPoint) -> Circle:
    diameter = diameter_circle(p, q)
    line = GeodesicLine.through(p, q)
    left: Optional[Circle] = None
    right: Optional[Circle] = None

    # Circumcircles with the third point on each side of pq
    for r in points:
        if _is_in_circle(diameter, r):
            continue
        side = _side_of(line, r)
        c = circumcircle_three_points(p, q, r)
        if c is None:
            continue
        if side > 0.0 and (left is None or _side_of(line, c.center) > _side_of(line, left.center)):
            left = c
        elif side < 0.0 and (
            right is None or _side_of(line, c.center) < _side_of(line, right.center)
        ):
            right = c

    if left is None and right is None:
        return diameter
    if left is None:
        return right  # type: ignore[return-value]
    if right is None:
        return left
    return left if left.radius <= right.radius else right


def enclosing_circle(points: Sequence[ModelPoint], seed: int = 0) -> Circle:
    """
    Smallest circle containing a finite point set.

    Expected linear time over a seeded shuffle of the points.
    """
    if not points:
        raise DomainError("enclosing_circle needs at least one point")
    order = np.random.default_rng(seed).permutation(len(points))
    shuffled = [points[i] for i in order]
    circle: Optional[Circle] = None
    for i, p in enumerate(shuffled):
        if not _is_in_circle(circle, p):
            circle = _circle_one_point(shuffled[: i + 1], p)
    assert circle is not None
    return circle


def circumradius(polygon: ConvexPolygon, options: SolverOptions = DEFAULT_OPTIONS) -> CircumballResult:
    """
    Smallest enclosing circle of a convex polygon.

    For a convex polygon the smallest circle around the vertex set encloses the
    whole polygon.
    """
    circle = enclosing_circle(list(polygon.vertices), seed=options.shuffle_seed)
    distances = [distance(circle.center, v) for v in polygon.vertices]
    R = max(distances)
    support = tuple(i for i, d in enumerate(distances) if d >= R - ACTIVE_TOLERANCE * max(1.0, R))
    logger.debug("circumradius R=%.12g support=%s", R, support)
    return CircumballResult(circle.center, R, support)


def gap(polygon: ConvexPolygon, options: SolverOptions = DEFAULT_OPTIONS) -> float:
    """Measured R - r, never negative."""
    return max(0.0, circumradius(polygon, options).R - inradius(polygon, options).r)


# ============================================================================
# Grid-refinement oracles
# ============================================================================

Objective = Callable[[np.ndarray], np.ndarray]


def grid_maximize(
    objective: Objective,
    k: float,
    box: Tuple[float, float, float, float],
    levels: int = 5,
    points: int = 129,
    refine_points: int = 33,
) -> Tuple[ModelPoint, float]:
    """
    Maximize a vectorized objective over a Poincaré-disk grid.

    The first grid has `points` nodes per axis over `box`; every refinement
    level re-grids a window of eight old steps around the incumbent with a step
    four times finer.

    Args:
        objective: Maps an (N, 3) array of sheet points to N values
        k: Curvature scale
        box: (u_min, u_max, v_min, v_max) in disk coordinates
        levels: Refinement levels after the initial grid
        points: Nodes per axis of the initial grid
        refine_points: Nodes per axis of each refinement window

    Returns:
        (argmax point, max value)
    """
    u0, u1, v0, v1 = box
    cu, cv = (u0 + u1) / 2.0, (v0 + v1) / 2.0
    half = max(u1 - u0, v1 - v0) / 2.0
    step = 2.0 * half / (points - 1)
    best_w, best_value = np.array([cu, cv]), -math.inf

    count = points
    for level in range(levels + 1):
        offsets = (np.arange(count) - (count - 1) / 2.0) * step
        uu, vv = np.meshgrid(best_w[0] + offsets, best_w[1] + offsets, indexing="ij")
        grid = np.stack([uu.ravel(), vv.ravel()], axis=1)
        inside = np.einsum("ij,ij->i", grid, grid) < 1.0
        values = np.full(len(grid), -math.inf)
        values[inside] = objective(disk_to_sheet(grid[inside], k))
        i = int(np.argmax(values))
        if values[i] >= best_value:
            best_w, best_value = grid[i], float(values[i])
        logger.debug("grid level %d step %.3e best %.12g", level, step, best_value)
        count = refine_points
        step /= 4.0
    return ModelPoint(disk_to_sheet(best_w, k), k), best_value


def _polygon_box(polygon: ConvexPolygon, margin: float = 0.1) -> Tuple[float, float, float, float]:
    w = np.array([v.to_disk() for v in polygon.vertices])
    lo, hi = w.min(axis=0), w.max(axis=0)
    pad = margin * float(max(hi - lo))
    return lo[0] - pad, hi[0] + pad, lo[1] - pad, hi[1] + pad


def region_inradius_oracle(
    signed_distance: Objective, k: float, box: Tuple[float, float, float, float], levels: int = 5
) -> Tuple[ModelPoint, float]:
    """Largest inscribed circle of a region given its signed distance to the boundary."""
    return grid_maximize(signed_distance, k, box, levels=levels)


def region_circumradius_oracle(
    farthest_distance: Objective, k: float, box: Tuple[float, float, float, float], levels: int = 5
) -> Tuple[ModelPoint, float]:
    """Smallest enclosing circle of a region given the distance to its farthest point."""
    center, value = grid_maximize(lambda pts: -farthest_distance(pts), k, box, levels=levels)
    return center, -value


def inradius_oracle(polygon: ConvexPolygon, levels: int = 5) -> Tuple[ModelPoint, float]:
    """Grid-refinement inradius of a polygon."""
    k = polygon.k
    jn = polygon.side_normals() * _J

    def min_side_distance(pts: np.ndarray) -> np.ndarray:
        return (np.arcsinh(k * (pts @ jn.T)) / k).min(axis=1)

    return region_inradius_oracle(min_side_distance, k, _polygon_box(polygon), levels)


def circumradius_oracle(
    points: Iterable[ModelPoint], k: float, levels: int = 5
) -> Tuple[ModelPoint, float]:
    """Grid-refinement minimax radius of a point set."""
    targets = list(points)

    def max_vertex_distance(pts: np.ndarray) -> np.ndarray:
        return np.max([sheet_distances(pts, t) for t in targets], axis=0)

    w = np.array([t.to_disk() for t in targets])
    lo, hi = w.min(axis=0), w.max(axis=0)
    pad = 0.1 * float(max(hi - lo))
    box = (lo[0] - pad, hi[0] + pad, lo[1] - pad, hi[1] + pad)
    return region_circumradius_oracle(max_vertex_distance, k, box, levels)


def circle_boundary_polygon(circle: Circle, samples: int = 256) -> ConvexPolygon:
    """
    Convex polygon whose vertices are `samples` equally spaced points of the circle.

    Its inradius tends to the circle radius from below as samples grows; its
    circumradius equals the radius.
    """
    if samples < 3:
        raise DomainError(f"need at least 3 boundary samples, got {samples}")
    return ConvexPolygon(
        tuple(circle.point_at(2.0 * math.pi * j / samples) for j in range(samples))
    )


def circle_radii_oracle(circle: Circle, samples: int = 256, levels: int = 5) -> Tuple[float, float]:
    """Grid-refinement (r, R) of the region bounded by sampled points of a geodesic circle."""
    return oracle_radii(circle_boundary_polygon(circle, samples), levels)


def oracle_radii(polygon: ConvexPolygon, levels: int = 5) -> Tuple[float, float]:
    """Grid-refinement (r, R) of a polygon."""
    _, r = inradius_oracle(polygon, levels)
    _, R = circumradius_oracle(polygon.vertices, polygon.k, levels)
    return r, R


def sample_inball(result: InballResult, rng: np.random.Generator, count: int) -> List[ModelPoint]:
    """Uniform-in-angle, uniform-in-radius sample of points of the inball."""
    center = result.center
    e1, e2 = tangent_frame(center)
    out = []
    for theta, s in zip(rng.uniform(0, 2 * math.pi, count), rng.uniform(0, result.r, count)):
        direction = math.cos(theta) * e1 + math.sin(theta) * e2
        out.append(ModelPoint(_geodesic(center.coords, direction, float(s), center.k), center.k))
    return out

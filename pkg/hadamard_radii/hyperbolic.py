#!/usr/bin/env python3
"""
Hyperbolic Plane Primitives

Exact formulas for the hyperbolic plane of curvature -k² in the hyperboloid
model. A point is a vector p of Minkowski space R^{1,2} with
⟨p,p⟩ = -1/k² and p_t > 0, where ⟨x,y⟩ = -x_t·y_t + x_x·y_x + x_y·y_y.

Features:
- Distances, angles and signed distances to geodesic lines
- Geodesic circles, their normal curvature k·coth(k·r) and circumcircles
- Poincaré-disk conversion for I/O and vectorized grid evaluation
- Lorentz isometries for invariance checks

Poincaré-disk conversion (curvature -k²), with w = (u, v), |w| < 1:

    p = (1/k) · ((1 + |w|²), 2u, 2v) / (1 - |w|²)
    w = (k·p_x, k·p_y) / (1 + k·p_t)
"""

import math
import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .entities import DegenerateInputError, DomainError, ScaleMismatchError

logger = logging.getLogger(__name__)

# Accepted drift of ⟨p,p⟩·(-k²) from 1 before renormalizing onto the sheet.
SHEET_TOLERANCE = 1e-9
# arccosh arguments this far below 1 are treated as 1.
ARCCOSH_CLAMP = 1e-12
# Tangent vectors shorter than this are treated as zero (coincident points).
COINCIDENCE_TOLERANCE = 1e-14

_J = np.array([-1.0, 1.0, 1.0])


def minkowski(x: np.ndarray, y: np.ndarray) -> float:
    """Minkowski bilinear form of signature (-,+,+)."""
    return float(-x[0] * y[0] + x[1] * y[1] + x[2] * y[2])


def _check_scale(*ks: float) -> float:
    first = ks[0]
    for k in ks[1:]:
        if k != first:
            raise ScaleMismatchError(f"curvature scales differ: {first} vs {k}")
    return first


@dataclass(frozen=True, eq=False)
class ModelPoint:
    """
    A point of the hyperbolic plane of curvature -k².

    Coordinates are renormalized onto the sheet at construction; inputs drifting
    more than SHEET_TOLERANCE off the sheet are rejected.

    Example:
        >>> p = ModelPoint.from_disk(0.2, -0.1, k=1.0)
        >>> round(distance(p, ModelPoint.origin(1.0)), 4)
        0.4549
    """

    coords: np.ndarray
    k: float = 1.0

    def __post_init__(self) -> None:
        k = float(self.k)
        if not (math.isfinite(k) and k > 0):
            raise DomainError(f"curvature scale must be positive, got {self.k}")
        coords = np.array(self.coords, dtype=float).reshape(3)
        if not np.all(np.isfinite(coords)) or coords[0] <= 0:
            raise DomainError(f"point is not on the upper sheet: {coords}")
        norm = -k * k * minkowski(coords, coords)
        if abs(norm - 1.0) > SHEET_TOLERANCE * max(1.0, (k * coords[0]) ** 2):
            raise DomainError(f"point is off the hyperboloid: -k²⟨p,p⟩ = {norm}")
        coords = coords / math.sqrt(norm)
        coords.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "k", k)

    @classmethod
    def origin(cls, k: float = 1.0) -> "ModelPoint":
        """The base point (1/k, 0, 0)."""
        return cls(np.array([1.0 / k, 0.0, 0.0]), k)

    @classmethod
    def from_disk(cls, u: float, v: float, k: float = 1.0) -> "ModelPoint":
        """Create a point from Poincaré-disk coordinates."""
        w2 = u * u + v * v
        if not w2 < 1.0:
            raise DomainError(f"disk coordinates must satisfy u²+v² < 1, got ({u}, {v})")
        scale = 1.0 / (k * (1.0 - w2))
        return cls(np.array([(1.0 + w2) * scale, 2.0 * u * scale, 2.0 * v * scale]), k)

    @classmethod
    def polar(cls, r: float, theta: float, k: float = 1.0) -> "ModelPoint":
        """The point at distance r from the origin in direction theta."""
        ch, sh = math.cosh(k * r), math.sinh(k * r)
        return cls(np.array([ch, sh * math.cos(theta), sh * math.sin(theta)]) / k, k)

    def to_disk(self) -> Tuple[float, float]:
        """Poincaré-disk coordinates of the point."""
        q = self.k * self.coords
        return float(q[1] / (1.0 + q[0])), float(q[2] / (1.0 + q[0]))

    def transformed(self, matrix: np.ndarray) -> "ModelPoint":
        """Image under a Lorentz transformation preserving the upper sheet."""
        return ModelPoint(np.asarray(matrix) @ self.coords, self.k)

    def with_scale(self, k: float) -> "ModelPoint":
        """The point with the same disk coordinates in the model of scale k."""
        u, v = self.to_disk()
        return ModelPoint.from_disk(u, v, k)

    def isclose(self, other: "ModelPoint", tol: float = 1e-9) -> bool:
        """Whether two points are within geodesic distance tol."""
        return distance(self, other) <= tol

    def to_dict(self) -> dict:
        """Convert point to its JSON form."""
        u, v = self.to_disk()
        return {"k": self.k, "xy": [u, v]}

    @classmethod
    def from_dict(cls, data: dict) -> "ModelPoint":
        """Create point from its JSON form."""
        u, v = data["xy"]
        return cls.from_disk(float(u), float(v), float(data.get("k", 1.0)))

    def __repr__(self) -> str:
        u, v = self.to_disk()
        return f"ModelPoint(xy=({u:.6g}, {v:.6g}), k={self.k:g})"


@dataclass(frozen=True, eq=False)
class GeodesicLine:
    """
    The geodesic {p : ⟨p,u⟩ = 0} with unit spacelike normal u.

    Signed distances are positive on the side u points to; for the line through
    a then b that is the left side, so a counterclockwise polygon has its
    interior on the positive side of every side line.
    """

    normal: np.ndarray
    k: float = 1.0

    def __post_init__(self) -> None:
        u = np.array(self.normal, dtype=float).reshape(3)
        norm = minkowski(u, u)
        if not norm > 0:
            raise DomainError(f"line normal must be spacelike, got ⟨u,u⟩ = {norm}")
        u = u / math.sqrt(norm)
        u.setflags(write=False)
        object.__setattr__(self, "normal", u)

    @classmethod
    def through(cls, a: ModelPoint, b: ModelPoint) -> "GeodesicLine":
        """The line through a and b, oriented from a to b."""
        k = _check_scale(a.k, b.k)
        if distance(a, b) < COINCIDENCE_TOLERANCE:
            raise DegenerateInputError("a line needs two distinct points")
        # ⟨J(a×b), c⟩ = det(a, b, c)
        return cls(_J * np.cross(a.coords, b.coords), k)

    def signed_distance(self, p: ModelPoint) -> float:
        """Signed distance of p to the line."""
        return distance_to_line(p, self)


@dataclass(frozen=True)
class Circle:
    """
    A geodesic circle.

    Attributes:
        center: Center point
        radius: Geodesic radius, radius ≥ 0
    """

    center: ModelPoint
    radius: float

    def __post_init__(self) -> None:
        if not self.radius >= 0:
            raise DomainError(f"circle radius must be non-negative, got {self.radius}")

    @property
    def k(self) -> float:
        return self.center.k

    @property
    def normal_curvature(self) -> float:
        """Normal curvature k·coth(k·radius) of the circle."""
        return circle_normal_curvature(self.k, self.radius)

    def contains(self, p: ModelPoint, tol: float = 1e-12) -> bool:
        """Whether p lies in the closed disk (relative tolerance tol)."""
        return distance(self.center, p) <= self.radius * (1.0 + tol) + tol

    def point_at(self, theta: float) -> ModelPoint:
        """The circle point in direction theta of the center's tangent frame."""
        e1, _ = tangent_frame(self.center)
        return exp_point(self.center, rotate_tangent(self.center, e1, theta), self.radius)


# ============================================================================
# Tangent-space helpers
# ============================================================================


def unit_tangent(p: ModelPoint, q: ModelPoint) -> np.ndarray:
    """Unit tangent vector at p of the geodesic from p to q."""
    k = _check_scale(p.k, q.k)
    u = q.coords + k * k * minkowski(p.coords, q.coords) * p.coords
    norm2 = minkowski(u, u)
    if not norm2 > COINCIDENCE_TOLERANCE**2:
        raise DegenerateInputError("coincident points have no direction between them")
    return u / math.sqrt(norm2)


def tangent_frame(p: ModelPoint) -> Tuple[np.ndarray, np.ndarray]:
    """A positively oriented orthonormal frame (e1, e2) of the tangent plane at p."""
    v = np.array([0.0, 1.0, 0.0])
    e1 = v + p.k * p.k * minkowski(p.coords, v) * p.coords
    e1 = e1 / math.sqrt(minkowski(e1, e1))
    return e1, rotate_tangent(p, e1, math.pi / 2)


def rotate_tangent(p: ModelPoint, e: np.ndarray, theta: float) -> np.ndarray:
    """Rotate the unit tangent e at p counterclockwise by theta."""
    perp = _J * np.cross(p.k * p.coords, e)
    return math.cos(theta) * e + math.sin(theta) * perp


def exp_point(p: ModelPoint, direction: np.ndarray, s: float) -> ModelPoint:
    """Follow the geodesic from p with unit initial velocity `direction` for length s."""
    k = p.k
    return ModelPoint(math.cosh(k * s) * p.coords + math.sinh(k * s) / k * direction, k)


def signed_angle(vertex: ModelPoint, a: ModelPoint, b: ModelPoint) -> float:
    """Counterclockwise angle in (-π, π] from the direction of a to that of b, seen from vertex."""
    ua = unit_tangent(vertex, a)
    ub = unit_tangent(vertex, b)
    sin = float(np.linalg.det(np.stack([vertex.k * vertex.coords, ua, ub])))
    return math.atan2(sin, minkowski(ua, ub))


def midpoint(a: ModelPoint, b: ModelPoint) -> ModelPoint:
    """Geodesic midpoint of a and b."""
    k = _check_scale(a.k, b.k)
    m = a.coords + b.coords
    return ModelPoint(m / (k * math.sqrt(-minkowski(m, m))), k)


# ============================================================================
# Operations
# ============================================================================


def distance(p: ModelPoint, q: ModelPoint) -> float:
    """
    Geodesic distance (1/k)·arccosh(-k²⟨p,q⟩).

    Short distances use the equivalent (2/k)·arcsinh(k·|p-q|_M/2), which keeps
    full precision where arccosh loses half the digits.

    Raises:
        ScaleMismatchError: If p and q live in models of different curvature
    """
    k = _check_scale(p.k, q.k)
    arg = -k * k * minkowski(p.coords, q.coords)
    if arg < 1.0 - ARCCOSH_CLAMP:
        raise DomainError(f"arccosh argument {arg} below 1; points are off the sheet")
    if arg >= 2.0:
        return math.acosh(arg) / k
    delta = p.coords - q.coords
    chord2 = max(minkowski(delta, delta), 0.0)
    return 2.0 / k * math.asinh(k * math.sqrt(chord2) / 2.0)


def angle_at(vertex: ModelPoint, a: ModelPoint, b: ModelPoint) -> float:
    """
    Angle in [0, π] between the geodesics from vertex to a and from vertex to b.

    Raises:
        DegenerateInputError: If a or b coincides with vertex
    """
    return abs(signed_angle(vertex, a, b))


def distance_to_line(p: ModelPoint, line: GeodesicLine) -> float:
    """Signed distance (1/k)·arcsinh(k·⟨p,u⟩) from p to the line."""
    k = _check_scale(p.k, line.k)
    return math.asinh(k * minkowski(p.coords, line.normal)) / k


def reflect_across(p: ModelPoint, line: GeodesicLine) -> ModelPoint:
    """Mirror image of p in the line."""
    _check_scale(p.k, line.k)
    u = line.normal
    return ModelPoint(p.coords - 2.0 * minkowski(p.coords, u) * u, p.k)


def circle_normal_curvature(k: float, r: float) -> float:
    """
    Normal curvature k·coth(k·r) of a geodesic circle of radius r.

    k = 0 gives the Euclidean value 1/r.

    Raises:
        DomainError: If r ≤ 0 or k < 0
    """
    if not r > 0:
        raise DomainError(f"circle radius must be positive, got {r}")
    if not k >= 0:
        raise DomainError(f"curvature scale must be non-negative, got {k}")
    if math.isinf(r):
        return k
    if k == 0:
        return 1.0 / r
    return k / math.tanh(k * r)


def circumcircle_three_points(a: ModelPoint, b: ModelPoint, c: ModelPoint) -> Optional[Circle]:
    """
    The circle through a, b and c, or None when no such circle exists.

    The center o satisfies ⟨o,a⟩ = ⟨o,b⟩ = ⟨o,c⟩, so it is proportional to
    J·((a-b)×(a-c)). Collinear triples give a spacelike vector (the normal of
    their common line) and return None; so do triples on a horocycle or a
    hypercycle, which have no center in the plane.

    Raises:
        DegenerateInputError: If two of the points coincide
    """
    k = _check_scale(a.k, b.k, c.k)
    for p, q in ((a, b), (b, c), (a, c)):
        if distance(p, q) < COINCIDENCE_TOLERANCE:
            raise DegenerateInputError("circumcircle needs three distinct points")
    w = _J * np.cross(a.coords - b.coords, a.coords - c.coords)
    norm2 = minkowski(w, w)
    if not -norm2 > 1e-14 * float(np.dot(w, w)):
        return None
    if w[0] < 0:
        w = -w
    center = ModelPoint(w / (k * math.sqrt(-norm2)), k)
    radius = max(distance(center, a), distance(center, b), distance(center, c))
    return Circle(center, radius)


def diameter_circle(a: ModelPoint, b: ModelPoint) -> Circle:
    """The smallest circle through a and b."""
    m = midpoint(a, b)
    return Circle(m, max(distance(m, a), distance(m, b)))


# ============================================================================
# Closed-form triangle trigonometry
# ============================================================================


def law_of_cosines_angle(a: float, b: float, c: float, k: float = 1.0) -> float:
    """Angle between sides a and b of a triangle whose third side is c."""
    num = math.cosh(k * a) * math.cosh(k * b) - math.cosh(k * c)
    den = math.sinh(k * a) * math.sinh(k * b)
    return math.acos(min(1.0, max(-1.0, num / den)))


def law_of_cosines_side(a: float, b: float, gamma: float, k: float = 1.0) -> float:
    """Side opposite the angle gamma enclosed by sides a and b."""
    ch = math.cosh(k * a) * math.cosh(k * b) - math.sinh(k * a) * math.sinh(k * b) * math.cos(gamma)
    return math.acosh(max(1.0, ch)) / k


def triangle_area(angles: Sequence[float], k: float = 1.0) -> float:
    """Area of a geodesic triangle from its angle deficit."""
    return (math.pi - sum(angles)) / (k * k)


# ============================================================================
# Isometries and vectorized helpers
# ============================================================================


def rotation(phi: float) -> np.ndarray:
    """Rotation about the origin by phi."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def boost(t: float) -> np.ndarray:
    """Translation by hyperbolic distance t/k along the x-axis through the origin."""
    ch, sh = math.cosh(t), math.sinh(t)
    return np.array([[ch, sh, 0.0], [sh, ch, 0.0], [0.0, 0.0, 1.0]])


def random_isometry(rng: np.random.Generator, max_boost: float = 2.0) -> np.ndarray:
    """A random orientation-preserving isometry: rotation · boost · rotation."""
    return (
        rotation(rng.uniform(0.0, 2.0 * math.pi))
        @ boost(rng.uniform(0.0, max_boost))
        @ rotation(rng.uniform(0.0, 2.0 * math.pi))
    )


def disk_to_sheet(uv: np.ndarray, k: float) -> np.ndarray:
    """Map an (N, 2) array of disk coordinates to (N, 3) hyperboloid coordinates."""
    uv = np.asarray(uv, dtype=float)
    w2 = np.sum(uv * uv, axis=-1)
    scale = 1.0 / (k * (1.0 - w2))
    return np.stack([(1.0 + w2) * scale, 2.0 * uv[..., 0] * scale, 2.0 * uv[..., 1] * scale], axis=-1)


def sheet_inner(points: np.ndarray, vector: np.ndarray) -> np.ndarray:
    """Minkowski products of an (N, 3) point array with one vector."""
    return -points[..., 0] * vector[0] + points[..., 1] * vector[1] + points[..., 2] * vector[2]


def sheet_distances(points: np.ndarray, target: ModelPoint) -> np.ndarray:
    """Distances from an (N, 3) array of sheet points to one point."""
    k = target.k
    delta = points - target.coords
    chord2 = -delta[..., 0] ** 2 + delta[..., 1] ** 2 + delta[..., 2] ** 2
    return 2.0 / k * np.arcsinh(k * np.sqrt(np.maximum(chord2, 0.0)) / 2.0)

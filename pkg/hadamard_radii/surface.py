#!/usr/bin/env python3
"""
Rotationally Symmetric Surfaces

Numerical geometry of surfaces dr² + f(r)²dθ² with a smooth pole at r = 0:
geodesic shooting, two-point distances, triangle angle comparison and the
inradius/circumradius of geodesic polygons.

Geodesics are integrated in the Cartesian chart (x, y) = (r cos θ, r sin θ)
together with the heading β = θ + ψ, where ψ is the angle of the velocity from
the outward radial direction (at the pole β is the chart direction itself).
With w(r) = (r/f - 1)/r² and u(r) = (1 - f')/(r·f):

    (x', y') = (cos β, sin β) + w·(x sin β - y cos β)·(-y, x)
    β'       = u·(x sin β - y cos β)

Both coefficients have finite limits at the pole, so the system is smooth
there. Along a geodesic the Clairaut quantity f(r)·sin ψ is conserved.

Example:
    >>> profile = SinhProfile(k=1.0)
    >>> p, q = SurfacePoint(0.5, 0.0), SurfacePoint(0.7, 1.0)
    >>> d = distance_bvp(profile, p, q)
"""

import math
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Type

import numpy as np
from scipy import integrate, interpolate, optimize

from .entities import (
    CurvatureBand,
    DegenerateInputError,
    DomainError,
    InputFormatError,
    IntegrationError,
    NumericFailureError,
    Verdict,
)
from .hyperbolic import ModelPoint, distance, law_of_cosines_angle, unit_tangent
from .polygon import TURN_TOLERANCE, kappa_definition_a, vertex_threshold

logger = logging.getLogger(__name__)

# Below this radius the chart coefficients use their pole series.
SERIES_RADIUS = 1e-4
# Relative and absolute tolerances of the adaptive geodesic integrator.
RTOL = 1e-10
ATOL = 1e-12
# Chart-coordinate residual accepted by the two-point solver.
BVP_TOLERANCE = 1e-9
CLAIRAUT_TOLERANCE = 1e-9
# Comparison margins below -MARGIN_TOLERANCE count as violations.
MARGIN_TOLERANCE = 1e-6


def _wrap(angle: float) -> float:
    """Wrap an angle into (-π, π]."""
    wrapped = math.remainder(angle, 2.0 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


# ============================================================================
# Profiles
# ============================================================================


class SurfaceProfile(ABC):
    """
    Warping function f of the metric dr² + f(r)²dθ².

    Subclasses provide f, f' and f'' as vectorized functions of r ≥ 0 with
    f(0) = 0, f'(0) = 1 and f > 0 for r > 0.
    """

    name: str = ""
    registry: Dict[str, Type["SurfaceProfile"]] = {}

    def __init_subclass__(cls, **kwargs: object) -> None:
        super().__init_subclass__(**kwargs)
        if cls.name:
            SurfaceProfile.registry[cls.name] = cls

    @abstractmethod
    def f(self, r: np.ndarray) -> np.ndarray:
        """Warping factor."""

    @abstractmethod
    def df(self, r: np.ndarray) -> np.ndarray:
        """First derivative of f."""

    @abstractmethod
    def ddf(self, r: np.ndarray) -> np.ndarray:
        """Second derivative of f."""

    @property
    @abstractmethod
    def pole_curvature_sq(self) -> float:
        """-K(0)."""

    @abstractmethod
    def params(self) -> dict:
        """Constructor parameters."""

    @property
    def working_radius(self) -> float:
        """Largest r at which f may be evaluated."""
        return math.inf

    def curvature(self, r: np.ndarray) -> np.ndarray:
        """Gaussian curvature K(r) = -f''(r)/f(r)."""
        r = np.asarray(r, dtype=float)
        small = r < SERIES_RADIUS
        safe = np.where(small, 1.0, r)
        return np.where(small, -self.pole_curvature_sq, -self.ddf(safe) / self.f(safe))

    def chart_coefficients(self, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """(w(r), u(r)) of the chart geodesic equations."""
        r = np.asarray(r, dtype=float)
        if np.any(r > self.working_radius):
            raise DomainError(
                f"geodesic left the working region r <= {self.working_radius} of profile {self.name}"
            )
        small = r < SERIES_RADIUS
        safe = np.where(small, 1.0, r)
        f, df = self.f(safe), self.df(safe)
        k0 = self.pole_curvature_sq
        w = np.where(small, -k0 / 6.0, (safe / f - 1.0) / (safe * safe))
        u = np.where(small, -k0 / 2.0, (1.0 - df) / (safe * f))
        return w, u

    def pinching_certificate(
        self, band: CurvatureBand, r_max: float, samples: int = 10_000, tol: float = 1e-9
    ) -> "PinchingCertificate":
        """Check -k1² ≤ K ≤ -k2² on a uniform grid of [0, r_max]."""
        r = np.linspace(0.0, r_max, samples)
        K = self.curvature(r)
        lo, hi = float(K.min()), float(K.max())
        ok = lo >= -band.k1**2 - tol and hi <= -band.k2**2 + tol
        return PinchingCertificate(lo, hi, r_max, samples, ok)

    def to_dict(self) -> dict:
        return {"profile": self.name, "params": self.params()}


@dataclass(frozen=True)
class PinchingCertificate:
    """Observed curvature range of a profile on a sample grid."""

    min_curvature: float
    max_curvature: float
    r_max: float
    samples: int
    ok: bool


class SinhProfile(SurfaceProfile):
    """f(r) = sinh(k·r)/k, constant curvature -k²."""

    name = "sinh"

    def __init__(self, k: float = 1.0):
        if not k > 0:
            raise DomainError(f"k must be positive, got {k}")
        self.k = float(k)

    def f(self, r: np.ndarray) -> np.ndarray:
        return np.sinh(self.k * np.asarray(r)) / self.k

    def df(self, r: np.ndarray) -> np.ndarray:
        return np.cosh(self.k * np.asarray(r))

    def ddf(self, r: np.ndarray) -> np.ndarray:
        return self.k * np.sinh(self.k * np.asarray(r))

    @property
    def pole_curvature_sq(self) -> float:
        return self.k * self.k

    def params(self) -> dict:
        return {"k": self.k}


def smoothstep(t: np.ndarray) -> np.ndarray:
    """3t² - 2t³ clamped to [0, 1]."""
    t = np.clip(t, 0.0, 1.0)
    return t * t * (3.0 - 2.0 * t)


class BlendedProfile(SurfaceProfile):
    """
    Curvature -κ²(r) moving smoothly from -k1² near the pole to -k2² far out.

    κ²(r) = k1² + (k2² - k1²)·smoothstep((r - r0)/(r1 - r0)). For r ≤ r0 the
    profile is sinh(k1·r)/k1 exactly; beyond, f'' = κ²·f is integrated once
    and kept as a dense solution. -k2² > K holds strictly for r < r1.
    """

    name = "blended"

    def __init__(
        self,
        k1: float = 1.0,
        k2: float = 0.5,
        r0: float = 0.5,
        r1: float = 2.0,
        r_max: float = 10.0,
    ):
        if not (k1 > 0 and 0 <= k2 <= k1):
            raise DomainError(f"need k1 > 0 and 0 <= k2 <= k1, got k1={k1}, k2={k2}")
        if not 0 < r0 < r1 < r_max:
            raise DomainError(f"need 0 < r0 < r1 < r_max, got {r0}, {r1}, {r_max}")
        self.k1, self.k2, self.r0, self.r1, self.r_max = (
            float(k1),
            float(k2),
            float(r0),
            float(r1),
            float(r_max),
        )
        start = [math.sinh(k1 * r0) / k1, math.cosh(k1 * r0)]
        sol = integrate.solve_ivp(
            lambda r, y: [y[1], self.kappa_sq(r) * y[0]],
            (self.r0, self.r_max),
            start,
            method="DOP853",
            rtol=1e-13,
            atol=1e-13,
            dense_output=True,
        )
        if not sol.success:
            raise IntegrationError(f"profile integration failed: {sol.message}")
        self._outer = sol.sol

    def kappa_sq(self, r: np.ndarray) -> np.ndarray:
        t = (np.asarray(r, dtype=float) - self.r0) / (self.r1 - self.r0)
        return self.k1**2 + (self.k2**2 - self.k1**2) * smoothstep(t)

    def _eval(self, r: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        r = np.asarray(r, dtype=float)
        if np.any(r > self.r_max):
            raise DomainError(f"profile evaluated at r > r_max = {self.r_max}")
        inner = r <= self.r0
        f = np.sinh(self.k1 * r) / self.k1
        df = np.cosh(self.k1 * r)
        if np.any(~inner):
            outer = self._outer(np.where(inner, self.r0, r))
            f = np.where(inner, f, outer[0])
            df = np.where(inner, df, outer[1])
        return f, df

    def f(self, r: np.ndarray) -> np.ndarray:
        return self._eval(r)[0]

    def df(self, r: np.ndarray) -> np.ndarray:
        return self._eval(r)[1]

    def ddf(self, r: np.ndarray) -> np.ndarray:
        return self.kappa_sq(r) * self.f(r)

    @property
    def pole_curvature_sq(self) -> float:
        return self.k1 * self.k1

    @property
    def working_radius(self) -> float:
        return self.r_max

    @property
    def strict_radius(self) -> float:
        """The upper curvature bound is strict for r below this radius."""
        return self.r1

    def params(self) -> dict:
        return {"k1": self.k1, "k2": self.k2, "r0": self.r0, "r1": self.r1, "r_max": self.r_max}


def make_profile(name: str, **params: float) -> SurfaceProfile:
    """
    Create a built-in profile by name.

    Raises:
        InputFormatError: If the name is unknown
    """
    try:
        cls = SurfaceProfile.registry[name]
    except KeyError:
        known = ", ".join(sorted(SurfaceProfile.registry))
        raise InputFormatError(f"unknown profile {name!r} (known: {known})") from None
    return cls(**params)  # type: ignore[call-arg]


# ============================================================================
# Points and geodesics
# ============================================================================


@dataclass(frozen=True)
class SurfacePoint:
    """
    Polar coordinates (r, θ) about the pole; θ is irrelevant at r = 0.

    Example:
        >>> SurfacePoint(0.0, 1.0).xy
        (0.0, 0.0)
    """

    r: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        if not self.r >= 0:
            raise DomainError(f"r must be non-negative, got {self.r}")
        object.__setattr__(self, "theta", self.theta % (2.0 * math.pi))

    @property
    def xy(self) -> Tuple[float, float]:
        return self.r * math.cos(self.theta), self.r * math.sin(self.theta)

    @classmethod
    def from_xy(cls, x: float, y: float) -> "SurfacePoint":
        return cls(math.hypot(x, y), math.atan2(y, x))

    def to_model(self, k: float) -> ModelPoint:
        """The point with the same polar coordinates in the model of scale k."""
        return ModelPoint.polar(self.r, self.theta, k)

    def to_list(self) -> List[float]:
        return [self.r, self.theta]


@dataclass(frozen=True)
class Shot:
    """Endpoint of a geodesic shot."""

    end: SurfacePoint
    heading: float
    clairaut_drift: float


def _rhs(profile: SurfaceProfile, state: np.ndarray) -> np.ndarray:
    x, y, beta = state[0], state[1], state[2]
    w, u = profile.chart_coefficients(np.sqrt(x * x + y * y))
    cb, sb = np.cos(beta), np.sin(beta)
    cross = x * sb - y * cb
    return np.array([cb - w * cross * y, sb + w * cross * x, u * cross])


def clairaut(profile: SurfaceProfile, x: float, y: float, heading: float) -> float:
    """f(r)·sin ψ at a chart position and heading."""
    r = math.hypot(x, y)
    if r == 0.0:
        return 0.0
    psi = heading - math.atan2(y, x)
    return float(profile.f(r)) * math.sin(psi)


def geodesic_shoot(
    profile: SurfaceProfile, start: SurfacePoint, heading: float, length: float
) -> Shot:
    """
    Follow the unit-speed geodesic from start with the given heading.

    Args:
        profile: Surface profile
        start: Starting point
        heading: θ + angle from the outward radial direction (the chart
            direction at the pole)
        length: Arc length; negative lengths run backward

    Returns:
        Shot with the end point, end heading and Clairaut drift

    Raises:
        IntegrationError: If the integrator fails
    """
    x0, y0 = start.xy
    if length == 0.0:
        return Shot(start, heading, 0.0)
    sol = integrate.solve_ivp(
        lambda s, state: _rhs(profile, state),
        (0.0, length),
        [x0, y0, heading],
        method="DOP853",
        rtol=RTOL,
        atol=ATOL,
    )
    if not sol.success:
        raise IntegrationError(f"geodesic integration failed: {sol.message}")
    x1, y1, b1 = sol.y[:, -1]
    drift = abs(clairaut(profile, x1, y1, b1) - clairaut(profile, x0, y0, heading))
    if drift > CLAIRAUT_TOLERANCE:
        logger.warning("Clairaut drift %.3e over a shot of length %g", drift, length)
    return Shot(SurfacePoint.from_xy(x1, y1), float(b1), drift)


def _rk4_bundle(profile: SurfaceProfile, states: np.ndarray, h: float, steps: int) -> np.ndarray:
    """Fixed-step RK4 for many rays at once; returns (steps+1, 3, N)."""
    out = np.empty((steps + 1,) + states.shape)
    out[0] = y = states
    for i in range(steps):
        k1 = _rhs(profile, y)
        k2 = _rhs(profile, y + 0.5 * h * k1)
        k3 = _rhs(profile, y + 0.5 * h * k2)
        k4 = _rhs(profile, y + h * k3)
        y = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[i + 1] = y
    return out


@dataclass(frozen=True)
class GeodesicSegment:
    """Shortest geodesic between two surface points."""

    start: SurfacePoint
    end: SurfacePoint
    length: float
    start_heading: float
    end_heading: float
    residual: float


def _model_guess(profile: SurfaceProfile, p: SurfacePoint, q: SurfacePoint) -> Tuple[float, float]:
    """Heading and length of the p→q geodesic in the model with K = K(mean radius)."""
    k = math.sqrt(max(-float(profile.curvature((p.r + q.r) / 2.0)), 1e-6))
    mp, mq = p.to_model(k), q.to_model(k)
    d = unit_tangent(mp, mq)
    if p.r == 0.0:
        return math.atan2(d[2], d[1]), distance(mp, mq)
    radial = -unit_tangent(mp, ModelPoint.origin(k))
    angular = np.array([0.0, -math.sin(p.theta), math.cos(p.theta)])
    psi = math.atan2(
        -d[0] * angular[0] + d[1] * angular[1] + d[2] * angular[2],
        -d[0] * radial[0] + d[1] * radial[1] + d[2] * radial[2],
    )
    return p.theta + psi, distance(mp, mq)


def solve_geodesic(profile: SurfaceProfile, p: SurfacePoint, q: SurfacePoint) -> GeodesicSegment:
    """
    Solve the two-point problem by shooting on (heading, length).

    The chart endpoint residual is driven to zero with MINPACK's hybrid method,
    starting from the constant-curvature solution at the local curvature.

    Raises:
        DegenerateInputError: If p and q coincide
        NumericFailureError: If the residual stays above BVP_TOLERANCE
    """
    px, py = p.xy
    qx, qy = q.xy
    if math.hypot(px - qx, py - qy) < 1e-14:
        raise DegenerateInputError("distance_bvp needs two distinct points")
    heading0, length0 = _model_guess(profile, p, q)

    def residual(z: np.ndarray) -> np.ndarray:
        end = geodesic_shoot(profile, p, float(z[0]), float(z[1])).end
        ex, ey = end.xy
        return np.array([ex - qx, ey - qy])

    sol = optimize.root(residual, [heading0, length0], method="hybr", options={"xtol": 1e-13})
    heading, length = float(sol.x[0]), float(sol.x[1])
    res = float(np.hypot(*residual(sol.x)))
    if res > BVP_TOLERANCE:
        raise NumericFailureError(
            f"two-point geodesic did not converge (residual {res:.3e})", best=(heading, length)
        )
    if length < 0:
        heading, length = heading + math.pi, -length
    shot = geodesic_shoot(profile, p, heading, length)
    logger.debug("bvp length %.12g after %d evaluations", length, sol.nfev)
    return GeodesicSegment(p, q, length, _wrap(heading), _wrap(shot.heading), res)


def distance_bvp(profile: SurfaceProfile, p: SurfacePoint, q: SurfacePoint) -> float:
    """Geodesic distance between two surface points."""
    return solve_geodesic(profile, p, q).length


# ============================================================================
# Triangle comparison
# ============================================================================


@dataclass(frozen=True)
class TriangleComparison:
    """
    Angles of a geodesic triangle against its comparison triangle of curvature -k1².

    Attributes:
        sides: Lengths opposite each vertex
        angles: Measured interior angles
        comparison_angles: Angles of the comparison triangle
    """

    sides: Tuple[float, float, float]
    angles: Tuple[float, float, float]
    comparison_angles: Tuple[float, float, float]

    @property
    def margins(self) -> Tuple[float, float, float]:
        a, c = self.angles, self.comparison_angles
        return (a[0] - c[0], a[1] - c[1], a[2] - c[2])

    @property
    def ok(self) -> bool:
        return min(self.margins) >= -MARGIN_TOLERANCE


def _angle_between(h1: float, h2: float) -> float:
    return abs(_wrap(h1 - h2))


def toponogov_angle_check(
    profile: SurfaceProfile, triangle: Sequence[SurfacePoint], k1: float
) -> TriangleComparison:
    """
    Compare the angles of a geodesic triangle with those of the triangle with
    the same side lengths in constant curvature -k1².

    The direction at the far end of a side is its arrival heading plus π.
    """
    a, b, c = triangle
    ab, bc, ca = solve_geodesic(profile, a, b), solve_geodesic(profile, b, c), solve_geodesic(
        profile, c, a
    )
    angle_a = _angle_between(ab.start_heading, ca.end_heading + math.pi)
    angle_b = _angle_between(bc.start_heading, ab.end_heading + math.pi)
    angle_c = _angle_between(ca.start_heading, bc.end_heading + math.pi)
    la, lb, lc = bc.length, ca.length, ab.length
    comparison = (
        law_of_cosines_angle(lc, lb, la, k1),
        law_of_cosines_angle(lc, la, lb, k1),
        law_of_cosines_angle(la, lb, lc, k1),
    )
    return TriangleComparison((la, lb, lc), (angle_a, angle_b, angle_c), comparison)


# ============================================================================
# Geodesic polygons
# ============================================================================


@dataclass
class SurfacePolygonReport:
    """
    Radii and hypotheses of one geodesic polygon on a surface.

    Attributes:
        vertices: Polygon vertices (counterclockwise)
        r, R: Numerical inradius and circumradius
        alphas: Interior angles
        lengths: Side lengths, side i from vertex i-1 to vertex i
        kappas: Vertex curvatures 2(π - α)/(ℓ_i + ℓ_{i+1})
        vertex_flags: κ ≥ (π/2)·k1·coth(k1·ρ) per vertex
        global_flag: k2·coth(k2·ρ) ≥ k1
        margin: k1·coth(k1·r) - k2·coth(k2·ρ)
        verdict: PASS/FAIL, SKIPPED when a hypothesis fails
    """

    vertices: List[SurfacePoint]
    r: float
    R: float
    alphas: List[float]
    lengths: List[float]
    kappas: List[float] = field(default_factory=list)
    vertex_flags: List[bool] = field(default_factory=list)
    global_flag: bool = False
    margin: Optional[float] = None
    verdict: Verdict = Verdict.SKIPPED

    def to_dict(self) -> dict:
        return {
            "vertices": [v.to_list() for v in self.vertices],
            "r": self.r,
            "R": self.R,
            "alphas": self.alphas,
            "lengths": self.lengths,
            "kappas": self.kappas,
            "vertex_flags": self.vertex_flags,
            "global_flag": self.global_flag,
            "margin": self.margin,
            "verdict": self.verdict.value,
        }


class _DistanceField:
    """Scattered distance samples interpolated in chart coordinates; NaN outside the data."""

    def __init__(self, points: np.ndarray, values: np.ndarray):
        self._interp = interpolate.CloughTocher2DInterpolator(points, values)

    def __call__(self, xy: np.ndarray) -> np.ndarray:
        return self._interp(xy)


def _side_field(
    profile: SurfaceProfile, segment: GeodesicSegment, extension: float, depth: float, rays: int, steps: int
) -> _DistanceField:
    """Distance to the side's geodesic line from inward perpendicular rays (Fermi coordinates)."""
    back = geodesic_shoot(profile, segment.start, segment.start_heading, -extension)
    x0, y0 = back.end.xy
    t = np.linspace(0.0, segment.length + 2.0 * extension, rays)
    sol = integrate.solve_ivp(
        lambda s, state: _rhs(profile, state),
        (t[0], t[-1]),
        [x0, y0, back.heading],
        method="DOP853",
        rtol=RTOL,
        atol=ATOL,
        dense_output=True,
    )
    if not sol.success:
        raise IntegrationError(f"side line integration failed: {sol.message}")
    base = sol.sol(t)
    states = np.stack([base[0], base[1], base[2] + math.pi / 2.0])
    paths = _rk4_bundle(profile, states, depth / steps, steps)
    points = paths[:, :2, :].transpose(0, 2, 1).reshape(-1, 2)
    values = np.repeat(np.arange(steps + 1) * depth / steps, rays)
    return _DistanceField(points, values)


def _vertex_field(
    profile: SurfaceProfile, vertex: SurfacePoint, depth: float, rays: int, steps: int
) -> _DistanceField:
    """Distance to a vertex from a fan of geodesics."""
    x0, y0 = vertex.xy
    headings = np.linspace(0.0, 2.0 * math.pi, rays, endpoint=False)
    states = np.stack([np.full(rays, x0), np.full(rays, y0), headings])
    paths = _rk4_bundle(profile, states, depth / steps, steps)
    points = paths[1:, :2, :].transpose(0, 2, 1).reshape(-1, 2)
    values = np.repeat(np.arange(1, steps + 1) * depth / steps, rays)
    return _DistanceField(np.vstack([[x0, y0], points]), np.append(0.0, values))


def _grid_search(
    objective, center: np.ndarray, radius: float, resolution: float, maximize: bool
) -> Tuple[np.ndarray, float]:
    """Polar grid about center, then Cartesian refinement windows until the step drops below resolution."""
    sign = 1.0 if maximize else -1.0
    radii = np.linspace(0.0, radius, 41)[1:]
    angles = np.linspace(0.0, 2.0 * math.pi, 72, endpoint=False)
    rr, aa = np.meshgrid(radii, angles)
    grid = np.vstack([center, center + np.stack([rr * np.cos(aa), rr * np.sin(aa)], axis=-1).reshape(-1, 2)])
    step = radius / 40.0
    best, best_value = center, -math.inf
    while True:
        values = sign * objective(grid)
        values = np.where(np.isnan(values), -math.inf, values)
        i = int(np.argmax(values))
        if values[i] > best_value:
            best, best_value = grid[i], float(values[i])
        if step < resolution:
            break
        offsets = np.linspace(-2.0 * step, 2.0 * step, 21)
        gx, gy = np.meshgrid(best[0] + offsets, best[1] + offsets)
        grid = np.stack([gx.ravel(), gy.ravel()], axis=1)
        step /= 5.0
    if not math.isfinite(best_value):
        raise NumericFailureError("no grid point inside the distance fields", best=best)
    return best, sign * best_value


def polygon_geometry(
    profile: SurfaceProfile, vertices: Sequence[SurfacePoint]
) -> Tuple[List[GeodesicSegment], List[float]]:
    """
    Sides and interior angles of a geodesic polygon.

    Raises:
        DomainError: If the polygon is not strictly convex and counterclockwise
    """
    n = len(vertices)
    if n < 3:
        raise DomainError(f"a polygon needs at least 3 vertices, got {n}")
    sides = [solve_geodesic(profile, vertices[i - 1], vertices[i]) for i in range(n)]
    alphas = []
    for i in range(n):
        to_next = sides[(i + 1) % n].start_heading
        to_prev = sides[i].end_heading + math.pi
        alpha = _wrap(to_prev - to_next)
        if not TURN_TOLERANCE < alpha < math.pi - TURN_TOLERANCE:
            raise DomainError(
                f"surface polygon is not strictly convex counterclockwise at vertex {i} "
                f"(turn {alpha:.6g})"
            )
        alphas.append(alpha)
    return sides, alphas


def polygon_extremal_radii_numeric(
    profile: SurfaceProfile,
    vertices: Sequence[SurfacePoint],
    resolution: float = 1e-3,
    rays: int = 160,
    steps: int = 60,
) -> Tuple[float, float]:
    """
    Inradius and circumradius of a convex geodesic polygon.

    Side distance fields come from perpendicular ray bundles off the extended
    side lines, vertex distance fields from geodesic fans; both are
    interpolated in the chart and searched on a refined grid.

    Returns:
        (r, R), each to about `resolution`
    """
    sides, _ = polygon_geometry(profile, vertices)
    depth = 1.05 * sum(s.length for s in sides) / 2.0
    side_fields = [_side_field(profile, s, depth, depth, rays, steps) for s in sides]
    vertex_fields = [_vertex_field(profile, v, depth, rays, steps) for v in vertices]

    xy = np.array([v.xy for v in vertices])
    center = xy.mean(axis=0)
    radius = float(np.max(np.hypot(*(xy - center).T)))

    def min_side(points: np.ndarray) -> np.ndarray:
        return np.min([fld(points) for fld in side_fields], axis=0)

    def max_vertex(points: np.ndarray) -> np.ndarray:
        return np.max([fld(points) for fld in vertex_fields], axis=0)

    _, r = _grid_search(min_side, center, radius, resolution, maximize=True)
    _, R = _grid_search(max_vertex, center, radius, resolution, maximize=False)
    logger.debug("surface polygon n=%d r=%.6g R=%.6g", len(vertices), r, R)
    return r, R


def surface_polygon_on_circle(
    profile: SurfaceProfile, center: SurfacePoint, radius: float, angles: Sequence[float]
) -> List[SurfacePoint]:
    """Vertices at geodesic distance `radius` from center in increasing headings."""
    return [geodesic_shoot(profile, center, float(a), radius).end for a in sorted(angles)]


def verify_surface_polygon(
    profile: SurfaceProfile,
    vertices: Sequence[SurfacePoint],
    band: CurvatureBand,
    rho: float,
    resolution: float = 1e-3,
) -> SurfacePolygonReport:
    """Check k1·coth(k1·r) ≥ k2·coth(k2·ρ) for a geodesic polygon on the surface."""
    sides, alphas = polygon_geometry(profile, vertices)
    lengths = [s.length for s in sides]
    n = len(vertices)
    kappas = [kappa_definition_a(alphas[i], lengths[i], lengths[(i + 1) % n]) for i in range(n)]
    threshold = vertex_threshold(band.k1, rho)
    lam = band.k2 / math.tanh(band.k2 * rho) if band.k2 > 0 else 1.0 / rho
    r, R = polygon_extremal_radii_numeric(profile, vertices, resolution)
    report = SurfacePolygonReport(
        vertices=list(vertices),
        r=r,
        R=R,
        alphas=alphas,
        lengths=lengths,
        kappas=kappas,
        vertex_flags=[kappa >= threshold for kappa in kappas],
        global_flag=lam >= band.k1,
    )
    report.margin = band.k1 / math.tanh(band.k1 * r) - lam
    if report.global_flag and all(report.vertex_flags):
        report.verdict = Verdict.PASS if report.margin >= -resolution else Verdict.FAIL
    return report


def random_surface_polygon(
    profile: SurfaceProfile,
    rng: np.random.Generator,
    n_range: Tuple[int, int] = (3, 8),
    radius_range: Tuple[float, float] = (0.08, 0.28),
    center_radius: float = 1.0,
    min_side: float = 1e-3,
    max_tries: int = 1000,
) -> List[SurfacePoint]:
    """Random convex polygon inscribed in a geodesic circle."""
    for _ in range(max_tries):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        center = SurfacePoint(center_radius * math.sqrt(rng.uniform()), rng.uniform(0, 2 * math.pi))
        radius = float(rng.uniform(*radius_range))
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        gaps = np.diff(np.append(angles, angles[0] + 2.0 * math.pi))
        if gaps.max() >= math.pi:
            continue
        vertices = surface_polygon_on_circle(profile, center, radius, angles)
        xy = np.array([v.xy for v in vertices])
        chords = np.hypot(*(xy - np.roll(xy, 1, axis=0)).T)
        if chords.min() < min_side:
            continue
        return vertices
    raise NumericFailureError(f"no admissible surface polygon in {max_tries} tries")


def random_surface_triangle(rng: np.random.Generator, max_radius: float = 1.5) -> List[SurfacePoint]:
    """Three random points in the disk r ≤ max_radius, thin triangles included."""
    return [
        SurfacePoint(max_radius * math.sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * math.pi))
        for _ in range(3)
    ]


def load_scenario(data: dict) -> Tuple[SurfaceProfile, List[List[SurfacePoint]]]:
    """
    Parse a scenario {"profile": name, "params": {...}, "polygons": [[[r, θ], ...], ...]}.

    Raises:
        InputFormatError: If the scenario is malformed
    """
    try:
        profile = make_profile(str(data["profile"]), **dict(data.get("params", {})))
        polygons = [
            [SurfacePoint(float(r), float(theta)) for r, theta in polygon]
            for polygon in data.get("polygons", [])
        ]
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError(f"malformed scenario: {e}") from e
    return profile, polygons

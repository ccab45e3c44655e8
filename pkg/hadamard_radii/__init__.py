"""
hadamard-radii: inradius and circumradius bounds for convex curves and polygons
in negatively curved surfaces.

Everything is computed in constant-curvature models (the hyperboloid sheet of
curvature -k²) and, beyond constant curvature, on rotationally symmetric
surfaces with pinched curvature -k1² ≤ K ≤ -k2².

Features:
- Exact inradius (maximin) and circumradius (minimum enclosing circle) solvers
  with grid-refinement oracles
- Discrete vertex curvatures and the hypotheses of the polygon radius bounds
- Corner rounding by circular arcs and its outward parallel curves
- Closed-form radius bounds and per-polygon verdicts
- Geodesic shooting, distances and triangle comparison on warped surfaces

Quick Start:
    >>> from hadamard_radii import ConvexPolygon, CurvatureBand, verify
    >>> polygon = ConvexPolygon.regular(5, 0.2, k=0.8)
    >>> report = verify(polygon, CurvatureBand(1.0, 0.5), rho=0.5)
    >>> report.verdict.value
    'pass'

Measuring without bounds:
    >>> from hadamard_radii import measure
    >>> measure(polygon)["r"] < measure(polygon)["R"]
    True
"""

__version__ = "0.1.0"
__author__ = "hadamard-radii contributors"

from typing import Iterable, Optional

from .entities import (
    CurvatureBand,
    CurvatureDefinition,
    Ln2Variant,
    Verdict,
    HadamardRadiiError,
    ScaleMismatchError,
    DegenerateInputError,
    DomainError,
    ConvexityError,
    SpanError,
    HypothesisViolationError,
    NumericFailureError,
    IntegrationError,
    InputFormatError,
)
from .hyperbolic import (
    ModelPoint,
    GeodesicLine,
    Circle,
    distance,
    angle_at,
    distance_to_line,
    reflect_across,
    circle_normal_curvature,
    circumcircle_three_points,
    diameter_circle,
    random_isometry,
)
from .polygon import (
    ConvexPolygon,
    HypothesisFlags,
    side_lengths,
    interior_angles,
    vertex_curvature_A,
    vertex_curvature_B,
    check_theorem2_hypotheses,
)
from .extremal import (
    SolverOptions,
    InballResult,
    CircumballResult,
    inradius,
    circumradius,
    gap,
    enclosing_circle,
    oracle_radii,
)
from .arcs import (
    ArcChain,
    ParallelCurve,
    build_arc_chain,
    convexity_condition,
    condition_reports,
    curvature_chains,
    check_curvature_chain,
    delta_bar,
    parallel_curve,
)
from .bounds import (
    BoundsReport,
    RadiusBounds,
    thm1_bounds,
    thm1prime_bounds,
    thm1doubleprime_bounds,
    arccoth_bounds,
    gap_bound,
    verify_theorem1,
    verify_theorem1prime,
    verify_theorem2,
)
from .surface import (
    SurfaceProfile,
    SinhProfile,
    BlendedProfile,
    SurfacePoint,
    make_profile,
    geodesic_shoot,
    distance_bvp,
    toponogov_angle_check,
    polygon_extremal_radii_numeric,
    verify_surface_polygon,
)
from .corpus import GeneratorConfig, PolygonGenerator, generate_corpus

__all__ = [
    # Configuration and results
    "CurvatureBand",
    "CurvatureDefinition",
    "Ln2Variant",
    "Verdict",
    "SolverOptions",
    "GeneratorConfig",
    # Errors
    "HadamardRadiiError",
    "ScaleMismatchError",
    "DegenerateInputError",
    "DomainError",
    "ConvexityError",
    "SpanError",
    "HypothesisViolationError",
    "NumericFailureError",
    "IntegrationError",
    "InputFormatError",
    # Model geometry
    "ModelPoint",
    "GeodesicLine",
    "Circle",
    "distance",
    "angle_at",
    "distance_to_line",
    "reflect_across",
    "circle_normal_curvature",
    "circumcircle_three_points",
    "diameter_circle",
    "random_isometry",
    # Polygons
    "ConvexPolygon",
    "HypothesisFlags",
    "side_lengths",
    "interior_angles",
    "vertex_curvature_A",
    "vertex_curvature_B",
    "check_theorem2_hypotheses",
    # Radii
    "InballResult",
    "CircumballResult",
    "inradius",
    "circumradius",
    "gap",
    "enclosing_circle",
    "oracle_radii",
    # Arc construction
    "ArcChain",
    "ParallelCurve",
    "build_arc_chain",
    "convexity_condition",
    "condition_reports",
    "curvature_chains",
    "check_curvature_chain",
    "delta_bar",
    "parallel_curve",
    # Bounds
    "BoundsReport",
    "RadiusBounds",
    "thm1_bounds",
    "thm1prime_bounds",
    "thm1doubleprime_bounds",
    "arccoth_bounds",
    "gap_bound",
    "verify_theorem1",
    "verify_theorem1prime",
    "verify_theorem2",
    # Surfaces
    "SurfaceProfile",
    "SinhProfile",
    "BlendedProfile",
    "SurfacePoint",
    "make_profile",
    "geodesic_shoot",
    "distance_bvp",
    "toponogov_angle_check",
    "polygon_extremal_radii_numeric",
    "verify_surface_polygon",
    # Corpus
    "PolygonGenerator",
    "generate_corpus",
    # Convenience functions
    "measure",
    "verify",
    "round_corners",
]


def measure(polygon: ConvexPolygon, k1: Optional[float] = None) -> dict:
    """
    Measure a polygon: radii, their centers and per-vertex curvatures.

    Args:
        polygon: The polygon
        k1: Band scale for the tanh-weighted vertex curvature; omitted when None

    Returns:
        Dictionary with n, k, r, R, gap, inball, circumball and vertices. Every vertex row
        has a kappaB key; it is None (JSON null) when k1 is not given.
    """
    inball = inradius(polygon)
    circumball = circumradius(polygon)
    curvature = vertex_curvature_A(polygon) if k1 is None else vertex_curvature_B(polygon, k1)
    return {
        "n": polygon.n,
        "k": polygon.k,
        "r": inball.r,
        "R": circumball.R,
        "gap": circumball.R - inball.r,
        "inball": inball.to_dict(),
        "circumball": circumball.to_dict(),
        "vertices": [
            {
                "index": v.index,
                "alpha": v.alpha,
                "l_prev": v.l_prev,
                "l_next": v.l_next,
                "kappaA": v.kappa_a,
                "kappaB": v.kappa_b,
            }
            for v in curvature.vertices
        ],
    }


def verify(
    polygon: ConvexPolygon,
    band: CurvatureBand,
    rho: float,
    variant: Ln2Variant = Ln2Variant.DIMENSIONAL,
    definition: CurvatureDefinition = CurvatureDefinition.A,
) -> BoundsReport:
    """
    Check a polygon against the polygon radius bounds.

    Example:
        >>> from hadamard_radii import ConvexPolygon, CurvatureBand, verify
        >>> verify(ConvexPolygon.regular(6, 0.2), CurvatureBand(1.0, 0.5), 0.5).verdict
        <Verdict.PASS: 'pass'>
    """
    return verify_theorem2(polygon, band, rho, variant, definition)


def round_corners(
    polygon: ConvexPolygon,
    rho: float,
    band: CurvatureBand,
    eps: Iterable[float] = (0.01, 0.001),
    definition: CurvatureDefinition = CurvatureDefinition.A,
) -> dict:
    """
    Round a polygon's corners with arcs of radius rho and report the conditions.

    Returns:
        Dictionary with the serialized arc chain, per-vertex conditions and
        inequality-chain slacks, and one curvature table per parallel distance

    Raises:
        SpanError: If rho cannot span some side
    """
    chain = build_arc_chain(polygon, rho)
    conditions = condition_reports(chain, band.k1)
    chains = curvature_chains(chain, band.k1, definition)
    parallels = []
    for e in eps:
        try:
            parallels.append(parallel_curve(chain, e).curvature_table(band))
        except ConvexityError as err:
            parallels.append({"eps": e, "error": str(err)})
    r_bound = None
    if check_theorem2_hypotheses(polygon, band, rho, definition).global_flag:
        r_bound = arccoth_bounds(band, rho).r_max
    return {
        "n": polygon.n,
        "k": polygon.k,
        "rho": rho,
        "band": band.to_dict(),
        "arcs": chain.to_list(),
        "conditions": [c.to_dict() for c in conditions],
        "chain_slacks": [c.slacks for c in chains],
        "parallel_curves": parallels,
        "r_bound": r_bound,
    }

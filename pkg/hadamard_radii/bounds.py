#!/usr/bin/env python3
"""
Radius Bounds

Closed-form inradius/circumradius bounds for λ-convex curves and polygons in a
surface with -k1² ≤ K ≤ -k2², the hypothesis checks that guard them and the
verifiers that compare them with measured radii.

Bounds:
- thm1_bounds: curves that are k2·coth(k2·ρ)-convex, k2·coth(k2·ρ) ≥ k1
- thm1prime_bounds: curves that are k1·coth(k1·ρ)-convex (no restriction on ρ)
- thm1doubleprime_bounds: k2 = 0, curves that are 1/ρ-convex, 1/ρ ≥ k1
- gap_bound: R - r ≤ c·ln((1+√τ)²/(1+τ)), τ = tanh(k1·r/2)
- verify_theorem2: polygons whose vertex curvatures reach (π/2)·k1·coth(k1·ρ)

The additive circumradius term is c·ln 2. Its prefactor c is 1/k1 under
Ln2Variant.DIMENSIONAL (a length) and k1 under Ln2Variant.AS_WRITTEN; both
values are always reported and the variants agree at k1 = 1.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Dict, NamedTuple, Optional, Tuple

from .entities import (
    CurvatureBand,
    CurvatureDefinition,
    DomainError,
    HypothesisViolationError,
    Ln2Variant,
    Verdict,
)
from .extremal import DEFAULT_OPTIONS, SolverOptions, circumradius, inradius
from .hyperbolic import circle_normal_curvature
from .polygon import ConvexPolygon, HypothesisFlags, check_theorem2_hypotheses

logger = logging.getLogger(__name__)

# arccoth arguments this close to 1 give an unbounded (infinite) radius.
ARCCOTH_GUARD = 1e-12
# A verdict fails when some margin drops below -VERDICT_TOLERANCE.
VERDICT_TOLERANCE = 1e-6


class RadiusBounds(NamedTuple):
    r_max: float
    R_max: float


def arccoth(x: float) -> float:
    """
    Inverse hyperbolic cotangent 0.5·ln((x+1)/(x-1)) for x ≥ 1.

    Returns inf within ARCCOTH_GUARD of 1.

    Raises:
        DomainError: If x < 1 - ARCCOTH_GUARD
    """
    if x < 1.0 - ARCCOTH_GUARD:
        raise DomainError(f"arccoth is undefined for {x} < 1")
    if x - 1.0 <= ARCCOTH_GUARD:
        return math.inf
    return 0.5 * math.log1p(2.0 / (x - 1.0))


def coth(x: float) -> float:
    return 1.0 / math.tanh(x)


def ln2_term(k1: float, variant: Ln2Variant = Ln2Variant.DIMENSIONAL) -> float:
    """The additive c·ln 2 of the circumradius bounds."""
    return variant.prefactor(k1) * math.log(2.0)


def _checked_arccoth(x: float, hypothesis: str) -> float:
    if x < 1.0 - ARCCOTH_GUARD:
        raise HypothesisViolationError(f"hypothesis {hypothesis} fails (ratio {x:.12g} < 1)")
    value = arccoth(x)
    if math.isinf(value):
        logger.warning("hypothesis %s holds with equality; bound is unbounded", hypothesis)
    return value


def thm1_bounds(
    band: CurvatureBand, rho: float, variant: Ln2Variant = Ln2Variant.DIMENSIONAL
) -> RadiusBounds:
    """
    Bounds for a k2·coth(k2·ρ)-convex curve.

    r ≤ (1/k1)·arccoth((k2/k1)·coth(k2·ρ)) and R ≤ that + c·ln 2.

    Raises:
        HypothesisViolationError: If k2·coth(k2·ρ) < k1
    """
    if band.k2 == 0:
        return thm1doubleprime_bounds(band.k1, rho, variant)
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho}")
    k1, k2 = band.k1, band.k2
    r_max = _checked_arccoth(k2 * coth(k2 * rho) / k1, "k2*coth(k2*rho) >= k1") / k1
    return RadiusBounds(r_max, r_max + ln2_term(k1, variant))


def thm1prime_bounds(
    k1: float, rho: float, variant: Ln2Variant = Ln2Variant.DIMENSIONAL
) -> RadiusBounds:
    """Bounds (ρ, ρ + c·ln 2) for a k1·coth(k1·ρ)-convex curve."""
    if not (k1 > 0 and rho > 0):
        raise DomainError(f"k1 and rho must be positive, got k1={k1}, rho={rho}")
    return RadiusBounds(rho, rho + ln2_term(k1, variant))


def thm1doubleprime_bounds(
    k1: float, rho: float, variant: Ln2Variant = Ln2Variant.DIMENSIONAL
) -> RadiusBounds:
    """
    Bounds for a 1/ρ-convex curve when the upper curvature bound is 0.

    r ≤ (1/k1)·arccoth(1/(k1·ρ)) and R ≤ that + c·ln 2.

    Raises:
        HypothesisViolationError: If 1/ρ < k1
    """
    if not (k1 > 0 and rho > 0):
        raise DomainError(f"k1 and rho must be positive, got k1={k1}, rho={rho}")
    r_max = _checked_arccoth(1.0 / (k1 * rho), "1/rho >= k1") / k1
    return RadiusBounds(r_max, r_max + ln2_term(k1, variant))


def arccoth_bounds(
    band: CurvatureBand, rho: float, variant: Ln2Variant = Ln2Variant.DIMENSIONAL
) -> RadiusBounds:
    """thm1_bounds, or thm1doubleprime_bounds when k2 = 0."""
    if band.k2 == 0:
        return thm1doubleprime_bounds(band.k1, rho, variant)
    return thm1_bounds(band, rho, variant)


def gap_bound(k1: float, r: float, variant: Ln2Variant = Ln2Variant.DIMENSIONAL) -> float:
    """
    Bound on R - r for a k1-convex domain with inradius r.

    Returns c·ln((1+√τ)²/(1+τ)) with τ = tanh(k1·r/2); always below c·ln 2.
    """
    if not r >= 0:
        raise DomainError(f"r must be non-negative, got {r}")
    tau = math.tanh(k1 * r / 2.0)
    return variant.prefactor(k1) * math.log((1.0 + math.sqrt(tau)) ** 2 / (1.0 + tau))


def sphere_curvature_range(band: CurvatureBand, r: float) -> Tuple[float, float]:
    """Range (k2·coth(k2·r), k1·coth(k1·r)) of the normal curvature of a geodesic sphere."""
    return circle_normal_curvature(band.k2, r), circle_normal_curvature(band.k1, r)


# ============================================================================
# Verifiers
# ============================================================================


def _verdict(margins: Dict[str, float]) -> Verdict:
    if any(m < -VERDICT_TOLERANCE for m in margins.values()):
        return Verdict.FAIL
    return Verdict.PASS


@dataclass
class CurveBoundsReport:
    """Radii of a smooth λ-convex curve against one of the curve bounds."""

    theorem: str
    r: float
    R: float
    r_bound: float
    R_bound: float
    margins: Dict[str, float] = field(default_factory=dict)
    verdict: Verdict = Verdict.PASS

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "r": self.r,
            "R": self.R,
            "r_bound": self.r_bound,
            "R_bound": self.R_bound,
            "margins": dict(self.margins),
            "verdict": self.verdict.value,
        }


def _curve_report(theorem: str, r: float, R: float, bounds: RadiusBounds) -> CurveBoundsReport:
    margins = {"inradius": bounds.r_max - r, "circumradius": bounds.R_max - R}
    return CurveBoundsReport(theorem, r, R, bounds.r_max, bounds.R_max, margins, _verdict(margins))


def verify_theorem1(
    r: float,
    R: float,
    band: CurvatureBand,
    rho: float,
    variant: Ln2Variant = Ln2Variant.DIMENSIONAL,
) -> CurveBoundsReport:
    """Compare measured radii of a k2·coth(k2·ρ)-convex curve with its bounds."""
    theorem = "1''" if band.k2 == 0 else "1"
    return _curve_report(theorem, r, R, arccoth_bounds(band, rho, variant))


def verify_theorem1prime(
    r: float, R: float, k1: float, rho: float, variant: Ln2Variant = Ln2Variant.DIMENSIONAL
) -> CurveBoundsReport:
    """Compare measured radii of a k1·coth(k1·ρ)-convex curve with (ρ, ρ + c·ln 2)."""
    return _curve_report("1'", r, R, thm1prime_bounds(k1, rho, variant))


@dataclass
class BoundsReport:
    """
    One polygon checked against the polygon radius bounds.

    Attributes:
        n: Vertex count
        k: Model curvature scale
        band: Curvature band
        rho: Radius parameter
        theorem: "2", or "2'" when k2 = 0
        flags: Hypothesis flags
        model_in_band: Whether k2 ≤ k ≤ k1
        r, R: Measured inradius and circumradius
        r_bound: (1/k1)·arccoth((k2/k1)·coth(k2·ρ)), None if the hypotheses make it undefined
        R_bound_dimensional, R_bound_as_written: r_bound + ln 2 term under each variant
        gap_bound: Bound on R - r for the measured r under `variant`
        tau: tanh(k1·r/2)
        margins: bound - measured for every checked inequality
        verdict: PASS, FAIL, or SKIPPED when the hypotheses do not hold
        karcher_slack: ρ - R when k1 = k2
    """

    n: int
    k: float
    band: CurvatureBand
    rho: float
    theorem: str
    flags: HypothesisFlags
    model_in_band: bool
    r: float
    R: float
    r_bound: Optional[float]
    R_bound_dimensional: Optional[float]
    R_bound_as_written: Optional[float]
    gap_bound: float
    tau: float
    variant: Ln2Variant = Ln2Variant.DIMENSIONAL
    margins: Dict[str, float] = field(default_factory=dict)
    verdict: Verdict = Verdict.SKIPPED
    karcher_slack: Optional[float] = None

    @property
    def R_bound(self) -> Optional[float]:
        if self.variant is Ln2Variant.DIMENSIONAL:
            return self.R_bound_dimensional
        return self.R_bound_as_written

    @property
    def min_margin(self) -> float:
        return min(self.margins.values()) if self.margins else math.inf

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "band": self.band.to_dict(),
            "rho": self.rho,
            "theorem": self.theorem,
            "hypotheses": self.flags.to_dict(),
            "model_in_band": self.model_in_band,
            "r": self.r,
            "R": self.R,
            "r_bound": self.r_bound,
            "R_bound_dimensional": self.R_bound_dimensional,
            "R_bound_as_written": self.R_bound_as_written,
            "gap_bound": self.gap_bound,
            "tau": self.tau,
            "variant": self.variant.value,
            "margins": dict(self.margins),
            "verdict": self.verdict.value,
            "karcher_slack": self.karcher_slack,
        }


def verify_theorem2(
    polygon: ConvexPolygon,
    band: CurvatureBand,
    rho: float,
    variant: Ln2Variant = Ln2Variant.DIMENSIONAL,
    definition: CurvatureDefinition = CurvatureDefinition.A,
    options: SolverOptions = DEFAULT_OPTIONS,
) -> BoundsReport:
    """
    Measure r and R of a polygon and check them against the polygon bounds.

    Checked inequalities (margins, bound minus measured):
    - curvature: k1·coth(k1·r) - k2·coth(k2·ρ)
    - inradius: r_bound - r
    - circumradius: R_bound - R under `variant`
    - gap: gap_bound(k1, r) - (R - r)

    Radii are always measured; the verdict is SKIPPED when a hypothesis fails
    or the model curvature lies outside the band.
    """
    flags = check_theorem2_hypotheses(polygon, band, rho, definition)
    model_in_band = band.contains(polygon.k)
    r = inradius(polygon, options).r
    R = circumradius(polygon, options).R
    k1 = band.k1

    r_bound: Optional[float] = None
    if flags.global_flag:
        r_bound = arccoth_bounds(band, rho, variant).r_max
    report = BoundsReport(
        n=polygon.n,
        k=polygon.k,
        band=band,
        rho=rho,
        theorem="2'" if band.k2 == 0 else "2",
        flags=flags,
        model_in_band=model_in_band,
        r=r,
        R=R,
        r_bound=r_bound,
        R_bound_dimensional=None if r_bound is None else r_bound + ln2_term(k1),
        R_bound_as_written=(
            None if r_bound is None else r_bound + ln2_term(k1, Ln2Variant.AS_WRITTEN)
        ),
        gap_bound=gap_bound(k1, r, variant),
        tau=math.tanh(k1 * r / 2.0),
        variant=variant,
        karcher_slack=rho - R if band.degenerate else None,
    )
    if not (flags.passed and model_in_band):
        logger.info("skipping verdict: %s", "; ".join(flags.failed_predicates()) or "k outside band")
        return report

    assert r_bound is not None
    report.margins = {
        "curvature": circle_normal_curvature(k1, r) - circle_normal_curvature(band.k2, rho),
        "inradius": r_bound - r,
        "circumradius": report.R_bound - R,  # type: ignore[operator]
        "gap": report.gap_bound - (R - r),
    }
    report.verdict = _verdict(report.margins)
    if report.verdict is Verdict.FAIL:
        logger.warning("verdict FAIL n=%d k=%g margins=%s", polygon.n, polygon.k, report.margins)
    return report

#!/usr/bin/env python3
"""
Polygon Corpus Generation

Seeded random convex polygons for verification runs.

Each polygon is inscribed in a circle of random radius about the origin of a
model whose curvature scale k is drawn from the band (or fixed), with jittered
vertex directions, then moved by a random isometry. With `hypotheses` on,
only polygons passing the vertex and global hypotheses are kept; rejection
counts are recorded per reason.

Example:
    >>> from hadamard_radii.corpus import GeneratorConfig, PolygonGenerator
    >>> config = GeneratorConfig(k1=1.0, k2=0.5, rho=0.5, size=10, seed=7)
    >>> corpus = PolygonGenerator(config).corpus()
    >>> len(corpus.polygons)
    10
"""

import json
import math
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from .entities import CurvatureBand, CurvatureDefinition, DomainError, HypothesisViolationError
from .hyperbolic import ModelPoint, distance, random_isometry
from .polygon import ConvexPolygon, check_theorem2_hypotheses, global_hypothesis

logger = logging.getLogger(__name__)

# Polygons with a side shorter than this are rejected.
MIN_SIDE = 1e-3


@dataclass
class GeneratorConfig:
    """
    Corpus generation settings.

    Attributes:
        k1, k2: Curvature band
        rho: Radius parameter of the hypotheses
        size: Number of polygons to produce
        seed: Seed of the single random generator
        k: Fixed model curvature scale; drawn uniformly from [k2, k1] when None
        n_range: Inclusive vertex count range
        radius_range: Range of the circumscribing circle radius
        hypotheses: Keep only polygons passing the hypotheses
        definition: Vertex curvature definition for the hypotheses
        isometry: Move each polygon by a random isometry
        max_boost: Largest boost of that isometry
        jitter: Vertex direction jitter as a fraction of 2π/n
        max_attempts_per_polygon: Attempts before giving up on one polygon
    """

    k1: float = 1.0
    k2: float = 0.5
    rho: float = 0.5
    size: int = 100
    seed: int = 0
    k: Optional[float] = None
    n_range: Tuple[int, int] = (3, 8)
    radius_range: Tuple[float, float] = (0.08, 0.28)
    hypotheses: bool = True
    definition: CurvatureDefinition = CurvatureDefinition.A
    isometry: bool = True
    max_boost: float = 1.0
    jitter: float = 0.4
    max_attempts_per_polygon: int = 10_000

    def __post_init__(self) -> None:
        if self.size < 0:
            raise DomainError(f"size must be non-negative, got {self.size}")
        if not self.rho > 0:
            raise DomainError(f"rho must be positive, got {self.rho}")
        lo, hi = self.n_range
        if not 3 <= lo <= hi:
            raise DomainError(f"vertex count range must satisfy 3 <= lo <= hi, got {self.n_range}")
        if not 0 < self.radius_range[0] <= self.radius_range[1]:
            raise DomainError(f"invalid radius range {self.radius_range}")
        if self.k is not None and not self.band.contains(self.k):
            raise DomainError(f"model curvature k={self.k} outside [{self.k2}, {self.k1}]")

    @property
    def band(self) -> CurvatureBand:
        return CurvatureBand(self.k1, self.k2)

    def to_dict(self) -> dict:
        return {
            "k1": self.k1,
            "k2": self.k2,
            "rho": self.rho,
            "size": self.size,
            "seed": self.seed,
            "k": self.k,
            "n_range": list(self.n_range),
            "radius_range": list(self.radius_range),
            "hypotheses": self.hypotheses,
            "definition": self.definition.value,
            "isometry": self.isometry,
        }


@dataclass
class Corpus:
    """Generated polygons plus the rejection counts that produced them."""

    config: GeneratorConfig
    polygons: List[ConvexPolygon] = field(default_factory=list)
    rejections: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "polygons": [p.to_dict() for p in self.polygons],
            "rejections": dict(sorted(self.rejections.items())),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)


class PolygonGenerator:
    """
    Random polygon source driven by one seeded numpy generator.

    Example:
        >>> gen = PolygonGenerator(GeneratorConfig(seed=42, hypotheses=False))
        >>> polygon = gen.polygon()
    """

    def __init__(self, config: GeneratorConfig):
        self.config = config
        self._rng = np.random.default_rng(config.seed)
        self.rejections: Counter = Counter()

    def _model_scale(self) -> float:
        if self.config.k is not None:
            return self.config.k
        return float(self._rng.uniform(self.config.k2, self.config.k1))

    def candidate(self) -> ConvexPolygon:
        """One random inscribed polygon, before any filtering."""
        cfg = self.config
        rng = self._rng
        k = self._model_scale()
        n = int(rng.integers(cfg.n_range[0], cfg.n_range[1] + 1))
        radius = float(rng.uniform(*cfg.radius_range))
        step = 2.0 * math.pi / n
        base = rng.uniform(0.0, 2.0 * math.pi)
        angles = base + step * (np.arange(n) + cfg.jitter * rng.uniform(-0.5, 0.5, n))
        vertices = tuple(ModelPoint.polar(radius, float(a), k) for a in angles)
        polygon = ConvexPolygon(vertices)
        if cfg.isometry:
            polygon = polygon.transformed(random_isometry(rng, cfg.max_boost))
        return polygon

    def _reject_reason(self, polygon: ConvexPolygon) -> Optional[str]:
        v = polygon.vertices
        if min(distance(v[i - 1], v[i]) for i in range(polygon.n)) < MIN_SIDE:
            return "short_side"
        if self.config.hypotheses:
            flags = check_theorem2_hypotheses(
                polygon, self.config.band, self.config.rho, self.config.definition
            )
            if not flags.passed:
                return "hypotheses"
        return None

    def polygon(self) -> ConvexPolygon:
        """
        Draw candidates until one passes the filters.

        Raises:
            HypothesisViolationError: If no candidate passes within the attempt limit
        """
        for _ in range(self.config.max_attempts_per_polygon):
            polygon = self.candidate()
            reason = self._reject_reason(polygon)
            if reason is None:
                return polygon
            self.rejections[reason] += 1
        raise HypothesisViolationError(
            f"no polygon passed the filters in {self.config.max_attempts_per_polygon} attempts "
            f"(rejections: {dict(self.rejections)}); vertex hypothesis kappa >= "
            f"(pi/2)*k1*coth(k1*rho) looks unreachable for radius range {self.config.radius_range}"
        )

    def corpus(self) -> Corpus:
        """
        Generate `size` polygons.

        Raises:
            HypothesisViolationError: If the global hypothesis fails for the band and ρ,
                or the vertex hypothesis is never met
        """
        cfg = self.config
        if cfg.hypotheses and cfg.size > 0 and not global_hypothesis(cfg.band, cfg.rho):
            raise HypothesisViolationError(
                f"k2*coth(k2*rho) >= k1 fails for k1={cfg.k1}, k2={cfg.k2}, rho={cfg.rho}; "
                "choose a smaller rho"
            )
        polygons = [self.polygon() for _ in range(cfg.size)]
        logger.info(
            "generated %d polygons (seed %d), rejections %s", len(polygons), cfg.seed, dict(self.rejections)
        )
        return Corpus(cfg, polygons, dict(self.rejections))


def generate_corpus(config: GeneratorConfig) -> Corpus:
    """Generate a corpus with a fresh generator."""
    return PolygonGenerator(config).corpus()

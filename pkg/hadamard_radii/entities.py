#!/usr/bin/env python3
"""
Shared types and the error hierarchy.

This module defines the curvature band, the enumerations used as configuration
switches across the package and the exceptions every other module raises.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional


class Ln2Variant(Enum):
    """Prefactor of the additive ln 2 term in the circumradius bounds."""

    # (1/k1)·ln 2, a length in the hyperbolic plane of curvature -k1²
    DIMENSIONAL = "dimensional"
    # k1·ln 2, literally as printed in the theorem statements
    AS_WRITTEN = "as-written"

    def prefactor(self, k1: float) -> float:
        """Return the multiplier c in c·ln(...)."""
        return 1.0 / k1 if self is Ln2Variant.DIMENSIONAL else k1


class CurvatureDefinition(Enum):
    """Which vertex curvature feeds the polygon vertex hypothesis."""

    A = "A"  # 2(π-α)/(ℓ1+ℓ2)
    B = "B"  # (π-α)/((1/k1)tanh(k1ℓ1/2)+(1/k1)tanh(k1ℓ2/2))


class Verdict(Enum):
    """Outcome of one verification run."""

    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class CurvatureBand:
    """
    Pinching constants of a surface with -k1² ≤ K ≤ -k2².

    Attributes:
        k1: Scale of the lower curvature bound, k1 > 0
        k2: Scale of the upper curvature bound, 0 ≤ k2 ≤ k1
        strict: Whether the upper bound is strict (-k2² > K)

    Example:
        >>> band = CurvatureBand(k1=1.0, k2=0.5)
        >>> band.contains(0.75)
        True
    """

    k1: float
    k2: float
    strict: bool = False

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k1) and self.k1 > 0):
            raise DomainError(f"k1 must be positive, got {self.k1}")
        if not (math.isfinite(self.k2) and 0 <= self.k2 <= self.k1):
            raise DomainError(f"k2 must satisfy 0 <= k2 <= k1, got k2={self.k2}, k1={self.k1}")

    @property
    def degenerate(self) -> bool:
        """True when k1 = k2, i.e. constant curvature."""
        return self.k1 == self.k2

    def contains(self, k: float, tol: float = 1e-12) -> bool:
        """
        Whether a constant-curvature model of scale k lies inside the band.

        A strict band excludes k = k2.
        """
        if self.strict:
            return self.k2 + tol < k <= self.k1 + tol
        return self.k2 - tol <= k <= self.k1 + tol

    def to_dict(self) -> dict:
        """Convert band to dictionary."""
        return {"k1": self.k1, "k2": self.k2, "strict": self.strict}

    @classmethod
    def from_dict(cls, data: dict) -> "CurvatureBand":
        """Create band from dictionary."""
        return cls(k1=float(data["k1"]), k2=float(data["k2"]), strict=bool(data.get("strict", False)))


# ============================================================================
# Errors
# ============================================================================


class HadamardRadiiError(ValueError):
    """Base class of every error raised by this package."""


class ScaleMismatchError(HadamardRadiiError):
    """Two objects living in models of different curvature were combined."""


class DegenerateInputError(HadamardRadiiError):
    """Coincident points where distinct ones are required."""


class DomainError(HadamardRadiiError):
    """An argument lies outside the domain of the operation."""


class ConvexityError(HadamardRadiiError):
    """A polygon or arc chain is not strictly convex, simple and counterclockwise."""


class SpanError(HadamardRadiiError):
    """An arc of radius rho cannot join the endpoints of a side."""

    def __init__(self, message: str, side: Optional[int] = None):
        super().__init__(message)
        self.side = side


class HypothesisViolationError(HadamardRadiiError):
    """A theorem was evaluated outside its hypotheses."""


class NumericFailureError(HadamardRadiiError):
    """An iterative solver did not converge; `best` carries the best iterate."""

    def __init__(self, message: str, best: Any = None):
        super().__init__(message)
        self.best = best


class IntegrationError(HadamardRadiiError):
    """The geodesic ODE integrator failed (typically step-size underflow)."""


class InputFormatError(HadamardRadiiError):
    """Malformed JSON input; `line` and `offset` locate the problem when known."""

    def __init__(self, message: str, line: Optional[int] = None, offset: Optional[int] = None):
        location = f" (line {line}, offset {offset})" if line is not None else ""
        super().__init__(f"{message}{location}")
        self.line = line
        self.offset = offset

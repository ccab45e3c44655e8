"""Shared fixtures."""

import numpy as np
import pytest

from hadamard_radii import ConvexPolygon, CurvatureBand, GeneratorConfig, generate_corpus


@pytest.fixture
def band():
    """The (k1, k2) = (1, 0.5) band used throughout the examples."""
    return CurvatureBand(1.0, 0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def square():
    """Regular quadrilateral of circumradius 0.25 in curvature -1."""
    return ConvexPolygon.regular(4, 0.25, k=1.0)


@pytest.fixture
def pentagon():
    """Regular pentagon of circumradius 0.2 in curvature -0.64."""
    return ConvexPolygon.regular(5, 0.2, k=0.8, rotation=0.3)


@pytest.fixture(scope="session")
def small_corpus():
    """Twenty hypothesis-passing polygons from the (1, 0.5), rho = 0.5 setup."""
    return generate_corpus(GeneratorConfig(k1=1.0, k2=0.5, rho=0.5, size=20, seed=11)).polygons

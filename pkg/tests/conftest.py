"""
Shared fixtures for the workbench tests
"""
import numpy as np
import pytest

from src.analysis.report import GridSpec
from src.calculus.finite_difference import FdScheme
from src.families.surface_families import (
    build_c21_slant_surface,
    build_c21_surface,
    build_ch21_lift,
    build_cp21_lift,
    build_geodesic_plane,
)

# Points inside [-1, 1]^2 used by the pointwise tests
SAMPLE_POINTS = [(0.0, 0.0), (0.35, -0.6), (-0.8, 0.45), (0.9, 0.9)]
SMALL_GRID = "-1:1:4,-1:1:4"


@pytest.fixture
def scheme():
    return FdScheme()


@pytest.fixture
def small_grid(scheme):
    return GridSpec.parse(SMALL_GRID, scheme)


@pytest.fixture
def rng():
    return np.random.default_rng(20240521)


@pytest.fixture
def plane():
    return build_geodesic_plane()


@pytest.fixture
def c21_surface():
    return build_c21_surface("0.3*sin(y)", "y^2")


@pytest.fixture
def slant_surface():
    return build_c21_slant_surface(0.7, "sin(y)")


@pytest.fixture
def cp21_lift():
    return build_cp21_lift(1.0)


@pytest.fixture
def ch21_lift():
    return build_ch21_lift(1.0)


def random_vector(rng, n):
    return rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)

import numpy as np
import pytest

from pcmeff.matrix import (
    PairwiseComparisonMatrix,
    WeightVector,
    parse_matrix,
    principal_eigenvector,
)

# 4x4 judgment matrix whose principal eigenvector is inefficient; the
# workhorse fixture for the whole suite (also bundled as a UI preset).
DEMO_CSV = "1,1,4,9\n1,1,7,5\n1/4,1/7,1,4\n1/9,1/5,1/4,1\n"

# Published reference values for the demo matrix (checked at 1e-5 / 1e-4).
DEMO_EIGENVECTOR = (0.404518, 0.436173, 0.110295, 0.049014)
DEMO_LP_OPTIMUM = -0.226
DEMO_DOMINATOR_ANCHORED = (0.436173, 0.436173, 0.110295, 0.049014)
# Ordered pairs (1-based) whose ratio overshoots the matrix entry.
DEMO_OVERSHOOT_1BASED = ((2, 1), (2, 4), (3, 1), (3, 2), (4, 1), (4, 3))


def powers_matrix(base: float, n: int = 4) -> PairwiseComparisonMatrix:
    return PairwiseComparisonMatrix(
        np.array([[base ** (j - i) for j in range(n)] for i in range(n)])
    )


def powers_weights(base: float, n: int = 4) -> WeightVector:
    return WeightVector(np.array([base ** (n + 1 - (i + 1)) for i in range(n)]))


@pytest.fixture(scope="session")
def demo_matrix() -> PairwiseComparisonMatrix:
    return parse_matrix(DEMO_CSV, "csv")


@pytest.fixture(scope="session")
def demo_eigen(demo_matrix):
    return principal_eigenvector(demo_matrix)


@pytest.fixture(scope="session")
def ones3() -> PairwiseComparisonMatrix:
    return PairwiseComparisonMatrix(np.ones((3, 3)))


@pytest.fixture(scope="session")
def consistent_pair():
    """Consistent powers-of-two matrix with its generating weights."""
    return powers_matrix(2.0), WeightVector(np.array([8.0, 4.0, 2.0, 1.0]))


@pytest.fixture(scope="session")
def tournament_pair():
    """Consistent powers-of-two matrix with powers-of-three weights: the
    canonical strongly inefficient pair (every ratio overshoots)."""
    return powers_matrix(2.0), powers_weights(3.0)

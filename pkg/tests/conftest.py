from pathlib import Path

import numpy as np
import pytest

import bifold
from bifold.joint import JointProblem, ScalingParams

DATA_DIR = Path(__file__).resolve().parents[1] / "data"
SW_PATH = DATA_DIR / "southern_women.csv"

# canonical Davis split of the 18 women into two social groups
SW_GROUP1 = list(range(9))
SW_GROUP2 = list(range(9, 18))


@pytest.fixture(scope="session")
def sw_dataset():
    return bifold.load(SW_PATH)


def random_problem(rng, size, zero_weight_frac=0.2):
    """Random symmetric joint problem with some zero weights."""
    m = size // 2
    n = size - m
    delta = rng.uniform(0.1, 2.0, (size, size))
    delta = (delta + delta.T) / 2
    weight = rng.uniform(0.1, 3.0, (size, size))
    weight[rng.random((size, size)) < zero_weight_frac] = 0.0
    weight = (weight + weight.T) / 2
    weight = np.where((weight > 0) & (weight.T > 0), weight, 0.0)
    np.fill_diagonal(delta, 0.0)
    np.fill_diagonal(weight, 0.0)
    # make sure the weight graph is connected: chain backbone
    for k in range(size - 1):
        if weight[k, k + 1] == 0:
            weight[k, k + 1] = weight[k + 1, k] = 1.0
    return JointProblem(
        delta, weight, m, n, bifold.EstimatorKind.BERNOULLI_UNIFORM, ScalingParams()
    )


def brute_stress(problem, coords):
    """Independent double-loop stress summation (oracle)."""
    total = 0.0
    size = problem.size
    for k in range(size):
        for l in range(k + 1, size):
            d = float(np.linalg.norm(coords[k] - coords[l]))
            total += problem.weight[k, l] * (d - problem.delta[k, l]) ** 2
    return total


def procrustes_rmse(a, b):
    """Residual RMSE after optimal translation + rotation/reflection."""
    a = a - a.mean(axis=0)
    b = b - b.mean(axis=0)
    u, _, vt = np.linalg.svd(b.T @ a)
    rot = u @ vt
    return float(np.sqrt(np.mean((a - b @ rot) ** 2)))

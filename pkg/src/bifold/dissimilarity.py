"""Within-class and cross-class dissimilarities and weights.

Three families are provided:

* Bernoulli (voting data): the disagreement rate between two objects is
  treated as an unknown Bernoulli proportion, estimated from pairwise
  complete observations by a Bayesian posterior mean with uniform or
  Jeffreys prior, or by the plain maximum-likelihood rate. Weights are
  inverse estimated variances; cross-class weights use the pooled
  positive rate.
* Membership (association data): Jaccard distance within class, weighted
  by shared-membership counts; cross-class weight 1 exactly on
  associations.
* Raw Hamming: unnormalized disagreement counts with unit weights, the
  classic preset for small complete tables.

Missing cells never enter any count: within-class statistics are
restricted to positions observed in both objects, and missing
cross-class cells get zero weight.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .dataset import BinaryRelationMatrix, CellValue, ObjectClass
from .errors import DataError, NoCommonObservations, PreconditionError


class EstimatorKind(str, enum.Enum):
    BERNOULLI_UNIFORM = "bernoulli-uniform"
    BERNOULLI_JEFFREYS = "bernoulli-jeffreys"
    BERNOULLI_MLE = "bernoulli-mle"
    MEMBERSHIP = "membership"
    RAW_HAMMING = "raw-hamming"


_BERNOULLI_KINDS = (
    EstimatorKind.BERNOULLI_UNIFORM,
    EstimatorKind.BERNOULLI_JEFFREYS,
    EstimatorKind.BERNOULLI_MLE,
)


@dataclass(frozen=True)
class PairStats:
    """Disagreement count over commonly-observed positions."""

    s: int
    n: int

    def __post_init__(self):
        if not 0 <= self.s <= self.n:
            raise ValueError(f"need 0 <= s <= n, got s={self.s}, n={self.n}")


@dataclass(frozen=True)
class BlockResult:
    """One block of the joint problem: dissimilarities plus weights."""

    delta: np.ndarray
    weight: np.ndarray

    def __post_init__(self):
        delta = np.asarray(self.delta, dtype=float)
        weight = np.asarray(self.weight, dtype=float)
        if delta.shape != weight.shape:
            raise DataError("delta/weight shape mismatch", code="DIMENSION_MISMATCH")
        if not (np.isfinite(delta).all() and np.isfinite(weight).all()):
            raise DataError("non-finite block entries", code="NON_FINITE")
        if (delta < 0).any() or (weight < 0).any():
            raise DataError("negative block entries", code="NEGATIVE_ENTRY")
        delta.setflags(write=False)
        weight.setflags(write=False)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "weight", weight)


def _class_vectors(matrix: BinaryRelationMatrix, obj_class: ObjectClass) -> np.ndarray:
    cells = matrix.cells
    return cells if obj_class is ObjectClass.ROW else cells.T


def pair_stats(
    matrix: BinaryRelationMatrix, obj_class: ObjectClass, i: int, j: int
) -> PairStats:
    """Disagreements and common observations between two same-class objects."""
    if i == j:
        raise ValueError("pair_stats is undefined on the diagonal")
    vecs = _class_vectors(matrix, obj_class)
    a, b = vecs[i], vecs[j]
    both = (a != -1) & (b != -1)
    return PairStats(int(np.sum(a[both] != b[both])), int(np.sum(both)))


def pooled_rate(matrix: BinaryRelationMatrix) -> float:
    """Overall positive rate across observed cells."""
    observed = matrix.observed
    total = int(observed.sum())
    if total == 0:
        raise DataError("all cells missing; pooled rate undefined", code="ALL_MISSING")
    return float((matrix.cells == 1).sum() / total)


def _clamped_rate(p_bar: float, m: int, n: int) -> float:
    # keeps cross weights finite for all-yes / all-no datasets
    lo = 1.0 / (2 * m * n)
    return min(max(p_bar, lo), 1.0 - lo)


def bernoulli_within(stats: PairStats, kind: EstimatorKind) -> tuple[float, float]:
    """Within-class (delta, weight) from Table-1 style proportion estimators."""
    if kind not in _BERNOULLI_KINDS:
        raise ValueError(f"not a Bernoulli estimator: {kind}")
    s, n = stats.s, stats.n
    if n == 0:
        raise NoCommonObservations("no commonly-observed positions for this pair")
    if kind is EstimatorKind.BERNOULLI_UNIFORM:
        delta = (s + 1.0) / (n + 2.0)
        weight = n / (delta * (1.0 - delta))
    elif kind is EstimatorKind.BERNOULLI_JEFFREYS:
        delta = (s + 0.5) / (n + 1.0)
        weight = n / (delta * (1.0 - delta))
    else:  # MLE with smoothed variance, finite even at s=0 or s=n
        delta = s / n
        weight = (n + 1.0) ** 2 * n / ((s + 0.5) * (n - s + 0.5))
    return delta, weight


def bernoulli_cross(
    b: CellValue, p_bar: float, kind: EstimatorKind
) -> tuple[float, float]:
    """Cross-class (delta, weight) for one cell given the pooled rate."""
    if kind not in _BERNOULLI_KINDS:
        raise ValueError(f"not a Bernoulli estimator: {kind}")
    if b is CellValue.MISSING:
        return 0.0, 0.0
    if not 0.0 < p_bar < 1.0:
        raise DataError(
            f"pooled rate {p_bar} is degenerate", code="DEGENERATE_POOLED_RATE"
        )
    bv = float(b.value)
    if kind is EstimatorKind.BERNOULLI_UNIFORM:
        delta = (2.0 - bv) / 3.0
    elif kind is EstimatorKind.BERNOULLI_JEFFREYS:
        delta = (1.5 - bv) / 2.0
    else:
        delta = 1.0 - bv
    return delta, 1.0 / (p_bar * (1.0 - p_bar))


def jaccard_within(
    matrix: BinaryRelationMatrix, obj_class: ObjectClass, i: int, j: int
) -> tuple[float, float]:
    """Jaccard distance and shared-membership weight; missing counts as absent."""
    if i == j:
        raise ValueError("jaccard_within is undefined on the diagonal")
    vecs = _class_vectors(matrix, obj_class)
    a, b = vecs[i] == 1, vecs[j] == 1
    inter = int(np.sum(a & b))
    union = int(np.sum(a | b))
    if union == 0:
        return 1.0, 0.0
    return 1.0 - inter / union, float(inter)


def membership_cross(b: CellValue, paper_literal: bool = False) -> tuple[float, float]:
    """Cross-class (delta, weight) for association data; weight 1 on links.

    ``paper_literal`` switches to weight = 1 - b, which zeroes exactly the
    informative cells; kept only for comparison.
    """
    bv = 0.0 if b is CellValue.MISSING else float(b.value)
    weight = (1.0 - bv) if paper_literal else bv
    return 1.0 - bv, weight


def _within_counts(vecs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pairwise (s, n) matrices over commonly-observed positions."""
    observed = vecs != -1
    ones = ((vecs == 1) & observed).astype(float)
    zeros = ((vecs == 0) & observed).astype(float)
    s = ones @ zeros.T + zeros @ ones.T
    n = observed.astype(float) @ observed.astype(float).T
    return s, n


def _bernoulli_within_block(vecs: np.ndarray, kind: EstimatorKind) -> BlockResult:
    s, n = _within_counts(vecs)
    ok = n > 0
    np.fill_diagonal(ok, False)
    delta = np.zeros_like(s)
    weight = np.zeros_like(s)
    with np.errstate(divide="ignore", invalid="ignore"):
        if kind is EstimatorKind.BERNOULLI_UNIFORM:
            d = (s + 1.0) / (n + 2.0)
            w = n / (d * (1.0 - d))
        elif kind is EstimatorKind.BERNOULLI_JEFFREYS:
            d = (s + 0.5) / (n + 1.0)
            w = n / (d * (1.0 - d))
        else:
            d = np.where(ok, s / np.where(n > 0, n, 1.0), 0.0)
            w = (n + 1.0) ** 2 * n / ((s + 0.5) * (n - s + 0.5))
    delta[ok] = d[ok]
    weight[ok] = w[ok]
    return BlockResult(delta, weight)


def bernoulli_blocks(
    matrix: BinaryRelationMatrix, kind: EstimatorKind
) -> tuple[BlockResult, BlockResult, BlockResult]:
    """All three blocks for the Bernoulli method (within-x, within-y, cross)."""
    if kind not in _BERNOULLI_KINDS:
        raise ValueError(f"not a Bernoulli estimator: {kind}")
    within_x = _bernoulli_within_block(matrix.cells, kind)
    within_y = _bernoulli_within_block(matrix.cells.T, kind)

    p_bar = _clamped_rate(pooled_rate(matrix), matrix.m, matrix.n)
    cells = matrix.cells
    observed = matrix.observed
    bv = np.where(observed, cells, 0).astype(float)
    if kind is EstimatorKind.BERNOULLI_UNIFORM:
        delta = (2.0 - bv) / 3.0
    elif kind is EstimatorKind.BERNOULLI_JEFFREYS:
        delta = (1.5 - bv) / 2.0
    else:
        delta = 1.0 - bv
    delta = np.where(observed, delta, 0.0)  # arbitrary finite constant, fixed at 0
    weight = np.where(observed, 1.0 / (p_bar * (1.0 - p_bar)), 0.0)
    return within_x, within_y, BlockResult(delta, weight)


def _jaccard_block(vecs: np.ndarray) -> BlockResult:
    ones = (vecs == 1).astype(float)
    inter = ones @ ones.T
    sizes = ones.sum(axis=1)
    union = sizes[:, None] + sizes[None, :] - inter
    with np.errstate(divide="ignore", invalid="ignore"):
        delta = np.where(union > 0, 1.0 - inter / np.where(union > 0, union, 1.0), 1.0)
    weight = inter.copy()
    np.fill_diagonal(delta, 0.0)
    np.fill_diagonal(weight, 0.0)
    return BlockResult(delta, weight)


def membership_blocks(
    matrix: BinaryRelationMatrix, paper_literal: bool = False
) -> tuple[BlockResult, BlockResult, BlockResult]:
    """All three blocks for the membership (Jaccard) method."""
    within_x = _jaccard_block(matrix.cells)
    within_y = _jaccard_block(matrix.cells.T)
    bv = (matrix.cells == 1).astype(float)
    delta = 1.0 - bv
    weight = (1.0 - bv) if paper_literal else bv.copy()
    return within_x, within_y, BlockResult(delta, weight)


def raw_hamming_blocks(
    matrix: BinaryRelationMatrix,
) -> tuple[BlockResult, BlockResult, BlockResult]:
    """Unnormalized Hamming counts within class, 1-b cross, unit weights.

    Defined only for complete data.
    """
    if not matrix.observed.all():
        raise PreconditionError(
            "raw Hamming preset requires complete data",
            code="PRESET_REQUIRES_COMPLETE_DATA",
        )

    def block(vecs: np.ndarray) -> BlockResult:
        ones = (vecs == 1).astype(float)
        zeros = (vecs == 0).astype(float)
        delta = ones @ zeros.T + zeros @ ones.T
        weight = np.ones_like(delta)
        np.fill_diagonal(weight, 0.0)
        return BlockResult(delta, weight)

    cross_delta = 1.0 - matrix.cells.astype(float)
    cross_weight = np.ones_like(cross_delta)
    return (
        block(matrix.cells),
        block(matrix.cells.T),
        BlockResult(cross_delta, cross_weight),
    )


def compute_blocks(
    matrix: BinaryRelationMatrix,
    kind: EstimatorKind,
    *,
    paper_literal_membership_weights: bool = False,
) -> tuple[BlockResult, BlockResult, BlockResult]:
    """Dispatch to the selected method's block computation."""
    if kind in _BERNOULLI_KINDS:
        return bernoulli_blocks(matrix, kind)
    if kind is EstimatorKind.MEMBERSHIP:
        return membership_blocks(matrix, paper_literal_membership_weights)
    if kind is EstimatorKind.RAW_HAMMING:
        return raw_hamming_blocks(matrix)
    raise ValueError(f"unknown estimator kind: {kind}")

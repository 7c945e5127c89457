"""Assembly of the (m+n) x (m+n) joint dissimilarity and weight matrices.

The joint matrix stacks the within-row block (scaled by alpha_x), the
within-column block (alpha_y) and the cross block (alpha_xy, shifted by
beta). Weights are copied unscaled; the relative emphasis between blocks
is controlled only through the alphas on the dissimilarities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .dissimilarity import BlockResult, EstimatorKind, compute_blocks
from .errors import DataError


@dataclass(frozen=True)
class ScalingParams:
    alpha_x: float = 1.0
    alpha_y: float = 1.0
    alpha_xy: float = 1.0
    beta: float = 0.0

    def __post_init__(self):
        for name in ("alpha_x", "alpha_y", "alpha_xy"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DataError(f"{name} must be a positive real, got {v}", code="BAD_PARAM")
        if not (np.isfinite(self.beta) and self.beta >= 0):
            raise DataError(f"beta must be a finite real >= 0, got {self.beta}", code="BAD_PARAM")


@dataclass(frozen=True)
class JointProblem:
    delta: np.ndarray
    weight: np.ndarray
    m: int
    n: int
    method: EstimatorKind
    params: ScalingParams

    def __post_init__(self):
        size = self.m + self.n
        for name, mat in (("delta", self.delta), ("weight", self.weight)):
            mat = np.asarray(mat, dtype=float)
            if mat.shape != (size, size):
                raise DataError(f"{name} must be {size}x{size}", code="DIMENSION_MISMATCH")
            if not np.isfinite(mat).all():
                raise DataError(f"non-finite entries in {name}", code="NON_FINITE")
            if (mat < 0).any():
                raise DataError(f"negative entries in {name}", code="NEGATIVE_ENTRY")
            if not np.array_equal(mat, mat.T):
                raise DataError(f"{name} must be symmetric", code="ASYMMETRIC")
            if np.diagonal(mat).any():
                raise DataError(f"{name} must have a zero diagonal", code="NONZERO_DIAGONAL")
            mat = mat.copy()
            mat.setflags(write=False)
            object.__setattr__(self, name, mat)

    @property
    def size(self) -> int:
        return self.m + self.n


def default_params(kind: EstimatorKind, m: int, n: int) -> ScalingParams:
    """Method defaults: raw Hamming rescales counts to commensurate ranges."""
    if kind is EstimatorKind.RAW_HAMMING:
        return ScalingParams(alpha_x=1.0 / n, alpha_y=1.0 / m, alpha_xy=1.0, beta=0.0)
    return ScalingParams()


def assemble(
    within_x: BlockResult,
    within_y: BlockResult,
    cross: BlockResult,
    params: ScalingParams,
    method: EstimatorKind,
) -> JointProblem:
    """Stack scaled blocks into the joint problem.

    beta is added only to positively-weighted cross entries; adding it at
    zero-weight cells would be inert for the stress but misleading in
    reports.
    """
    m = within_x.delta.shape[0]
    n = within_y.delta.shape[0]
    if within_x.delta.shape != (m, m) or within_y.delta.shape != (n, n):
        raise DataError("within-class blocks must be square", code="DIMENSION_MISMATCH")
    if cross.delta.shape != (m, n):
        raise DataError(
            f"cross block must be {m}x{n}, got {cross.delta.shape}",
            code="DIMENSION_MISMATCH",
        )
    cross_delta = params.alpha_xy * cross.delta + np.where(cross.weight > 0, params.beta, 0.0)

    size = m + n
    delta = np.zeros((size, size))
    weight = np.zeros((size, size))
    delta[:m, :m] = params.alpha_x * within_x.delta
    delta[m:, m:] = params.alpha_y * within_y.delta
    delta[:m, m:] = cross_delta
    delta[m:, :m] = cross_delta.T
    weight[:m, :m] = within_x.weight
    weight[m:, m:] = within_y.weight
    weight[:m, m:] = cross.weight
    weight[m:, :m] = cross.weight.T
    np.fill_diagonal(delta, 0.0)
    np.fill_diagonal(weight, 0.0)
    return JointProblem(delta, weight, m, n, method, params)


def build_joint(
    dataset: Dataset,
    method: EstimatorKind,
    params: ScalingParams | None = None,
    *,
    paper_literal_membership_weights: bool = False,
) -> JointProblem:
    """Compute blocks for a dataset and assemble the joint problem."""
    if params is None:
        params = default_params(method, dataset.m, dataset.n)
    within_x, within_y, cross = compute_blocks(
        dataset.matrix, method,
        paper_literal_membership_weights=paper_literal_membership_weights,
    )
    return assemble(within_x, within_y, cross, params, method)

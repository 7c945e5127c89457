"""Weighted stress minimization by SMACOF with a classical MDS start.

The stress of a configuration Z is the weighted sum over unordered pairs
of squared gaps between embedded distances and target dissimilarities.
Each SMACOF iteration applies the weighted Guttman transform, which
majorization guarantees never increases the stress. The starting
configuration is the classical (double-centering) MDS solution of the
joint dissimilarity matrix, and the final configuration is aligned so
the first axis is the principal direction.

Degenerate weight graphs (possible with sparse membership weights) are
handled by embedding each connected component independently and laying
the components out along the first axis.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import pdist, squareform

from .dataset import Dataset
from .dissimilarity import EstimatorKind
from .errors import DataError, NumericError
from .joint import JointProblem, ScalingParams, build_joint, default_params

_RESTART_SEED = 1931  # fixed so restart runs are reproducible


@dataclass(frozen=True)
class EmbeddingConfig:
    dim: int = 2
    max_iter: int = 500
    rel_tol: float = 1e-6
    restarts: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise DataError(f"dim must be >= 1, got {self.dim}", code="BAD_PARAM")
        if self.max_iter < 1:
            raise DataError(f"max_iter must be >= 1, got {self.max_iter}", code="BAD_PARAM")
        if not self.rel_tol > 0:
            raise DataError(f"rel_tol must be > 0, got {self.rel_tol}", code="BAD_PARAM")
        if self.restarts < 0:
            raise DataError(f"restarts must be >= 0, got {self.restarts}", code="BAD_PARAM")


@dataclass(frozen=True)
class EmbeddingResult:
    coords: np.ndarray
    stress: float
    stress_trace: tuple[float, ...]
    iterations: int
    converged: bool
    disconnected: bool = False


@dataclass(frozen=True)
class SweepResult:
    dims: tuple[int, ...]
    stresses: tuple[float, ...]
    normalized_stresses: tuple[float, ...]
    results: tuple[EmbeddingResult, ...]


def stress(problem: JointProblem, coords: np.ndarray) -> float:
    """Weighted stress, each unordered pair counted once."""
    coords = np.asarray(coords, dtype=float)
    if coords.shape[0] != problem.size:
        raise DataError("configuration size does not match problem", code="DIMENSION_MISMATCH")
    if not np.isfinite(coords).all():
        raise NumericError("non-finite coordinates")
    d = pdist(coords)
    iu = np.triu_indices(problem.size, k=1)
    w = problem.weight[iu]
    delta = problem.delta[iu]
    return float(np.sum(w * (d - delta) ** 2))


def _canonical_delta(problem: JointProblem) -> JointProblem:
    """Zero out dissimilarities at zero-weight cells.

    Those entries never contribute to the stress, so canonicalizing them
    makes the whole pipeline (including the unweighted MDS start)
    independent of whatever placeholder value they carry.
    """
    delta = np.where(problem.weight > 0, problem.delta, 0.0)
    np.fill_diagonal(delta, 0.0)
    return replace(problem, delta=delta)


def classical_mds_init(problem: JointProblem, dim: int) -> np.ndarray:
    """Classical MDS of the (unweighted) joint dissimilarity matrix.

    Eigenvectors of the double-centered squared dissimilarities, scaled
    by root eigenvalues; dimensions beyond the positive spectrum are
    zero-padded.
    """
    if dim < 1:
        raise DataError(f"dim must be >= 1, got {dim}", code="BAD_PARAM")
    delta = problem.delta
    size = problem.size
    sq = delta**2
    # double centering without forming J explicitly
    row_means = sq.mean(axis=1, keepdims=True)
    b = -0.5 * (sq - row_means - row_means.T + sq.mean())
    try:
        evals, evecs = np.linalg.eigh(b)
    except np.linalg.LinAlgError as e:
        raise NumericError(f"eigendecomposition failed: {e}") from e
    order = np.argsort(evals)[::-1]
    evals, evecs = evals[order], evecs[:, order]
    coords = np.zeros((size, dim))
    k = min(dim, int(np.sum(evals > 0)))
    if k > 0:
        coords[:, :k] = evecs[:, :k] * np.sqrt(evals[:k])
    return coords


def _guttman_iterations(
    delta: np.ndarray,
    weight: np.ndarray,
    init: np.ndarray,
    max_iter: int,
    rel_tol: float,
) -> tuple[np.ndarray, list[float], bool]:
    """SMACOF on a connected weight graph; returns coords, trace, converged."""
    size = len(delta)
    iu = np.triu_indices(size, k=1)
    w_flat = weight[iu]
    d_flat = delta[iu]

    def stress_of(z):
        return float(np.sum(w_flat * (pdist(z) - d_flat) ** 2))

    v = np.diag(weight.sum(axis=1)) - weight
    # V is singular (constant vectors in its kernel); shifting by the
    # rank-one centering term gives an SPD system equivalent to V+ on
    # centered configurations.
    m_sys = v + np.ones((size, size)) / size
    try:
        chol = scipy.linalg.cho_factor(m_sys)
    except scipy.linalg.LinAlgError as e:
        raise NumericError(f"weight Laplacian factorization failed: {e}") from e

    z = init - init.mean(axis=0)
    trace = [stress_of(z)]
    converged = False
    scale = max(float(delta.max()), np.finfo(float).tiny)
    for _ in range(max_iter):
        dist = squareform(pdist(z))
        # coincident (and numerically near-coincident) pairs contribute
        # nothing to B; exact zeros alone would let 1e-16 separations blow
        # up the update
        eps = 1e-10 * max(float(dist.max()), scale)
        pos = dist > eps
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(pos, delta / np.where(pos, dist, 1.0), 0.0)
        b = -weight * ratio
        np.fill_diagonal(b, 0.0)
        np.fill_diagonal(b, -b.sum(axis=1))
        z = scipy.linalg.cho_solve(chol, b @ z)
        z -= z.mean(axis=0)
        s = stress_of(z)
        trace.append(s)
        prev = trace[-2]
        if (prev - s) <= rel_tol * max(prev, np.finfo(float).tiny):
            converged = True
            break
    return z, trace, converged


def smacof(
    problem: JointProblem, init: np.ndarray, cfg: EmbeddingConfig
) -> EmbeddingResult:
    """Minimize the weighted stress from a given start.

    If the weight graph is disconnected, components are embedded
    independently and placed with their centroids at unit gaps along the
    first axis; the result carries a ``disconnected`` diagnostic.
    """
    init = np.asarray(init, dtype=float)
    if init.shape != (problem.size, cfg.dim):
        raise DataError(
            f"init must be {problem.size}x{cfg.dim}, got {init.shape}",
            code="DIMENSION_MISMATCH",
        )
    graph = scipy.sparse.csr_matrix(problem.weight > 0)
    n_comp, labels = connected_components(graph, directed=False)
    if n_comp == 1:
        coords, trace, converged = _guttman_iterations(
            problem.delta, problem.weight, init, cfg.max_iter, cfg.rel_tol
        )
        return EmbeddingResult(
            coords, trace[-1], tuple(trace), len(trace) - 1, converged
        )

    coords = np.zeros_like(init)
    traces: list[list[float]] = []
    all_converged = True
    for c in range(n_comp):
        members = np.flatnonzero(labels == c)
        offset = np.zeros(cfg.dim)
        offset[0] = float(c)
        if len(members) == 1:
            coords[members[0]] = offset
            traces.append([0.0])
            continue
        sub = np.ix_(members, members)
        z, trace, converged = _guttman_iterations(
            problem.delta[sub], problem.weight[sub], init[members], cfg.max_iter, cfg.rel_tol
        )
        coords[members] = z - z.mean(axis=0) + offset
        traces.append(trace)
        all_converged = all_converged and converged
    length = max(len(t) for t in traces)
    padded = [t + [t[-1]] * (length - len(t)) for t in traces]
    trace = [float(sum(vals)) for vals in zip(*padded)]
    return EmbeddingResult(
        coords, trace[-1], tuple(trace), length - 1, all_converged, disconnected=True
    )


def pca_align(coords: np.ndarray) -> np.ndarray:
    """Center and rotate so axes are principal directions, variance-sorted.

    The sign of each axis is fixed so its largest-magnitude coordinate is
    positive; stress is invariant under this rigid motion.
    """
    coords = np.asarray(coords, dtype=float)
    if coords.shape[0] < 2:
        raise DataError("alignment needs at least 2 points", code="TOO_FEW_POINTS")
    centered = coords - coords.mean(axis=0)
    cov = centered.T @ centered
    evals, evecs = np.linalg.eigh(cov)
    evecs = evecs[:, np.argsort(evals)[::-1]]
    aligned = centered @ evecs
    for axis in range(aligned.shape[1]):
        col = aligned[:, axis]
        if len(col) and col[np.argmax(np.abs(col))] < 0:
            aligned[:, axis] = -col
    return aligned


def embed_problem(problem: JointProblem, cfg: EmbeddingConfig | None = None) -> EmbeddingResult:
    """MDS init, SMACOF (best of 1 + restarts) and alignment for a joint problem.

    The problem's dissimilarities are canonicalized to zero wherever the
    weight is zero, so placeholder values at weightless cells cannot
    influence any output bit.
    """
    cfg = cfg or EmbeddingConfig()
    problem = _canonical_delta(problem)
    init = classical_mds_init(problem, cfg.dim)
    best = smacof(problem, init, cfg)
    if cfg.restarts > 0:
        rng = np.random.default_rng(_RESTART_SEED)
        spread = np.abs(init).max()
        # perturbations comparable to the configuration spread, so restarts
        # can reach different point orderings rather than only refining
        scale = spread if spread > 0 else 1.0
        for _ in range(cfg.restarts):
            perturbed = init + rng.normal(scale=scale, size=init.shape)
            candidate = smacof(problem, perturbed, cfg)
            if candidate.stress < best.stress:
                best = candidate
    return replace(best, coords=pca_align(best.coords))


def embed(
    dataset: Dataset,
    method: EstimatorKind,
    params: ScalingParams | None = None,
    cfg: EmbeddingConfig | None = None,
    *,
    paper_literal_membership_weights: bool = False,
) -> EmbeddingResult:
    """Full pipeline: dissimilarities, joint assembly, then ``embed_problem``.

    With restarts > 0, additional runs start from deterministic random
    perturbations of the MDS init and the lowest-stress run wins.
    """
    problem = build_joint(
        dataset, method, params,
        paper_literal_membership_weights=paper_literal_membership_weights,
    )
    return embed_problem(problem, cfg)


def _max_workers(n_tasks: int) -> int:
    env = os.environ.get("BIFOLD_THREADS")
    if env:
        try:
            cap = max(1, int(env))
        except ValueError:
            cap = 1
        return min(cap, n_tasks)
    return min(n_tasks, os.cpu_count() or 1)


def sweep(
    dataset: Dataset,
    method: EstimatorKind,
    params: ScalingParams | None = None,
    cfg: EmbeddingConfig | None = None,
    dims: list[int] | tuple[int, ...] = (1, 2, 3, 4, 5, 6),
    *,
    paper_literal_membership_weights: bool = False,
) -> SweepResult:
    """Embed once per dimension; reports raw and normalized final stresses.

    The normalizer is the weighted sum of squared dissimilarities, so
    normalized stresses are comparable across datasets and methods.
    """
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DataError("dims must be a non-empty list of integers >= 1", code="BAD_PARAM")
    cfg = cfg or EmbeddingConfig()
    problem = _canonical_delta(
        build_joint(
            dataset, method, params,
            paper_literal_membership_weights=paper_literal_membership_weights,
        )
    )
    iu = np.triu_indices(problem.size, k=1)
    norm = float(np.sum(problem.weight[iu] * problem.delta[iu] ** 2))

    def run(d: int) -> EmbeddingResult:
        return embed(
            dataset, method, params, replace(cfg, dim=d),
            paper_literal_membership_weights=paper_literal_membership_weights,
        )

    with ThreadPoolExecutor(max_workers=_max_workers(len(dims))) as pool:
        results = tuple(pool.map(run, dims))
    stresses = tuple(r.stress for r in results)
    normalized = tuple(s / norm if norm > 0 else 0.0 for s in stresses)
    return SweepResult(dims, stresses, normalized, results)

import numpy as np
import pytest

import bifold
from bifold import EmbeddingConfig, EstimatorKind, JointProblem, ScalingParams
from bifold.dataset import from_arrays
from bifold.embedding import classical_mds_init, pca_align, smacof, stress, sweep

from conftest import brute_stress, procrustes_rmse, random_problem

U = EstimatorKind.BERNOULLI_UNIFORM


def problem_from_matrices(delta, weight, m=None):
    size = len(delta)
    m = m if m is not None else size // 2
    return JointProblem(
        np.asarray(delta, float), np.asarray(weight, float),
        m, size - m, U, ScalingParams(),
    )


def euclidean_problem(points, weight=None):
    from scipy.spatial.distance import squareform, pdist

    delta = squareform(pdist(points))
    if weight is None:
        weight = np.ones_like(delta)
        np.fill_diagonal(weight, 0.0)
    return problem_from_matrices(delta, weight)


class TestStress:
    def test_all_zero_weights(self):
        rng = np.random.default_rng(0)
        p = problem_from_matrices(np.full((4, 4), 1.0) - np.eye(4), np.zeros((4, 4)))
        assert stress(p, rng.normal(size=(4, 2))) == 0.0

    def test_exact_fit(self):
        delta = np.array([[0.0, 1.0], [1.0, 0.0]])
        weight = np.array([[0.0, 1.0], [1.0, 0.0]])
        p = JointProblem(delta, weight, 1, 1, U, ScalingParams())
        coords = np.array([[0.0, 0.0], [1.0, 0.0]])
        assert stress(p, coords) == 0.0

    def test_matches_double_loop_oracle(self):
        rng = np.random.default_rng(1)
        p = random_problem(rng, 5)
        for _ in range(5):
            coords = rng.normal(size=(5, 3))
            assert stress(p, coords) == pytest.approx(brute_stress(p, coords), abs=1e-12)

    def test_rigid_motion_invariance(self):
        rng = np.random.default_rng(2)
        p = random_problem(rng, 8)
        coords = rng.normal(size=(8, 2))
        s0 = stress(p, coords)
        for _ in range(5):
            theta = rng.uniform(0, 2 * np.pi)
            rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
            moved = coords @ rot + rng.normal(size=2)
            assert stress(p, moved) == pytest.approx(s0, abs=1e-12)


class TestClassicalMdsInit:
    def test_recovers_planar_points(self):
        rng = np.random.default_rng(3)
        points = rng.normal(size=(10, 2))
        init = classical_mds_init(euclidean_problem(points), 2)
        assert procrustes_rmse(init, points) < 1e-8

    def test_equilateral_triangle_from_equal_distances(self):
        delta = np.ones((3, 3)) - np.eye(3)
        weight = np.ones((3, 3)) - np.eye(3)
        p = JointProblem(delta, weight, 2, 1, U, ScalingParams())
        init = classical_mds_init(p, 2)
        from scipy.spatial.distance import pdist

        assert np.allclose(pdist(init), 1.0, atol=1e-12)

    def test_non_euclidean_single_positive_eigenvalue_pads_zeros(self):
        # 4 collinear points with squared dissimilarities shrunk by 1/2:
        # double-centered spectrum has exactly one positive eigenvalue
        x = np.arange(4.0)
        line = np.abs(x[:, None] - x[None, :])
        delta = np.sqrt(np.maximum(line**2 - 0.5, 0.0))
        np.fill_diagonal(delta, 0.0)
        weight = np.ones((4, 4)) - np.eye(4)
        p = problem_from_matrices(delta, weight)
        sq = delta**2
        j = np.eye(4) - np.ones((4, 4)) / 4
        evals = np.linalg.eigvalsh(-0.5 * j @ sq @ j)
        assert np.sum(evals > 1e-9) == 1 and np.sum(evals < -1e-9) >= 1
        init = classical_mds_init(p, 2)
        assert (init[:, 1] == 0.0).all()
        assert (init[:, 0] != 0.0).any()


class TestSmacof:
    def test_realizable_init_is_fixed_point(self):
        rng = np.random.default_rng(4)
        points = rng.normal(size=(6, 2))
        p = euclidean_problem(points)
        result = smacof(p, points, EmbeddingConfig(dim=2, rel_tol=1e-8))
        assert result.iterations <= 2
        assert result.stress < 1e-10

    def test_stress_never_exceeds_init(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            p = random_problem(rng, 8)
            init = rng.normal(size=(8, 2))
            result = smacof(p, init, EmbeddingConfig(dim=2))
            assert result.stress <= stress(p, init) + 1e-12
            assert result.stress == result.stress_trace[-1]

    def test_monotone_trace_on_random_problems(self):
        rng = np.random.default_rng(6)
        for _ in range(25):
            size = int(rng.integers(4, 12))
            p = random_problem(rng, size)
            result = smacof(p, rng.normal(size=(size, 2)), EmbeddingConfig(dim=2))
            trace = np.array(result.stress_trace)
            assert (np.diff(trace) <= 1e-10 * np.maximum(trace[:-1], 1.0)).all()

    def test_one_dimensional_near_brute_force_optimum(self):
        rng = np.random.default_rng(7)
        p = random_problem(rng, 4, zero_weight_frac=0.0)
        cfg = EmbeddingConfig(dim=1, max_iter=2000, rel_tol=1e-12, restarts=8)
        result = bifold.embed_problem(p, cfg)
        samples = rng.uniform(-3, 3, size=(100_000, 4, 1))
        diffs = np.linalg.norm(samples[:, :, None, :] - samples[:, None, :, :], axis=-1)
        iu = np.triu_indices(4, 1)
        best = np.min(
            np.sum(p.weight[iu] * (diffs[:, iu[0], iu[1]] - p.delta[iu]) ** 2, axis=1)
        )
        assert result.stress <= 1.05 * best

    def test_disconnected_components_embedded_independently(self):
        cells = [[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1], [0, 0, 1, 1]]
        d = from_arrays(cells)
        result = bifold.embed(d, EstimatorKind.MEMBERSHIP)
        assert result.disconnected
        assert np.isfinite(result.coords).all()


class TestPcaAlign:
    def test_line_lands_on_first_axis(self):
        t = np.linspace(-1, 1, 7)
        coords = np.stack([t, t], axis=1)  # 45 degree line
        aligned = pca_align(coords)
        assert np.allclose(aligned[:, 1], 0.0, atol=1e-12)

    def test_stress_invariant(self):
        rng = np.random.default_rng(8)
        p = random_problem(rng, 9)
        coords = rng.normal(size=(9, 2))
        assert stress(p, pca_align(coords)) == pytest.approx(stress(p, coords), abs=1e-12)

    def test_idempotent(self):
        rng = np.random.default_rng(9)
        coords = rng.normal(size=(12, 3))
        once = pca_align(coords)
        assert np.allclose(pca_align(once), once, atol=1e-10)

    def test_variances_non_increasing(self):
        rng = np.random.default_rng(10)
        aligned = pca_align(rng.normal(size=(20, 3)) * np.array([1.0, 5.0, 2.0]))
        var = aligned.var(axis=0)
        assert (np.diff(var) <= 1e-12).all()


class TestEmbed:
    def test_duplicate_rows_coincide(self):
        # holds whenever identical data vectors imply zero dissimilarity;
        # the smoothed Bayesian estimators give duplicates a small positive
        # dissimilarity, so the minimizer keeps them slightly apart there
        cells = [[1, 0, 1, 1], [1, 0, 1, 1], [0, 1, 0, 1]]
        for kind in (
            EstimatorKind.BERNOULLI_MLE,
            EstimatorKind.MEMBERSHIP,
            EstimatorKind.RAW_HAMMING,
        ):
            r = bifold.embed(from_arrays(cells), kind)
            assert np.allclose(r.coords[0], r.coords[1], atol=1e-12)

    def test_zero_weight_perturbation_bit_identical(self):
        cells = [[1, None, 1], [0, 1, None], [1, 1, 0]]
        d = from_arrays(cells)
        problem = bifold.build_joint(d, U)
        zero_mask = (problem.weight == 0) & ~np.eye(problem.size, dtype=bool)
        assert zero_mask.any()
        perturbed = JointProblem(
            problem.delta + np.where(zero_mask, 3.7, 0.0), problem.weight,
            problem.m, problem.n, problem.method, problem.params,
        )
        r1 = bifold.embed_problem(problem)
        r2 = bifold.embed_problem(perturbed)
        assert np.array_equal(r1.coords, r2.coords)
        assert r1.stress == r2.stress
        assert r1.stress_trace == r2.stress_trace

    def test_trace_non_increasing_and_converged(self, sw_dataset):
        r = bifold.embed(sw_dataset, EstimatorKind.RAW_HAMMING)
        trace = np.array(r.stress_trace)
        assert (np.diff(trace) <= 1e-10 * np.maximum(trace[:-1], 1.0)).all()
        assert r.converged
        assert r.stress == trace[-1]


class TestSweep:
    def test_realizable_two_dimensional(self):
        rng = np.random.default_rng(11)
        # dataset whose bernoulli problem is nearly realizable is hard to
        # construct; instead check that stress vanishes for d >= 2 on a
        # planar euclidean problem via smacof directly
        points = rng.normal(size=(6, 2))
        p = euclidean_problem(points)
        for d in (2, 3):
            init = classical_mds_init(p, d)
            r = smacof(p, init, EmbeddingConfig(dim=d))
            assert r.stress < 1e-10

    def test_non_increasing_over_dims(self, sw_dataset):
        s = sweep(sw_dataset, EstimatorKind.RAW_HAMMING, dims=[1, 2, 3])
        assert s.stresses[0] >= s.stresses[1] >= s.stresses[2] - 1e-9
        assert len(s.dims) == len(s.stresses) == len(s.normalized_stresses)
        assert all(n >= 0 for n in s.normalized_stresses)

    def test_normalization(self, sw_dataset):
        s = sweep(sw_dataset, EstimatorKind.RAW_HAMMING, dims=[2])
        problem = bifold.build_joint(sw_dataset, EstimatorKind.RAW_HAMMING)
        iu = np.triu_indices(problem.size, 1)
        norm = float(np.sum(problem.weight[iu] * problem.delta[iu] ** 2))
        assert s.normalized_stresses[0] == pytest.approx(s.stresses[0] / norm)

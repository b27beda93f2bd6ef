import numpy as np
import pytest

from clustfuse.clusterers import gmm_fit, kmeans
from clustfuse.dawid_skene import EmConfig
from clustfuse.datagen import MixtureSpec, sample_gaussian_mixture
from clustfuse.errors import TooFewPoints
from clustfuse.metrics import adjusted_rand_index


def blobs(means, n, seed, scale=1.0):
    means = np.asarray(means, dtype=float)
    g, d = means.shape
    spec = MixtureSpec(
        weights=np.full(g, 1.0 / g),
        means=means,
        covariances=np.repeat(np.eye(d)[None] * scale**2, g, axis=0),
    )
    return sample_gaussian_mixture(spec, n, seed)


class TestKmeans:
    def test_two_separated_pairs(self):
        x = np.array([[0.0, 0.0], [0.1, 0.0], [10.0, 10.0], [10.1, 10.0]])
        result = kmeans(x, 2, seed=0)
        assert adjusted_rand_index(
            result.partition,
            _part([0, 0, 1, 1]),
        ) == 1.0

    def test_single_cluster_center_is_mean(self):
        x = np.arange(12, dtype=float).reshape(6, 2)
        result = kmeans(x, 1, seed=3)
        assert result.partition.labels.tolist() == [0] * 6
        # objective equals total squared deviation from the mean
        assert result.loglik == pytest.approx(-((x - x.mean(axis=0)) ** 2).sum())

    def test_three_blobs_recovered(self):
        data = blobs([[0, 0], [6, 0], [0, 6]], 300, seed=42)
        result = kmeans(data, 3, seed=0)
        assert adjusted_rand_index(result.partition, data.truth) >= 0.99

    def test_deterministic(self):
        data = blobs([[0, 0], [4, 0]], 100, seed=1)
        a = kmeans(data, 2, seed=5)
        b = kmeans(data, 2, seed=5)
        assert np.array_equal(a.partition.labels, b.partition.labels)

    def test_objective_non_increasing(self):
        data = blobs([[0, 0], [3, 0], [0, 3]], 150, seed=2)
        x = data.features
        prev = None
        for iters in range(1, 12):
            result = kmeans(data, 3, seed=9, max_iter=iters)
            wcss = -result.loglik
            if prev is not None:
                assert wcss <= prev + 1e-9
            prev = wcss

    def test_too_few_points(self):
        with pytest.raises(TooFewPoints):
            kmeans(np.zeros((2, 2)), 3, seed=0)


class TestGmmFit:
    def test_single_component_matches_mle(self):
        rng = np.random.default_rng(0)
        x = rng.multivariate_normal([1.0, -2.0], np.eye(2), size=3000)
        init = _part([0] * 3000)
        result = gmm_fit(x, 1, "full", init)
        np.testing.assert_allclose(result.params.means[0], x.mean(axis=0), atol=1e-8)
        np.testing.assert_allclose(
            result.params.covariances[0], np.cov(x.T, bias=True), atol=1e-3
        )

    def test_separated_spherical_blobs(self):
        data = blobs([[0, 0], [8, 0]], 200, seed=3)
        init = kmeans(data, 2, seed=0).partition
        result = gmm_fit(data, 2, "spherical", init)
        assert adjusted_rand_index(result.partition, data.truth) == 1.0

    def test_full_beats_spherical_on_anisotropic_data(self):
        cov = np.array([[6.0, 2.3], [2.3, 1.0]])
        spec = MixtureSpec(
            weights=np.full(3, 1.0 / 3.0),
            means=np.array([[0.0, 0.0], [5.0, 1.5], [2.0, 4.5]]),
            covariances=np.repeat(cov[None], 3, axis=0),
        )
        data = sample_gaussian_mixture(spec, 400, seed=11)
        init = kmeans(data, 3, seed=0).partition
        full = gmm_fit(data, 3, "full", init)
        spherical = gmm_fit(data, 3, "spherical", init)
        ari_full = adjusted_rand_index(full.partition, data.truth)
        ari_sph = adjusted_rand_index(spherical.partition, data.truth)
        assert ari_full >= ari_sph

    @pytest.mark.parametrize("family", ["spherical", "diagonal", "full"])
    def test_loglik_monotone_per_iteration(self, family):
        data = blobs([[0, 0], [2.5, 0], [0, 2.5]], 120, seed=7)
        init = kmeans(data, 3, seed=1).partition
        prev = None
        for iters in range(1, 15):
            result = gmm_fit(
                data, 3, family, init, EmConfig(max_iterations=iters, rel_tolerance=1e-12)
            )
            if prev is not None:
                assert result.loglik >= prev - 1e-7
            prev = result.loglik

    def test_diagonal_covariance_is_diagonal(self):
        data = blobs([[0, 0], [5, 5]], 100, seed=4)
        init = kmeans(data, 2, seed=0).partition
        result = gmm_fit(data, 2, "diagonal", init)
        for cov in result.params.covariances:
            assert cov[0, 1] == 0.0 and cov[1, 0] == 0.0
        assert result.params.weights.sum() == pytest.approx(1.0, abs=1e-9)

    def test_deterministic(self):
        data = blobs([[0, 0], [3, 0]], 80, seed=5)
        init = kmeans(data, 2, seed=2).partition
        a = gmm_fit(data, 2, "full", init)
        b = gmm_fit(data, 2, "full", init)
        assert np.array_equal(a.partition.labels, b.partition.labels)
        assert a.loglik == b.loglik

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            gmm_fit(np.zeros((5, 2)), 2, "banana", _part([0, 0, 0, 1, 1]))


def _part(labels):
    from clustfuse.types import Partition

    labels = np.asarray(labels)
    return Partition(labels, labels.max() + 1)

import numpy as np
import pytest

from smoothspec.tiny_clusters import (
    build_tiny_clusters,
    default_epsilon,
    expand_labels,
    median_pairwise_distance,
)


class TestBuildTinyClusters:
    def test_five_point_single_linkage(self):
        X = np.array([[0.0], [0.01], [5.0], [5.02], [9.0]])
        tiny = build_tiny_clusters(X, epsilon=0.1)
        assert tiny.n_clusters == 3
        np.testing.assert_array_equal(tiny.assignment, [0, 0, 1, 1, 2])
        np.testing.assert_allclose(tiny.centers.ravel(), [0.005, 5.01, 9.0], atol=1e-15)
        np.testing.assert_array_equal(tiny.sizes, [2, 2, 1])

    def test_epsilon_zero_distinct_points_identity(self):
        X = np.array([[0.0], [1.0], [2.0]])
        tiny = build_tiny_clusters(X, epsilon=0.0)
        assert tiny.n_clusters == 3
        np.testing.assert_array_equal(tiny.assignment, [0, 1, 2])
        np.testing.assert_array_equal(tiny.centers, X)

    def test_epsilon_zero_merges_exact_duplicates(self):
        X = np.array([[1.0], [1.0], [2.0]])
        tiny = build_tiny_clusters(X, epsilon=0.0)
        assert tiny.n_clusters == 2
        np.testing.assert_array_equal(tiny.assignment, [0, 0, 1])

    def test_full_merge(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(10, 2))
        tiny = build_tiny_clusters(X, epsilon=1e6)
        assert tiny.n_clusters == 1
        np.testing.assert_allclose(tiny.centers[0], X.mean(axis=0), atol=1e-12)
        assert tiny.sizes[0] == 10

    def test_chain_merging_is_transitive(self):
        # consecutive points within epsilon, endpoints far apart
        X = np.arange(6, dtype=float).reshape(-1, 1) * 0.5
        tiny = build_tiny_clusters(X, epsilon=0.5)
        assert tiny.n_clusters == 1

    def test_ids_ordered_by_smallest_member(self):
        X = np.array([[10.0], [0.0], [10.01], [0.01]])
        tiny = build_tiny_clusters(X, epsilon=0.1)
        # object 0 belongs to tiny cluster 0 by convention
        np.testing.assert_array_equal(tiny.assignment, [0, 1, 0, 1])

    def test_partition_properties_random(self):
        rng = np.random.default_rng(5)
        X = rng.normal(size=(40, 2))
        eps = 0.3
        tiny = build_tiny_clusters(X, epsilon=eps)
        assert tiny.sizes.sum() == 40
        assert set(np.unique(tiny.assignment)) == set(range(tiny.n_clusters))
        # no pair within eps sits in different tiny clusters
        for i in range(40):
            for j in range(i + 1, 40):
                if np.linalg.norm(X[i] - X[j]) <= eps:
                    assert tiny.assignment[i] == tiny.assignment[j]
        # centers are member means; singleton centers are exact copies
        for t in range(tiny.n_clusters):
            members = X[tiny.assignment == t]
            np.testing.assert_allclose(tiny.centers[t], members.mean(axis=0), atol=1e-12)
            if len(members) == 1:
                assert (tiny.centers[t] == members[0]).all()

    def test_negative_epsilon_rejected(self):
        with pytest.raises(ValueError):
            build_tiny_clusters(np.zeros((3, 1)), epsilon=-1.0)


class TestExpandLabels:
    def test_lookup(self):
        X = np.array([[0.0], [0.001], [9.0]])
        tiny = build_tiny_clusters(X, epsilon=0.01)
        np.testing.assert_array_equal(expand_labels(tiny, [7, 3]), [7, 7, 3])

    def test_identity_map_roundtrip(self):
        X = np.array([[0.0], [1.0], [2.0], [3.0]])
        tiny = build_tiny_clusters(X, epsilon=0.0)
        labels = np.array([3, 1, 4, 1])
        np.testing.assert_array_equal(expand_labels(tiny, labels), labels)

    def test_permutation(self):
        X = np.array([[10.0], [0.0]])
        tiny = build_tiny_clusters(X, epsilon=0.1)
        np.testing.assert_array_equal(expand_labels(tiny, [1, 0]), [1, 0])

    def test_length_mismatch(self):
        tiny = build_tiny_clusters(np.array([[0.0], [9.0]]), epsilon=0.1)
        with pytest.raises(ValueError, match="length mismatch"):
            expand_labels(tiny, [0])


class TestMedianPairwiseDistance:
    def test_exact_for_small_n(self):
        X = np.array([[0.0], [1.0], [3.0]])
        # pairwise distances 1, 2, 3
        assert median_pairwise_distance(X) == 2.0

    def test_sampled_is_deterministic_and_close(self):
        rng = np.random.default_rng(2)
        X = rng.normal(size=(200, 2))
        d1 = median_pairwise_distance(X, max_pairs=1000, seed=3)
        d2 = median_pairwise_distance(X, max_pairs=1000, seed=3)
        assert d1 == d2
        exact = median_pairwise_distance(X, max_pairs=10**9)
        assert abs(d1 - exact) / exact < 0.2

    def test_default_epsilon_scales(self):
        X = np.array([[0.0], [1.0], [3.0]])
        assert default_epsilon(X, rel=0.01) == pytest.approx(0.02)

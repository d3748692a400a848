import numpy as np
import pytest

from oracles import brute_force_mutual_knn, count_length2_paths, floyd_warshall_closure
from smoothspec.reachability import component_labels, mutual_knn, reachability, second_order


class TestMutualKnn:
    def test_four_points_k1(self):
        X = np.array([[0.0], [1.0], [3.0], [10.0]])
        adj = mutual_knn(X, 1)
        expected = np.zeros((4, 4), dtype=bool)
        expected[0, 1] = expected[1, 0] = True
        np.testing.assert_array_equal(adj, expected)

    def test_four_points_k2(self):
        X = np.array([[0.0], [1.0], [3.0], [10.0]])
        adj = mutual_knn(X, 2)
        expected = np.zeros((4, 4), dtype=bool)
        for i, j in [(0, 1), (0, 2), (1, 2)]:
            expected[i, j] = expected[j, i] = True
        np.testing.assert_array_equal(adj, expected)

    def test_two_points_mutual_by_force(self):
        adj = mutual_knn(np.array([[0.0], [5.0]]), 1)
        np.testing.assert_array_equal(adj, [[False, True], [True, False]])

    def test_tie_break_by_lower_index(self):
        # object 0 is equidistant from 1 and 2; index 1 wins the single slot
        X = np.array([[0.0], [1.0], [-1.0]])
        adj = mutual_knn(X, 1)
        assert adj[0, 1] and adj[1, 0]
        assert not adj[0, 2] and not adj[2, 0]

    def test_matches_brute_force(self):
        rng = np.random.default_rng(0)
        for trial in range(20):
            n = int(rng.integers(3, 12))
            k = int(rng.integers(1, n))
            X = rng.normal(size=(n, 2))
            np.testing.assert_array_equal(
                mutual_knn(X, k).astype(int), brute_force_mutual_knn(X, k)
            )

    def test_k_out_of_range(self):
        X = np.zeros((4, 1))
        with pytest.raises(ValueError):
            mutual_knn(X, 0)
        with pytest.raises(ValueError):
            mutual_knn(X, 4)


class TestReachability:
    def test_path_closure(self):
        adj = np.zeros((4, 4))
        for i, j in [(0, 1), (1, 3)]:
            adj[i, j] = adj[j, i] = 1
        W = reachability(adj)
        expected = np.zeros((4, 4), dtype=int)
        for i, j in [(0, 1), (0, 3), (1, 3)]:
            expected[i, j] = expected[j, i] = 1
        np.testing.assert_array_equal(W, expected)

    def test_empty_graph(self):
        W = reachability(np.zeros((5, 5)))
        assert (W == 0).all()

    def test_complete_graph(self):
        adj = 1.0 - np.eye(6)
        W = reachability(adj)
        np.testing.assert_array_equal(W, (1 - np.eye(6)).astype(int))

    def test_diag_override(self):
        adj = np.zeros((3, 3))
        adj[0, 1] = adj[1, 0] = 1
        W = reachability(adj, diag=1)
        assert (np.diag(W) == 1).all()

    def test_idempotent(self):
        rng = np.random.default_rng(1)
        for trial in range(10):
            n = int(rng.integers(3, 10))
            adj = (rng.random((n, n)) < 0.3).astype(float)
            adj = np.triu(adj, 1)
            adj = adj + adj.T
            W = reachability(adj)
            np.testing.assert_array_equal(reachability(W.astype(float)), W)

    def test_block_structure(self):
        rng = np.random.default_rng(2)
        n = 9
        adj = (rng.random((n, n)) < 0.25).astype(float)
        adj = np.triu(adj, 1)
        adj = adj + adj.T
        W = reachability(adj)
        comp = component_labels(W)
        order = np.argsort(comp, kind="stable")
        reordered = W[np.ix_(order, order)]
        sizes = np.bincount(comp)
        offset = 0
        for size in sizes:
            block = reordered[offset:offset + size, offset:offset + size]
            np.testing.assert_array_equal(block, (1 - np.eye(size)).astype(int))
            offset += size
        assert reordered.sum() == sum(s * (s - 1) for s in sizes)

    def test_matches_floyd_warshall_oracle(self):
        rng = np.random.default_rng(3)
        for trial in range(50):
            n = int(rng.integers(2, 13))
            adj = (rng.random((n, n)) < 0.25).astype(float)
            adj = np.triu(adj, 1)
            adj = adj + adj.T
            np.testing.assert_array_equal(reachability(adj), floyd_warshall_closure(adj))


class TestSecondOrder:
    def test_three_clique_in_four(self):
        W = np.zeros((4, 4))
        for i in range(3):
            for j in range(3):
                if i != j:
                    W[i, j] = 1
        WW = second_order(W)
        expected = np.zeros((4, 4), dtype=int)
        expected[:3, :3] = np.ones((3, 3)) + np.eye(3)
        np.testing.assert_array_equal(WW, expected)

    def test_single_edge(self):
        W = np.zeros((4, 4))
        W[0, 1] = W[1, 0] = 1
        np.testing.assert_array_equal(second_order(W), np.diag([1, 1, 0, 0]))

    def test_zero_matrix(self):
        assert (second_order(np.zeros((3, 3))) == 0).all()

    def test_diagonal_is_degree(self):
        rng = np.random.default_rng(4)
        adj = (rng.random((8, 8)) < 0.4).astype(float)
        adj = np.triu(adj, 1)
        adj = adj + adj.T
        W = reachability(adj).astype(float)
        WW = second_order(W)
        np.testing.assert_array_equal(np.diag(WW), W.sum(axis=1).astype(int))

    def test_matches_path_enumeration(self):
        rng = np.random.default_rng(5)
        for trial in range(10):
            n = int(rng.integers(2, 10))
            adj = (rng.random((n, n)) < 0.35).astype(float)
            adj = np.triu(adj, 1)
            adj = adj + adj.T
            W = reachability(adj)
            np.testing.assert_array_equal(second_order(W), count_length2_paths(W))

    def test_positive_entries_only_within_components(self):
        rng = np.random.default_rng(6)
        adj = (rng.random((10, 10)) < 0.2).astype(float)
        adj = np.triu(adj, 1)
        adj = adj + adj.T
        W = reachability(adj)
        WW = second_order(W)
        off_diag = ~np.eye(10, dtype=bool)
        assert ((WW > 0) & off_diag <= (W > 0)).all()

"""Pre-grouping of extremely close objects into tiny clusters.

Objects within a small distance threshold are merged (single linkage) and
replaced by their centers for the rest of the pipeline, so no two working
objects are nearly coincident.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .validation import as_feature_matrix, as_label_vector, check_lengths_match


@dataclass(frozen=True)
class TinyClusterMap:
    """Partition of n objects into m tiny clusters.

    Attributes
    ----------
    assignment : ndarray of shape (n,)
        Tiny-cluster id per object, ids in [0, m) ordered by smallest
        member index.
    centers : ndarray of shape (m, d)
        Arithmetic mean of each tiny cluster's members.
    sizes : ndarray of shape (m,)
        Member counts; sums to n.
    """

    assignment: np.ndarray
    centers: np.ndarray
    sizes: np.ndarray

    @property
    def n_objects(self):
        return self.assignment.shape[0]

    @property
    def n_clusters(self):
        return self.centers.shape[0]


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def build_tiny_clusters(X, epsilon):
    """Group objects whose single-linkage distance is at most epsilon.

    Tiny clusters are the connected components of the graph joining pairs
    with Euclidean distance <= epsilon. epsilon = 0 merges exact duplicates
    only. Ids are assigned in order of each cluster's smallest member index.
    """
    X = as_feature_matrix(X)
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    n = X.shape[0]

    uf = _UnionFind(n)
    close = squareform(pdist(X)) <= epsilon
    for i, j in zip(*np.nonzero(np.triu(close, k=1))):
        uf.union(int(i), int(j))

    assignment = np.empty(n, dtype=np.int64)
    next_id = 0
    root_to_id = {}
    for i in range(n):
        root = uf.find(i)
        if root not in root_to_id:
            root_to_id[root] = next_id
            next_id += 1
        assignment[i] = root_to_id[root]

    m = next_id
    sizes = np.bincount(assignment, minlength=m)
    centers = np.zeros((m, X.shape[1]))
    np.add.at(centers, assignment, X)
    centers /= sizes[:, None]
    return TinyClusterMap(assignment=assignment, centers=centers, sizes=sizes)


def expand_labels(tiny_map, center_labels):
    """Propagate per-center labels back to the original objects."""
    center_labels = as_label_vector(center_labels, name="center_labels")
    check_lengths_match(
        center_labels, tiny_map.centers, "center_labels", "tiny-cluster centers"
    )
    return center_labels[tiny_map.assignment]


def median_pairwise_distance(X, max_pairs=1000, seed=0):
    """Median Euclidean pairwise distance, subsampled for large n.

    When the number of unordered pairs exceeds max_pairs, a seeded random
    sample of index pairs is used instead, keeping the estimate cheap and
    deterministic.
    """
    X = as_feature_matrix(X)
    n = X.shape[0]
    if n * (n - 1) // 2 <= max_pairs:
        return float(np.median(pdist(X)))
    rng = np.random.default_rng(seed)
    i = rng.integers(0, n, size=2 * max_pairs)
    j = rng.integers(0, n, size=2 * max_pairs)
    keep = i != j
    i, j = i[keep][:max_pairs], j[keep][:max_pairs]
    return float(np.median(np.linalg.norm(X[i] - X[j], axis=1)))


def default_epsilon(X, rel=0.01, seed=0):
    """Default merge threshold: a small fraction of the median pairwise distance."""
    return rel * median_pairwise_distance(X, seed=seed)

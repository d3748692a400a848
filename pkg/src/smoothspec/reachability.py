"""Mutual K-NN graph, its reachability closure, and second-order path counts.

The mutual K-NN graph joins two objects when each is among the other's K
nearest neighbors. Reachability closes that relation over paths: W_ij = 1
iff i and j sit in the same connected component. WW = W @ W counts the
number of length-2 paths between objects and is the smoothness signal used
by the coefficient solver.
"""

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .validation import as_feature_matrix, as_square_matrix


def _as_bool_adjacency(adj, name):
    adj = as_square_matrix(np.asarray(adj, dtype=np.float64), name=name)
    if not np.isin(adj, (0.0, 1.0)).all():
        raise ValueError(f"{name} must be a 0/1 matrix")
    if not (adj == adj.T).all():
        raise ValueError(f"{name} must be symmetric")
    if adj.diagonal().any():
        raise ValueError(f"{name} must have a zero diagonal")
    return adj.astype(bool)


def mutual_knn(X, k):
    """Boolean adjacency of the mutual K-nearest-neighbor relation.

    Neighbors are ranked by Euclidean distance excluding self; distance ties
    break toward the smaller object index so the graph is deterministic.
    Edge (i, j) exists iff i is in j's K nearest neighbors and vice versa.
    """
    X = as_feature_matrix(X)
    n = X.shape[0]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")

    dist = squareform(pdist(X))
    np.fill_diagonal(dist, np.inf)
    # stable sort keeps equal-distance candidates in index order
    order = np.argsort(dist, axis=1, kind="stable")[:, :k]

    in_knn = np.zeros((n, n), dtype=bool)
    rows = np.repeat(np.arange(n), k)
    in_knn[rows, order.ravel()] = True
    return in_knn & in_knn.T


def reachability(adj, diag=0):
    """Component closure of an adjacency matrix.

    W_ij = 1 iff i != j and some path joins i and j. Computed by labeling
    connected components via BFS. The diagonal defaults to 0 (objects are
    not treated as reachable from themselves) but can be set to 1.
    """
    adj = _as_bool_adjacency(adj, "adj")
    if diag not in (0, 1):
        raise ValueError(f"diag must be 0 or 1, got {diag}")
    n = adj.shape[0]

    component = np.full(n, -1, dtype=np.int64)
    current = 0
    for start in range(n):
        if component[start] >= 0:
            continue
        frontier = [start]
        component[start] = current
        while frontier:
            reached = adj[frontier].any(axis=0) & (component < 0)
            frontier = np.nonzero(reached)[0].tolist()
            component[reached] = current
        current += 1

    W = (component[:, None] == component[None, :]).astype(np.int64)
    np.fill_diagonal(W, diag)
    return W


def second_order(W):
    """Exact integer matrix square of W: entry (i, j) counts length-2 paths."""
    W = as_square_matrix(W, name="W")
    Wi = W.astype(np.int64)
    if not (W == Wi).all():
        raise ValueError("W must be integer-valued")
    return Wi @ Wi


def component_labels(W):
    """Component id per vertex from a reachability matrix (diag ignored)."""
    W = as_square_matrix(W, name="W")
    n = W.shape[0]
    linked = (W != 0) | np.eye(n, dtype=bool)
    labels = np.full(n, -1, dtype=np.int64)
    current = 0
    for i in range(n):
        if labels[i] < 0:
            labels[linked[i]] = current
            current += 1
    return labels

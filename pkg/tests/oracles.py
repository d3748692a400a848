"""Independent reference implementations used to check the library.

Everything here is deliberately written against the primary definitions
(objective functions, neighbor lists, path enumeration) and never reuses the
closed-form or vectorized code paths it is meant to verify.
"""

import numpy as np


def minimize_column_objective(X, x_target, w, ww, alpha1, alpha2, alpha3, alpha4,
                              tol=1e-10, max_iter=200_000):
    """First-order minimizer of one column's objective.

    Minimizes, by gradient descent with Nesterov momentum,

        J(z) = ||x_target - X z||^2 + a1 ||z||^2 + a2 ||z - w||^2
               + a3 ||z - ww + a4 w||^2

    The gradient is evaluated directly from the objective; the closed-form
    linear system is never touched. Step size and momentum come from the
    extreme eigenvalues of the quadratic. Returns the minimizer once the
    gradient sup-norm drops below tol.
    """
    n = X.shape[1]
    ridge = alpha1 + alpha2 + alpha3

    gram_eigs = np.linalg.eigvalsh(X.T @ X)
    lips = 2.0 * (gram_eigs[-1] + ridge)
    mu = 2.0 * (max(gram_eigs[0], 0.0) + ridge)
    momentum = (np.sqrt(lips) - np.sqrt(mu)) / (np.sqrt(lips) + np.sqrt(mu))

    def gradient(z):
        resid = x_target - X @ z
        return 2.0 * (
            -X.T @ resid + alpha1 * z + alpha2 * (z - w)
            + alpha3 * (z - ww + alpha4 * w)
        )

    z = np.zeros(n)
    y = z.copy()
    for _ in range(max_iter):
        g = gradient(y)
        z_next = y - g / lips
        y = z_next + momentum * (z_next - z)
        z = z_next
        if np.abs(gradient(z)).max() <= tol:
            return z
    raise AssertionError(f"column minimizer did not reach tol={tol}")


def minimize_objective_columns(X, W, WW, params, tol=1e-10):
    """Column-by-column minimization of the full objective."""
    n = X.shape[1]
    Z = np.empty((n, n))
    for p in range(n):
        Z[:, p] = minimize_column_objective(
            X, X[:, p], W[:, p], WW[:, p],
            params.alpha1, params.alpha2, params.alpha3, params.alpha4,
            tol=tol,
        )
    return Z


def brute_force_knn_lists(points, k):
    """K-nearest-neighbor index sets by explicit sort on (distance, index)."""
    n = len(points)
    lists = []
    for i in range(n):
        ranked = sorted(
            (float(np.linalg.norm(points[i] - points[j])), j)
            for j in range(n) if j != i
        )
        lists.append({j for _, j in ranked[:k]})
    return lists


def brute_force_mutual_knn(points, k):
    """Mutual K-NN adjacency from the brute-force neighbor lists."""
    lists = brute_force_knn_lists(points, k)
    n = len(points)
    adj = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            if i != j and j in lists[i] and i in lists[j]:
                adj[i, j] = 1
    return adj


def floyd_warshall_closure(adj):
    """Boolean transitive closure with a zero diagonal."""
    reach = adj.astype(bool).copy()
    n = reach.shape[0]
    for mid in range(n):
        for i in range(n):
            if reach[i, mid]:
                reach[i] |= reach[mid]
    out = reach.astype(int)
    np.fill_diagonal(out, 0)
    return out


def count_length2_paths(W):
    """Explicit enumeration of length-2 paths i -> k -> j."""
    n = W.shape[0]
    counts = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(n):
            counts[i, j] = sum(int(W[i, k] and W[k, j]) for k in range(n))
    return counts


def power_iterate_reference(M, v0, steps):
    """Plain loop of v <- M v / ||M v||_1 for a fixed number of steps."""
    v = np.asarray(v0, dtype=float).copy()
    for _ in range(steps):
        mv = M @ v
        v = mv / np.abs(mv).sum()
    return v

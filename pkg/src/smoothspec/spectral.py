"""Final clustering stage: coefficient matrix -> affinity -> embedding -> k-means."""

import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.cluster import KMeans
from sklearn.exceptions import ConvergenceWarning

from .validation import as_float_matrix, as_square_matrix

# Stand-in degree for isolated vertices so D^(-1/2) stays finite.
ISOLATED_DEGREE = 1e-12


@dataclass(frozen=True)
class ClusterAssignment:
    """k-means output: labels, requested cluster count, objective, degeneracy."""

    labels: np.ndarray
    n_clusters: int
    inertia: float
    degenerate: bool


def affinity_from_z(Z):
    """Symmetric non-negative affinity (|Z| + |Z'|) / 2 with zero diagonal."""
    Z = as_square_matrix(Z, name="Z")
    A = (np.abs(Z) + np.abs(Z.T)) / 2.0
    np.fill_diagonal(A, 0.0)
    return A


def spectral_embed(A, k):
    """Rows of the k bottom eigenvectors of the normalized Laplacian.

    L = I - D^(-1/2) A D^(-1/2) is formed from the symmetric non-negative
    affinity A; the eigenvectors of its k smallest eigenvalues are stacked
    column-wise and each row is scaled to unit norm. Isolated vertices get a
    tiny stand-in degree and are reported via a warning.
    """
    A = as_square_matrix(A, name="A")
    n = A.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if (A < 0).any():
        raise ValueError("affinity must be non-negative")
    if not (A == A.T).all():
        raise ValueError("affinity must be symmetric")

    degrees = A.sum(axis=1)
    isolated = np.nonzero(degrees == 0)[0]
    if isolated.size:
        warnings.warn(
            f"{isolated.size} isolated object(s) in affinity: {isolated.tolist()[:10]}",
            stacklevel=2,
        )
        degrees = degrees.copy()
        degrees[isolated] = ISOLATED_DEGREE

    inv_sqrt = 1.0 / np.sqrt(degrees)
    lap = np.eye(n) - A * inv_sqrt[:, None] * inv_sqrt[None, :]
    lap = (lap + lap.T) / 2.0
    _, vectors = np.linalg.eigh(lap)
    embedding = vectors[:, :k]
    row_norms = np.linalg.norm(embedding, axis=1)
    row_norms[row_norms == 0] = 1.0
    return embedding / row_norms[:, None]


def kmeans(E, k, seed=0, restarts=10):
    """Best-of-restarts Lloyd's algorithm with k-means++ seeding.

    Deterministic for a fixed seed. If fewer than k distinct clusters
    survive (e.g. duplicate points), the result is flagged degenerate.
    """
    E = as_float_matrix(E, name="E")
    n = E.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        model = KMeans(
            n_clusters=k, init="k-means++", n_init=restarts, max_iter=300,
            random_state=seed,
        ).fit(E)
    labels = model.labels_.astype(np.int64)
    return ClusterAssignment(
        labels=labels,
        n_clusters=k,
        inertia=float(model.inertia_),
        degenerate=np.unique(labels).size < k,
    )

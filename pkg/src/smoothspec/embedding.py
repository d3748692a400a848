"""Pseudo-eigenvector embeddings via truncated power iteration.

Power iteration on the row-normalized similarity matrix converges toward
the dominant eigenvector; stopping early leaves a linear combination of the
top eigenvectors that still carries cluster-separation information. Several
independent runs are stacked into a small embedding matrix whose columns
(one per object) are normalized to unit length.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .validation import as_square_matrix


@dataclass(frozen=True)
class PowerIterationConfig:
    """Settings for one batch of truncated power-iteration runs.

    Attributes
    ----------
    n_vectors : int
        Number of independent runs (rows of the embedding).
    max_iter : int
        Hard cap on iterations per run.
    accel_tol : float
        Truncation threshold: a run stops once the change of its update
        direction (the "acceleration") falls below accel_tol / n in sup norm.
    seed : int
        Base seed; each run derives its own stream from (seed, run index).
    """

    n_vectors: int = 4
    max_iter: int = 1000
    accel_tol: float = 1e-5
    seed: int = 0

    def __post_init__(self):
        if self.n_vectors < 1:
            raise ValueError(f"n_vectors must be >= 1, got {self.n_vectors}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.accel_tol <= 0:
            raise ValueError(f"accel_tol must be positive, got {self.accel_tol}")


def row_normalize(S):
    """Divide each row of a similarity matrix by its sum.

    The result is row-stochastic and is the operator driving power
    iteration. A zero row means an object with no similarity mass at all;
    that is reported as an error naming the object.
    """
    S = as_square_matrix(S, name="S")
    sums = S.sum(axis=1)
    dead = np.nonzero(sums <= 0)[0]
    if dead.size:
        raise ValueError(
            f"cannot row-normalize: object(s) {dead.tolist()} have zero row sum"
        )
    return S / sums[:, None]


def power_iteration(M, v0, max_iter=1000, accel_tol=1e-5):
    """Truncated power iteration v <- M v / ||M v||_1.

    Returns the iterate at truncation together with the number of steps
    taken. Truncation fires when the sup-norm difference between successive
    update directions drops below accel_tol / n, or at max_iter.
    """
    M = as_square_matrix(M, name="M")
    v = np.asarray(v0, dtype=np.float64).copy()
    n = M.shape[0]
    if v.shape != (n,):
        raise ValueError(f"v0 must have shape ({n},), got {v.shape}")
    if not v.any():
        raise ValueError("v0 must be non-zero")

    threshold = accel_tol / n
    delta_prev = None
    steps = 0
    for _ in range(max_iter):
        mv = M @ v
        norm = np.abs(mv).sum()
        if norm == 0:
            raise ValueError("power iteration hit the zero vector: degenerate operator")
        v_next = mv / norm
        delta = v_next - v
        v = v_next
        steps += 1
        if delta_prev is not None and np.abs(delta - delta_prev).max() <= threshold:
            break
        delta_prev = delta
    return v, steps


def generate_pseudo_eigenvectors(M, config):
    """Stack several truncated power-iteration runs into an embedding.

    Each run starts from its own seeded random vector (uniform entries,
    L1-normalized, so the dominant-eigenvector coefficient is almost surely
    non-zero). After all rows are generated the columns are scaled to unit
    Euclidean norm, which the coefficient-matrix theory assumes.

    Returns
    -------
    X : ndarray of shape (n_vectors, n)
        Embedding matrix with unit-norm columns.
    steps : ndarray of shape (n_vectors,)
        Iterations used by each run.
    """
    M = as_square_matrix(M, name="M")
    n = M.shape[0]
    if config.n_vectors > n:
        warnings.warn(
            f"generating {config.n_vectors} pseudo-eigenvectors for only {n} objects",
            stacklevel=2,
        )

    rows = np.empty((config.n_vectors, n))
    steps = np.empty(config.n_vectors, dtype=np.int64)
    for run in range(config.n_vectors):
        rng = np.random.default_rng([config.seed, run])
        v0 = rng.random(n)
        v0 /= np.abs(v0).sum()
        rows[run], steps[run] = power_iteration(
            M, v0, max_iter=config.max_iter, accel_tol=config.accel_tol
        )

    norms = np.linalg.norm(rows, axis=0)
    if (norms == 0).any():
        dead = np.nonzero(norms == 0)[0]
        raise ValueError(f"zero embedding column(s) {dead.tolist()}: cannot normalize")
    return rows / norms[None, :], steps

"""Input validation helpers shared across the library."""

import numpy as np


def as_float_matrix(X, name="X"):
    """Coerce to a 2-D float64 array and reject non-finite entries."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise ValueError(f"{name} contains NaN or Inf entries")
    return X


def as_feature_matrix(X, name="X"):
    """Validate an n x d feature matrix (n >= 2 objects, d >= 1 features)."""
    X = as_float_matrix(X, name=name)
    n, d = X.shape
    if n < 2:
        raise ValueError(f"{name} needs at least 2 rows, got {n}")
    if d < 1:
        raise ValueError(f"{name} needs at least 1 column, got {d}")
    return X


def as_square_matrix(M, name="M"):
    M = as_float_matrix(M, name=name)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be square, got shape {M.shape}")
    return M


def as_label_vector(labels, name="labels"):
    """Coerce to a 1-D vector of non-negative integer class ids."""
    labels = np.asarray(labels)
    if labels.ndim != 1:
        raise ValueError(f"{name} must be 1-D, got shape {labels.shape}")
    out = labels.astype(np.int64)
    if not np.array_equal(out, np.asarray(labels, dtype=np.float64)):
        raise ValueError(f"{name} must contain integers")
    if out.size and out.min() < 0:
        raise ValueError(f"{name} must be non-negative")
    return out


def check_lengths_match(a, b, name_a="a", name_b="b"):
    if len(a) != len(b):
        raise ValueError(
            f"length mismatch: {name_a} has {len(a)} entries, {name_b} has {len(b)}"
        )

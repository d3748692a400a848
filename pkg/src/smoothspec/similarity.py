"""Distance-based similarity matrices: plain Gaussian and self-tuning (ZP)."""

import numpy as np
from scipy.spatial.distance import pdist, squareform

from .validation import as_feature_matrix

# Floor for local scales when every point coincides; keeps exponents finite.
MIN_LOCAL_SCALE = 1e-12


def gaussian_similarity(X, sigma):
    """Gaussian kernel similarity exp(-||x_i - x_j||^2 / (2 sigma^2)).

    The diagonal is forced to 0 so self-similarity never feeds graph edges.
    Built from each unordered pair once, hence exactly symmetric.
    """
    X = as_feature_matrix(X)
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    sq = pdist(X, "sqeuclidean")
    return squareform(np.exp(-sq / (2.0 * sigma * sigma)))


def local_scales(X, l):
    """Per-object scale: Euclidean distance to the l-th nearest neighbor.

    Duplicates would give a zero scale, so zeros are clamped to the smallest
    strictly positive neighbor distance in the dataset (MIN_LOCAL_SCALE if
    all points coincide).
    """
    X = as_feature_matrix(X)
    n = X.shape[0]
    if not 1 <= l <= n - 1:
        raise ValueError(f"l must be in [1, {n - 1}], got {l}")
    dist = squareform(pdist(X))
    # drop the self column, then take the l-th smallest per row
    sorted_rows = np.sort(dist, axis=1)[:, 1:]
    sigma = sorted_rows[:, l - 1].copy()
    if (sigma == 0).any():
        positive = dist[dist > 0]
        floor = positive.min() if positive.size else MIN_LOCAL_SCALE
        sigma[sigma == 0] = floor
    return sigma


def zp_similarity(X, l):
    """Self-tuning similarity exp(-||x_i - x_j||^2 / (sigma_i sigma_j)).

    Each object gets its own bandwidth sigma_i (distance to its l-th nearest
    neighbor), so sparse clusters see large scales and dense clusters small
    ones. Invariant under global rescaling of X. Diagonal is 0.
    """
    X = as_feature_matrix(X)
    sigma = local_scales(X, l)
    sq = pdist(X, "sqeuclidean")
    n = X.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    return squareform(np.exp(-sq / (sigma[iu] * sigma[ju])))

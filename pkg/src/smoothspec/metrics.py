"""Clustering agreement metrics: NMI, purity, Rand index.

All three are invariant under relabeling of cluster ids; NMI and the Rand
index are also symmetric in their arguments.
"""

import numpy as np

from .validation import as_label_vector, check_lengths_match


def _contingency(pred, truth):
    pred = as_label_vector(pred, name="pred")
    truth = as_label_vector(truth, name="truth")
    check_lengths_match(pred, truth, "pred", "truth")
    _, pi = np.unique(pred, return_inverse=True)
    _, ti = np.unique(truth, return_inverse=True)
    table = np.zeros((pi.max() + 1, ti.max() + 1), dtype=np.int64)
    np.add.at(table, (pi, ti), 1)
    return table


def _entropy(counts):
    p = counts[counts > 0] / counts.sum()
    return float(-(p * np.log(p)).sum())


def nmi(pred, truth):
    """Normalized mutual information with arithmetic-mean normalization.

    Returns MI / ((H(pred) + H(truth)) / 2); a zero denominator (both
    partitions trivial) maps to 0.
    """
    table = _contingency(pred, truth)
    n = table.sum()
    rows = table.sum(axis=1)
    cols = table.sum(axis=0)

    nz = table > 0
    joint = table[nz] / n
    outer = np.outer(rows, cols)[nz] / (n * n)
    mi = float((joint * np.log(joint / outer)).sum())

    denom = (_entropy(rows) + _entropy(cols)) / 2.0
    if denom == 0.0:
        return 0.0
    return max(0.0, min(1.0, mi / denom))


def purity(pred, truth):
    """Fraction of objects matching the majority true class of their cluster."""
    table = _contingency(pred, truth)
    return float(table.max(axis=1).sum() / table.sum())


def rand_index(pred, truth):
    """Fraction of object pairs on which the two partitions agree."""
    table = _contingency(pred, truth)
    n = table.sum()
    if n < 2:
        raise ValueError("rand index needs at least 2 objects")

    def pairs(x):
        return float((x * (x - 1) // 2).sum())

    total = n * (n - 1) / 2.0
    both_same = pairs(table)
    pred_same = pairs(table.sum(axis=1))
    truth_same = pairs(table.sum(axis=0))
    return (total + 2.0 * both_same - pred_same - truth_same) / total

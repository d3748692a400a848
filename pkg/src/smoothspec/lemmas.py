"""Numerical verification suite for the coefficient-matrix theory.

Random instances (embedding X with unit-norm columns, reachability W from a
mutual-K-NN closure, WW = W @ W, penalty weights from a small grid) are used
to check, at tight tolerances:

  * stationarity: the closed-form solution zeroes the objective gradient;
  * the entrywise fixed-point identity of the optimum;
  * reduction to the baseline when the smoothness weight is zero;
  * the grouping-effect bound over exhaustive (i, j, p) triples, with both
    the corrected constant (asserted) and the looser reference constant
    (violations only counted);
  * the grouping-effect limit on constructed indistinguishable pairs.
"""

from dataclasses import dataclass

import numpy as np

from .reachability import mutual_knn, reachability, second_order
from .representation import (
    SmoothParams,
    entrywise_solution_check,
    grouping_bound_report,
    grouping_effect_probe,
    solve_rosc,
    solve_smooth,
    stationarity_residual,
)

ALPHA1_GRID = (0.01, 0.1, 1.0)
ALPHA2_GRID = (0.0, 0.5, 1.0)
ALPHA3_GRID = (0.0, 0.5, 1.0)
ALPHA4_GRID = (0.0, 1.0, 2.0)


@dataclass(frozen=True)
class Instance:
    X: np.ndarray
    W: np.ndarray
    WW: np.ndarray
    params: SmoothParams

    @property
    def n(self):
        return self.X.shape[1]


def random_instance(seed, n_range=(5, 30), p_range=(2, 10)):
    """Seeded random verification instance.

    X is a p x n matrix with unit-norm columns; W is the reachability
    closure of a mutual-K-NN graph over random points; weights are drawn
    from the verification grid.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    p = int(rng.integers(p_range[0], min(p_range[1], n) + 1))

    X = rng.standard_normal((p, n))
    X /= np.linalg.norm(X, axis=0)

    points = rng.standard_normal((n, 2))
    k = int(rng.integers(1, min(6, n)))
    W = reachability(mutual_knn(points, k)).astype(np.float64)
    WW = second_order(W).astype(np.float64)

    params = SmoothParams(
        alpha1=float(rng.choice(ALPHA1_GRID)),
        alpha2=float(rng.choice(ALPHA2_GRID)),
        alpha3=float(rng.choice(ALPHA3_GRID)),
        alpha4=float(rng.choice(ALPHA4_GRID)),
    )
    return Instance(X=X, W=W, WW=WW, params=params)


def duplicate_pair_instance(seed, n_range=(6, 14), p_range=(2, 6)):
    """Instance holding an indistinguishable pair (i, j).

    Column j of X is a copy of column i and the reachability columns/rows of
    j are forced equal to those of i (with W_ij = W_ji = 0 and zero
    diagonal), so the pair satisfies the grouping-effect hypothesis exactly.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(n_range[0], n_range[1] + 1))
    p = int(rng.integers(p_range[0], p_range[1] + 1))

    X = rng.standard_normal((p, n))
    X /= np.linalg.norm(X, axis=0)
    i, j = sorted(rng.choice(n, size=2, replace=False).tolist())
    X[:, j] = X[:, i]

    W = (rng.random((n, n)) < 0.4).astype(np.float64)
    W = np.triu(W, k=1)
    W = W + W.T
    W[j, :] = W[i, :]
    W[:, j] = W[:, i]
    W[i, j] = W[j, i] = 0.0
    np.fill_diagonal(W, 0.0)
    WW = W @ W

    params = SmoothParams(
        alpha1=float(rng.choice(ALPHA1_GRID)),
        alpha2=float(rng.choice(ALPHA2_GRID)),
        alpha3=float(rng.choice(ALPHA3_GRID)),
        alpha4=float(rng.choice(ALPHA4_GRID)),
    )
    return Instance(X=X, W=W, WW=WW, params=params), i, j


def verify_stationarity(n_instances=50, seed=0):
    """Max stationarity residual and entrywise-identity failures across instances."""
    worst = 0.0
    entrywise_failures = 0
    for idx in range(n_instances):
        inst = random_instance([seed, idx])
        Z = solve_smooth(inst.X, inst.W, inst.WW, inst.params)
        worst = max(
            worst, float(stationarity_residual(Z, inst.X, inst.W, inst.WW, inst.params).max())
        )
        if not entrywise_solution_check(Z, inst.X, inst.W, inst.WW, inst.params):
            entrywise_failures += 1
    return {
        "instances": n_instances,
        "max_stationarity_residual": worst,
        "entrywise_failures": entrywise_failures,
    }


def verify_rosc_reduction(n_instances=20, seed=0):
    """Max |solve_smooth(alpha3=0) - solve_rosc| across instances."""
    worst = 0.0
    for idx in range(n_instances):
        inst = random_instance([seed, idx])
        params = SmoothParams(inst.params.alpha1, inst.params.alpha2, 0.0, inst.params.alpha4)
        Z_smooth = solve_smooth(inst.X, inst.W, inst.WW, params)
        Z_rosc = solve_rosc(inst.X, inst.W, params.alpha1, params.alpha2)
        worst = max(worst, float(np.abs(Z_smooth - Z_rosc).max()))
    return {"instances": n_instances, "max_reduction_gap": worst}


def verify_grouping_bound(n_instances=20, seed=0, slack=1e-12):
    """Count bound violations over exhaustive triples on small instances.

    Corrected-constant violations are expected to be zero; reference-
    constant violations are merely counted. Yields per-instance reports so
    callers can also dump the raw triples.
    """
    corrected_violations = 0
    reference_violations = 0
    triples = 0
    reports = []
    for idx in range(n_instances):
        inst = random_instance([seed, idx], n_range=(5, 12), p_range=(2, 6))
        Z = solve_smooth(inst.X, inst.W, inst.WW, inst.params)
        rep = grouping_bound_report(Z, inst.X, inst.W, inst.WW, inst.params)
        corrected_violations += int((rep["lhs"] > rep["bound_corrected"] + slack).sum())
        reference_violations += int((rep["lhs"] > rep["bound_paper"] + slack).sum())
        triples += rep["lhs"].size
        reports.append(rep)
    return {
        "instances": n_instances,
        "triples": triples,
        "corrected_violations": corrected_violations,
        "reference_violations": reference_violations,
    }, reports


def verify_grouping_limit(n_instances=20, seed=0):
    """Max probe value over constructed indistinguishable pairs."""
    worst = 0.0
    for idx in range(n_instances):
        inst, i, j = duplicate_pair_instance([seed, idx])
        worst = max(worst, grouping_effect_probe(inst.X, inst.W, inst.WW, inst.params, i, j))
    return {"instances": n_instances, "max_pair_gap": worst}


def run_all(n_instances=50, bound_instances=20, seed=0):
    """Full verification sweep; returns the summary and per-instance bound reports."""
    stationarity = verify_stationarity(n_instances, seed=seed)
    reduction = verify_rosc_reduction(min(n_instances, 20), seed=seed)
    bounds, reports = verify_grouping_bound(bound_instances, seed=seed)
    limit = verify_grouping_limit(min(n_instances, 20), seed=seed)
    return {
        "stationarity": stationarity,
        "rosc_reduction": reduction,
        "grouping_bound": bounds,
        "grouping_limit": limit,
    }, reports

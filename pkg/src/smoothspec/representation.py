"""Closed-form self-representation coefficient matrices.

Objects are represented as linear combinations of each other in the
pseudo-eigenvector embedding, X ~= X Z. The baseline (ROSC) solution ridge-
regularizes Z and pulls it toward the reachability matrix W. The smooth
solution adds a penalty keyed to second-order path counts WW = W @ W, so
pairs connected by many length-2 paths are pulled together while reachable
pairs with few paths (sudden direction changes) are pushed apart.

Both problems are strictly convex quadratics; each is solved with a single
symmetric positive-definite factorization shared by all right-hand-side
columns. The remaining functions verify the solutions independently:
stationarity residuals, the entrywise fixed-point identity, and the
grouping-effect bound certifying that highly correlated objects receive
nearly identical coefficient rows.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .validation import as_float_matrix, as_square_matrix


@dataclass(frozen=True)
class SmoothParams:
    """Penalty weights of the smooth objective.

    alpha1 weights the ridge term and must be positive (it makes the system
    matrix positive definite); alpha2 weights the pull toward W; alpha3
    weights the second-order smoothness term; alpha4 sets how many length-2
    paths count as "many" (pairs below that level are penalized, above it
    rewarded). alpha2 - alpha3 * alpha4 may well be negative; that is allowed.
    """

    alpha1: float = 0.01
    alpha2: float = 0.01
    alpha3: float = 0.01
    alpha4: float = 1.0

    def __post_init__(self):
        if self.alpha1 <= 0:
            raise ValueError(f"alpha1 must be positive, got {self.alpha1}")
        if self.alpha2 < 0 or self.alpha3 < 0 or self.alpha4 < 0:
            raise ValueError("alpha2, alpha3, alpha4 must be non-negative")

    @property
    def ridge_total(self):
        return self.alpha1 + self.alpha2 + self.alpha3

    @property
    def w_weight(self):
        return self.alpha2 - self.alpha3 * self.alpha4


def _check_instance(X, W, WW=None):
    X = as_float_matrix(X, name="X")
    W = as_square_matrix(W, name="W")
    n = X.shape[1]
    if W.shape[0] != n:
        raise ValueError(f"W is {W.shape[0]}x{W.shape[0]} but X has {n} columns")
    if WW is not None:
        WW = as_square_matrix(WW, name="WW")
        if WW.shape[0] != n:
            raise ValueError(f"WW is {WW.shape[0]}x{WW.shape[0]} but X has {n} columns")
    return X, W, WW


def _spd_solve(gram, ridge, rhs):
    A = gram + ridge * np.eye(gram.shape[0])
    try:
        factor = cho_factor(A, lower=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - ridge > 0 prevents this
        raise AssertionError(f"SPD factorization failed despite ridge {ridge}") from exc
    return cho_solve(factor, rhs)


def solve_rosc(X, W, alpha1, alpha2):
    """Baseline closed form: Z = (X'X + (a1+a2) I)^-1 (X'X + a2 W)."""
    if alpha1 <= 0:
        raise ValueError(f"alpha1 must be positive, got {alpha1}")
    if alpha2 < 0:
        raise ValueError(f"alpha2 must be non-negative, got {alpha2}")
    X, W, _ = _check_instance(X, W)
    gram = X.T @ X
    return _spd_solve(gram, alpha1 + alpha2, gram + alpha2 * W)


def solve_smooth(X, W, WW, params):
    """Smooth closed form.

    Z = (X'X + (a1+a2+a3) I)^-1 (X'X + (a2 - a3 a4) W + a3 WW)

    One Cholesky factorization of the shared system matrix covers all n
    right-hand-side columns.
    """
    X, W, WW = _check_instance(X, W, WW)
    gram = X.T @ X
    rhs = gram + params.w_weight * W + params.alpha3 * WW
    return _spd_solve(gram, params.ridge_total, rhs)


def stationarity_residual(Z, X, W, WW, params):
    """Entrywise absolute gradient of the smooth objective at Z.

    For the exact optimum every entry of
        -2 x_i'(x_p - X z_p) + 2 a1 Z_ip + 2 a2 (Z_ip - W_ip)
        + 2 a3 (Z_ip - WW_ip + a4 W_ip)
    vanishes; the returned matrix holds the absolute values, so its max is a
    direct optimality certificate.
    """
    X, W, WW = _check_instance(X, W, WW)
    Z = as_square_matrix(Z, name="Z")
    gram = X.T @ X
    grad = (
        -2.0 * (gram - gram @ Z)
        + 2.0 * params.alpha1 * Z
        + 2.0 * params.alpha2 * (Z - W)
        + 2.0 * params.alpha3 * (Z - WW + params.alpha4 * W)
    )
    return np.abs(grad)


def entrywise_solution_check(Z, X, W, WW, params, tol=1e-8):
    """True iff Z satisfies the fixed-point identity of the optimum.

    Z_ip = [x_i'(x_p - X z_p) + (a2 - a3 a4) W_ip + a3 WW_ip] / (a1 + a2 + a3)
    must hold for every entry, within tol.
    """
    X, W, WW = _check_instance(X, W, WW)
    Z = as_square_matrix(Z, name="Z")
    gram = X.T @ X
    expected = (
        gram - gram @ Z + params.w_weight * W + params.alpha3 * WW
    ) / params.ridge_total
    return bool(np.abs(Z - expected).max() <= tol)


def _bound_constants(W, WW, params):
    """Column constants of the grouping-effect bound.

    corrected: sqrt of the objective value at Z = 0, which upper-bounds the
    residual norm ||x_p - X z_p|| at the optimum:
        sqrt(1 + a2 ||w_p||^2 + a3 ||a4 w_p - ww_p||^2)
    reference: the looser constant commonly quoted for this bound,
        sqrt(1 + (a2 + a3 a4) ||w_p||^2 + a3 ||ww_p||^2),
    reported for diagnostics only (it drops the cross term and can be
    exceeded).
    """
    w_sq = (W * W).sum(axis=0)
    ww_sq = (WW * WW).sum(axis=0)
    cross = (params.alpha4 * W - WW)
    corrected = np.sqrt(1.0 + params.alpha2 * w_sq + params.alpha3 * (cross * cross).sum(axis=0))
    reference = np.sqrt(
        1.0 + (params.alpha2 + params.alpha3 * params.alpha4) * w_sq + params.alpha3 * ww_sq
    )
    return corrected, reference


def grouping_bound_report(Z, X, W, WW, params, max_triples=200_000, seed=0):
    """Evaluate the grouping-effect bound on (i, j, p) triples.

    For each triple the left side |Z_ip - Z_jp| is compared against

        [c sqrt(2 (1 - r)) + |a2 - a3 a4| |W_ip - W_jp|
         + a3 |WW_ip - WW_jp|] / (a1 + a2 + a3),  r = x_i' x_j,

    once with the corrected constant c (tight, holds exactly) and once with
    the looser reference constant. Requires unit-norm X columns. All n^3
    triples are enumerated unless that exceeds max_triples, in which case a
    seeded uniform sample is drawn.

    Returns
    -------
    dict of arrays with keys i, j, p, lhs, bound_corrected, bound_paper.
    """
    X, W, WW = _check_instance(X, W, WW)
    Z = as_square_matrix(Z, name="Z")
    n = Z.shape[0]
    norms = np.linalg.norm(X, axis=0)
    if np.abs(norms - 1.0).max() > 1e-9:
        raise ValueError("grouping bound requires unit-norm X columns")

    if n**3 <= max_triples:
        i, j, p = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
        i, j, p = i.ravel(), j.ravel(), p.ravel()
    else:
        rng = np.random.default_rng(seed)
        i = rng.integers(0, n, size=max_triples)
        j = rng.integers(0, n, size=max_triples)
        p = rng.integers(0, n, size=max_triples)

    gram = X.T @ X
    # correlations can overshoot 1 by roundoff; the distance term is then 0
    sep = np.sqrt(np.maximum(2.0 * (1.0 - gram[i, j]), 0.0))
    c_corr, c_ref = _bound_constants(W, WW, params)
    w_term = abs(params.w_weight) * np.abs(W[i, p] - W[j, p])
    ww_term = params.alpha3 * np.abs(WW[i, p] - WW[j, p])
    denom = params.ridge_total
    return {
        "i": i,
        "j": j,
        "p": p,
        "lhs": np.abs(Z[i, p] - Z[j, p]),
        "bound_corrected": (c_corr[p] * sep + w_term + ww_term) / denom,
        "bound_paper": (c_ref[p] * sep + w_term + ww_term) / denom,
    }


def grouping_effect_probe(X, W, WW, params, i, j):
    """Largest coefficient gap max_p |Z_ip - Z_jp| for one object pair.

    Indistinguishable pairs (equal embedding columns and equal reachability
    columns) must probe to ~0: that is the grouping effect.
    """
    Z = solve_smooth(X, W, WW, params)
    return float(np.abs(Z[i, :] - Z[j, :]).max())

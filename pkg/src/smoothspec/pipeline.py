"""End-to-end clustering pipeline and its scikit-learn estimator wrapper.

Stage order: tiny-cluster preprocessing -> similarity on centers -> mutual
K-NN reachability (W, WW) -> pseudo-eigenvector embedding -> coefficient
matrix -> affinity -> spectral embedding -> k-means -> label expansion back
to the original objects.
"""

import time
import warnings
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils import check_array

from . import metrics as _metrics
from .embedding import PowerIterationConfig, generate_pseudo_eigenvectors, row_normalize
from .reachability import mutual_knn, reachability, second_order
from .representation import SmoothParams, solve_rosc, solve_smooth, stationarity_residual
from .similarity import gaussian_similarity, zp_similarity
from .spectral import affinity_from_z, kmeans, spectral_embed
from .tiny_clusters import TinyClusterMap, build_tiny_clusters, default_epsilon, expand_labels
from .validation import as_feature_matrix

METHODS = ("smooth", "rosc", "pic-baseline")
SIMILARITIES = ("zp", "gaussian")


class ConfigError(ValueError):
    """Invalid pipeline configuration."""


class StageError(RuntimeError):
    """A pipeline stage failed; carries the stage name."""

    def __init__(self, stage, error):
        super().__init__(f"[{stage}] {error}")
        self.stage = stage
        self.error = error


@dataclass
class PipelineConfig:
    """Everything a pipeline run depends on.

    n_vectors defaults to n_clusters + 1 when unset. tiny_epsilon, when
    None, is derived as tiny_epsilon_rel times the (sampled) median pairwise
    distance. knn_k and zp_neighbors are clamped to the number of tiny-
    cluster centers minus one when the data collapses below them.
    """

    n_clusters: int
    method: str = "smooth"
    similarity: str = "zp"
    sigma: float = 1.0
    zp_neighbors: int = 7
    knn_k: int = 10
    n_vectors: Optional[int] = None
    alpha1: float = 0.01
    alpha2: float = 0.01
    alpha3: float = 0.01
    alpha4: float = 1.0
    tiny_epsilon: Optional[float] = None
    tiny_epsilon_rel: float = 0.01
    reach_diag: int = 0
    seed: int = 0
    restarts: int = 10
    pi_max_iter: int = 1000
    pi_accel_tol: float = 1e-5

    def validate(self):
        if self.n_clusters < 1:
            raise ConfigError(f"k must be >= 1, got {self.n_clusters}")
        if self.method not in METHODS:
            raise ConfigError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.similarity not in SIMILARITIES:
            raise ConfigError(
                f"similarity must be one of {SIMILARITIES}, got {self.similarity!r}"
            )
        if self.similarity == "gaussian" and self.sigma <= 0:
            raise ConfigError(f"sigma must be positive, got {self.sigma}")
        if self.zp_neighbors < 1:
            raise ConfigError(f"l must be >= 1, got {self.zp_neighbors}")
        if self.knn_k < 1:
            raise ConfigError(f"knn-k must be >= 1, got {self.knn_k}")
        if self.n_vectors is not None and self.n_vectors < 1:
            raise ConfigError(f"p must be >= 1, got {self.n_vectors}")
        if self.alpha1 <= 0:
            raise ConfigError(f"alpha1 must be > 0, got {self.alpha1}")
        if min(self.alpha2, self.alpha3, self.alpha4) < 0:
            raise ConfigError("alpha2, alpha3, alpha4 must be >= 0")
        if self.tiny_epsilon is not None and self.tiny_epsilon < 0:
            raise ConfigError(f"tiny-epsilon must be >= 0, got {self.tiny_epsilon}")
        if self.tiny_epsilon_rel < 0:
            raise ConfigError(
                f"tiny-epsilon-rel must be >= 0, got {self.tiny_epsilon_rel}"
            )
        if self.reach_diag not in (0, 1):
            raise ConfigError(f"w-diag must be 0 or 1, got {self.reach_diag}")
        if self.restarts < 1:
            raise ConfigError(f"restarts must be >= 1, got {self.restarts}")
        return self

    @property
    def effective_n_vectors(self):
        return self.n_clusters + 1 if self.n_vectors is None else self.n_vectors

    def smooth_params(self):
        return SmoothParams(self.alpha1, self.alpha2, self.alpha3, self.alpha4)


@dataclass
class PipelineResult:
    """Labels plus every intermediate product and the run report."""

    labels: np.ndarray
    center_labels: np.ndarray
    inertia: float
    degenerate: bool
    tiny_map: TinyClusterMap
    similarity: np.ndarray
    reach: np.ndarray
    second_order: np.ndarray
    pseudo_eigenvectors: np.ndarray
    coeff: Optional[np.ndarray]
    affinity: Optional[np.ndarray]
    embedding: Optional[np.ndarray]
    report: dict = field(default_factory=dict)


def _stage(name, timings, fn, *args, **kwargs):
    start = time.perf_counter()
    try:
        out = fn(*args, **kwargs)
    except (ConfigError, StageError):
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc
    timings[name] = time.perf_counter() - start
    return out


def run_pipeline(X_raw, config, truth=None):
    """Run the whole clustering pipeline on raw objects.

    Parameters
    ----------
    X_raw : ndarray of shape (n, d)
        Input objects.
    config : PipelineConfig
    truth : ndarray of shape (n,), optional
        Ground-truth labels; when given, agreement metrics land in the report.

    Returns
    -------
    PipelineResult
    """
    config.validate()
    X_raw = as_feature_matrix(X_raw, name="X_raw")
    timings = {}
    report = {"config": asdict(config), "warnings": []}

    epsilon = config.tiny_epsilon
    if epsilon is None:
        epsilon = default_epsilon(X_raw, rel=config.tiny_epsilon_rel, seed=config.seed)
    report["tiny_epsilon"] = float(epsilon)

    tiny = _stage("tiny_clusters", timings, build_tiny_clusters, X_raw, epsilon)
    centers = tiny.centers
    m = tiny.n_clusters
    report["n_objects"] = int(X_raw.shape[0])
    report["n_tiny_clusters"] = int(m)
    if m < 2:
        raise StageError(
            "tiny_clusters",
            ValueError(f"everything merged into {m} tiny cluster(s); lower epsilon"),
        )
    if config.n_clusters > m:
        raise StageError(
            "tiny_clusters",
            ValueError(f"k={config.n_clusters} exceeds {m} tiny-cluster centers"),
        )

    knn_k = min(config.knn_k, m - 1)
    if knn_k != config.knn_k:
        report["warnings"].append(f"knn-k clamped to {knn_k} (only {m} centers)")

    if config.similarity == "zp":
        zp_l = min(config.zp_neighbors, m - 1)
        if zp_l != config.zp_neighbors:
            report["warnings"].append(f"l clamped to {zp_l} (only {m} centers)")
        S = _stage("similarity", timings, zp_similarity, centers, zp_l)
    else:
        S = _stage("similarity", timings, gaussian_similarity, centers, config.sigma)

    adj = _stage("mutual_knn", timings, mutual_knn, centers, knn_k)
    W = _stage("reachability", timings, reachability, adj, diag=config.reach_diag)
    WW = _stage("second_order", timings, second_order, W)

    pi_config = PowerIterationConfig(
        n_vectors=config.effective_n_vectors,
        max_iter=config.pi_max_iter,
        accel_tol=config.pi_accel_tol,
        seed=config.seed,
    )

    def _embed():
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            M = row_normalize(S)
            X, steps = generate_pseudo_eigenvectors(M, pi_config)
        for w in caught:
            report["warnings"].append(str(w.message))
        return X, steps

    X, pi_steps = _stage("embedding", timings, _embed)
    report["pi_iterations"] = pi_steps.tolist()

    coeff = affinity = embedding = None
    if config.method == "pic-baseline":
        # baseline: cluster the pseudo-eigenvector columns directly
        assignment = _stage(
            "kmeans", timings, kmeans, X.T, config.n_clusters,
            seed=config.seed, restarts=config.restarts,
        )
        report["stationarity_max_residual"] = None
    else:
        if config.method == "smooth":
            params = config.smooth_params()
            coeff = _stage("coefficients", timings, solve_smooth, X, W, WW, params)
        else:
            params = SmoothParams(config.alpha1, config.alpha2, 0.0, config.alpha4)
            coeff = _stage(
                "coefficients", timings, solve_rosc, X, W, config.alpha1, config.alpha2
            )
        residual = stationarity_residual(coeff, X, W, WW, params)
        report["stationarity_max_residual"] = float(residual.max())
        affinity = _stage("affinity", timings, affinity_from_z, coeff)

        def _spectral():
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                E = spectral_embed(affinity, config.n_clusters)
            for w in caught:
                report["warnings"].append(str(w.message))
            return E

        embedding = _stage("spectral_embed", timings, _spectral)
        assignment = _stage(
            "kmeans", timings, kmeans, embedding, config.n_clusters,
            seed=config.seed, restarts=config.restarts,
        )

    labels = _stage("expand_labels", timings, expand_labels, tiny, assignment.labels)

    report["stage_seconds"] = timings
    report["inertia"] = assignment.inertia
    report["degenerate"] = assignment.degenerate
    if truth is not None:
        truth = np.asarray(truth)
        report["metrics"] = {
            "nmi": _metrics.nmi(labels, truth),
            "purity": _metrics.purity(labels, truth),
            "rand_index": _metrics.rand_index(labels, truth),
        }

    return PipelineResult(
        labels=labels,
        center_labels=assignment.labels,
        inertia=assignment.inertia,
        degenerate=assignment.degenerate,
        tiny_map=tiny,
        similarity=S,
        reach=W,
        second_order=WW,
        pseudo_eigenvectors=X,
        coeff=coeff,
        affinity=affinity,
        embedding=embedding,
        report=report,
    )


class SmoothSpectralClustering(BaseEstimator, ClusterMixin):
    """Smoothness-regularized spectral clustering for multi-scale data.

    Extremely close objects are first merged into tiny clusters; their
    centers are clustered through a self-representation coefficient matrix
    regularized by mutual-K-NN reachability and second-order path counts,
    then a standard normalized-Laplacian / k-means stage. Labels are
    expanded back to the original objects.

    Parameters
    ----------
    n_clusters : int
        Number of clusters to produce.
    method : {"smooth", "rosc", "pic-baseline"}, default "smooth"
        Coefficient-matrix variant, the reachability-only baseline, or
        k-means directly on the pseudo-eigenvector embedding.
    similarity : {"zp", "gaussian"}, default "zp"
        Self-tuning per-object bandwidths or a single global sigma.
    sigma : float, default 1.0
        Bandwidth for similarity="gaussian".
    zp_neighbors : int, default 7
        Neighbor rank used for the self-tuning bandwidths.
    knn_k : int, default 10
        K of the mutual K-NN graph.
    n_vectors : int or None, default None
        Number of pseudo-eigenvectors; None means n_clusters + 1.
    alpha1, alpha2, alpha3, alpha4 : float
        Penalty weights: ridge, reachability pull, smoothness pull, and the
        "many paths" threshold.
    tiny_epsilon : float or None, default None
        Absolute merge radius for tiny clusters; None derives it from
        tiny_epsilon_rel.
    tiny_epsilon_rel : float, default 0.01
        Fraction of the median pairwise distance used when tiny_epsilon is
        None.
    reach_diag : {0, 1}, default 0
        Diagonal convention of the reachability matrix.
    random_state : int, default 0
        Seed for every stochastic stage (data sampling, power iteration,
        k-means).
    restarts : int, default 10
        k-means restarts.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        Cluster label per input object.
    inertia_ : float
        Final k-means objective value.
    result_ : PipelineResult
        All intermediates (reachability matrices, embeddings, coefficient
        matrix) and the run report.

    Examples
    --------
    >>> from smoothspec import SmoothSpectralClustering, generate_multiscale
    >>> X, y = generate_multiscale(
    ...     [{"center": [0, 0], "spread": 0.1, "count": 40},
    ...      {"center": [20, 0], "spread": 1.0, "count": 40}], seed=0)
    >>> model = SmoothSpectralClustering(
    ...     n_clusters=2, tiny_epsilon_rel=0.001).fit(X)
    >>> model.labels_.shape
    (80,)
    """

    def __init__(
        self,
        n_clusters=2,
        method="smooth",
        similarity="zp",
        sigma=1.0,
        zp_neighbors=7,
        knn_k=10,
        n_vectors=None,
        alpha1=0.01,
        alpha2=0.01,
        alpha3=0.01,
        alpha4=1.0,
        tiny_epsilon=None,
        tiny_epsilon_rel=0.01,
        reach_diag=0,
        random_state=0,
        restarts=10,
    ):
        self.n_clusters = n_clusters
        self.method = method
        self.similarity = similarity
        self.sigma = sigma
        self.zp_neighbors = zp_neighbors
        self.knn_k = knn_k
        self.n_vectors = n_vectors
        self.alpha1 = alpha1
        self.alpha2 = alpha2
        self.alpha3 = alpha3
        self.alpha4 = alpha4
        self.tiny_epsilon = tiny_epsilon
        self.tiny_epsilon_rel = tiny_epsilon_rel
        self.reach_diag = reach_diag
        self.random_state = random_state
        self.restarts = restarts

    def _config(self):
        return PipelineConfig(
            n_clusters=self.n_clusters,
            method=self.method,
            similarity=self.similarity,
            sigma=self.sigma,
            zp_neighbors=self.zp_neighbors,
            knn_k=self.knn_k,
            n_vectors=self.n_vectors,
            alpha1=self.alpha1,
            alpha2=self.alpha2,
            alpha3=self.alpha3,
            alpha4=self.alpha4,
            tiny_epsilon=self.tiny_epsilon,
            tiny_epsilon_rel=self.tiny_epsilon_rel,
            reach_diag=self.reach_diag,
            seed=self.random_state,
            restarts=self.restarts,
        )

    def fit(self, X, y=None):
        """Cluster X and store labels plus all intermediates.

        Parameters
        ----------
        X : array-like of shape (n_samples, n_features)
        y : ignored
        """
        X = check_array(X, dtype=np.float64)
        result = run_pipeline(X, self._config())
        self.result_ = result
        self.labels_ = result.labels
        self.inertia_ = result.inertia
        self.n_features_in_ = X.shape[1]
        return self

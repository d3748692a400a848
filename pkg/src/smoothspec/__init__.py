"""Smoothness-regularized spectral clustering for multi-scale data."""

from .datasets import BlobSpec, generate_multiscale, load_blob_specs, load_csv
from .embedding import (
    PowerIterationConfig,
    generate_pseudo_eigenvectors,
    power_iteration,
    row_normalize,
)
from .metrics import nmi, purity, rand_index
from .pipeline import (
    ConfigError,
    PipelineConfig,
    PipelineResult,
    SmoothSpectralClustering,
    StageError,
    run_pipeline,
)
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
from .similarity import gaussian_similarity, local_scales, zp_similarity
from .spectral import ClusterAssignment, affinity_from_z, kmeans, spectral_embed
from .tiny_clusters import (
    TinyClusterMap,
    build_tiny_clusters,
    default_epsilon,
    expand_labels,
    median_pairwise_distance,
)

__version__ = "0.1.0"

__all__ = [
    "BlobSpec",
    "ClusterAssignment",
    "ConfigError",
    "PipelineConfig",
    "PipelineResult",
    "PowerIterationConfig",
    "SmoothParams",
    "SmoothSpectralClustering",
    "StageError",
    "TinyClusterMap",
    "affinity_from_z",
    "build_tiny_clusters",
    "default_epsilon",
    "entrywise_solution_check",
    "expand_labels",
    "gaussian_similarity",
    "generate_multiscale",
    "generate_pseudo_eigenvectors",
    "grouping_bound_report",
    "grouping_effect_probe",
    "kmeans",
    "load_blob_specs",
    "load_csv",
    "local_scales",
    "median_pairwise_distance",
    "mutual_knn",
    "nmi",
    "power_iteration",
    "purity",
    "rand_index",
    "reachability",
    "row_normalize",
    "run_pipeline",
    "second_order",
    "solve_rosc",
    "solve_smooth",
    "spectral_embed",
    "stationarity_residual",
    "zp_similarity",
]

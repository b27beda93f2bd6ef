"""Consensus clustering toolkit.

Fuses hard partitions from multiple clustering algorithms into one consensus
partition, treating each algorithm as a noisy observer with its own confusion
matrix (Dawid-Skene EM), alongside an aligned majority-vote baseline, built-in
k-means/GMM ensemble members, synthetic data generators, ARI scoring, and a
benchmark harness.
"""

from .alignment import LabelPermutation, align_ensemble, best_permutation
from .clusterers import COVARIANCE_FAMILIES, FitResult, GmmParams, gmm_fit, kmeans
from .dawid_skene import (
    ConsensusModel,
    EmConfig,
    e_step,
    fit,
    hard_labels,
    init_responsibilities,
    log_likelihood,
    m_step,
)
from .datagen import (
    Dataset,
    MixtureSpec,
    PRESET_NAMES,
    sample_gaussian_mixture,
    sample_manly_mixture,
    sample_preset,
)
from .harness import (
    DatasetSpec,
    ExperimentConfig,
    ExperimentReport,
    MemberSpec,
    run_experiment,
    summarize,
)
from .io_ingest import (
    load_dataset_csv,
    load_partitions_csv,
    write_results_csv,
)
from .metrics import ContingencyTable, adjusted_rand_index, contingency_table
from .types import (
    ErrorRates,
    LabelMatrix,
    Partition,
    Priors,
    Responsibilities,
    relabel_contiguous,
    validate_label_matrix,
)
from .vote import majority_vote

__all__ = [
    "COVARIANCE_FAMILIES",
    "ConsensusModel",
    "ContingencyTable",
    "Dataset",
    "DatasetSpec",
    "EmConfig",
    "ErrorRates",
    "ExperimentConfig",
    "ExperimentReport",
    "FitResult",
    "GmmParams",
    "LabelMatrix",
    "LabelPermutation",
    "MemberSpec",
    "MixtureSpec",
    "PRESET_NAMES",
    "Partition",
    "Priors",
    "Responsibilities",
    "adjusted_rand_index",
    "align_ensemble",
    "best_permutation",
    "contingency_table",
    "e_step",
    "fit",
    "gmm_fit",
    "hard_labels",
    "init_responsibilities",
    "kmeans",
    "load_dataset_csv",
    "load_partitions_csv",
    "log_likelihood",
    "m_step",
    "majority_vote",
    "relabel_contiguous",
    "run_experiment",
    "sample_gaussian_mixture",
    "sample_manly_mixture",
    "sample_preset",
    "summarize",
    "validate_label_matrix",
    "write_results_csv",
]

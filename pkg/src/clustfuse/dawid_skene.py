"""Consensus clustering by Dawid-Skene EM over ensemble member labels.

Each clustering algorithm is treated as a noisy observer with its own G x G
confusion matrix. EM alternates between estimating posterior responsibilities
for the latent true clusters (E-step) and re-estimating class priors and
per-observer confusion matrices (M-step) until the observed-data
log-likelihood converges.

All probability products are accumulated in log space; E-step normalization
uses log-sum-exp so long observer products cannot underflow.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import logsumexp

from .errors import DegenerateRow, EmptyCluster, NonFinite
from .types import ErrorRates, LabelMatrix, Partition, Priors, Responsibilities


@dataclass(frozen=True)
class EmConfig:
    max_iterations: int = 1000
    rel_tolerance: float = 1e-8
    # Pseudocount for confusion-rate cells. Large values noticeably perturb
    # the M-step argmax and can make the raw log-likelihood dip; 1e-4 is
    # enough to prevent log-zero lock-in while keeping EM monotone in practice.
    smoothing: float = 1e-4

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.rel_tolerance <= 0:
            raise ValueError("rel_tolerance must be positive")
        if self.smoothing < 0:
            raise ValueError("smoothing must be non-negative")


@dataclass(frozen=True)
class ConsensusModel:
    """Fitted state: priors, confusion tensor, responsibilities, likelihood trace."""

    priors: Priors
    error_rates: ErrorRates
    responsibilities: Responsibilities
    loglik_trace: tuple = field(default_factory=tuple)
    n_iterations: int = 0
    converged: bool = False


def init_responsibilities(matrix: LabelMatrix) -> Responsibilities:
    """Vote-share initialization: z[i, g] = fraction of observers voting g on i."""
    n, k = matrix.n_items, matrix.n_observers
    z = np.zeros((n, matrix.n_clusters))
    rows = np.repeat(np.arange(n), k)
    np.add.at(z, (rows, matrix.entries.ravel()), 1.0)
    return Responsibilities(z / k)


def _log_members(matrix: LabelMatrix, priors: Priors, error_rates: ErrorRates):
    """log pi_g + sum_k log eps[k, g, label_ik], shape (N, G)."""
    with np.errstate(divide="ignore"):
        log_pi = np.log(priors.pi)
        log_eps = np.log(error_rates.eps)
    # log_eps[k][:, labels[:, k]] has shape (G, N); accumulate over observers.
    acc = np.zeros((matrix.n_items, matrix.n_clusters))
    for k in range(matrix.n_observers):
        acc += log_eps[k][:, matrix.entries[:, k]].T
    return acc + log_pi


def e_step(matrix: LabelMatrix, priors: Priors, error_rates: ErrorRates) -> Responsibilities:
    """Posterior responsibilities, normalized per item via log-sum-exp."""
    log_post = _log_members(matrix, priors, error_rates)
    finite = np.isfinite(log_post.max(axis=1))
    if not finite.all():
        bad = int(np.flatnonzero(~finite)[0])
        raise DegenerateRow(f"item {bad} has zero likelihood under every cluster")
    log_post -= log_post.max(axis=1, keepdims=True)
    z = np.exp(log_post)
    z /= z.sum(axis=1, keepdims=True)
    return Responsibilities(z)


def m_step(matrix: LabelMatrix, responsibilities: Responsibilities, smoothing: float = 0.0):
    """Maximum-likelihood priors and confusion rates, with optional pseudocounts.

    eps[k, g, h] = (s + sum_i z_ig [label_ik == h]) / (G*s + sum_i z_ig).
    Priors are the unsmoothed responsibility means.
    """
    z = responsibilities.z
    n, g = z.shape
    k = matrix.n_observers
    mass = z.sum(axis=0)
    if smoothing == 0.0 and mass.min() <= 0.0:
        raise EmptyCluster(f"cluster {int(mass.argmin())} has zero responsibility mass")
    counts = np.zeros((k, g, g))
    for kk in range(k):
        np.add.at(counts[kk].T, matrix.entries[:, kk], z)
    eps = (counts + smoothing) / (mass + g * smoothing)[None, :, None]
    return Priors(mass / n), ErrorRates(eps)


def log_likelihood(matrix: LabelMatrix, priors: Priors, error_rates: ErrorRates) -> float:
    """Observed-data log-likelihood (nats), exact sum over clusters per item."""
    per_item = logsumexp(_log_members(matrix, priors, error_rates), axis=1)
    if not np.isfinite(per_item).all():
        bad = int(np.flatnonzero(~np.isfinite(per_item))[0])
        raise NonFinite(f"item {bad} has zero likelihood under every cluster")
    return float(per_item.sum())


def fit(matrix: LabelMatrix, config: EmConfig = EmConfig()) -> ConsensusModel:
    """Run EM from the vote-share initialization until convergence.

    The first step is an M-step (the initializer is a responsibility matrix);
    iteration stops when |delta loglik| / (1 + |loglik|) < rel_tolerance or at
    max_iterations. Deterministic given the matrix: there is no randomness in
    the initializer.
    """
    z = init_responsibilities(matrix)
    trace = []
    prev = None
    converged = False
    iterations = 0
    for _ in range(config.max_iterations):
        priors, eps = m_step(matrix, z, config.smoothing)
        ll = log_likelihood(matrix, priors, eps)
        trace.append(ll)
        iterations += 1
        if prev is not None and abs(ll - prev) / (1.0 + abs(ll)) < config.rel_tolerance:
            converged = True
            break
        prev = ll
        z = e_step(matrix, priors, eps)
    # Refresh so the returned responsibilities match the returned parameters.
    z = e_step(matrix, priors, eps)
    return ConsensusModel(
        priors=priors,
        error_rates=eps,
        responsibilities=z,
        loglik_trace=tuple(trace),
        n_iterations=iterations,
        converged=converged,
    )


def hard_labels(model: ConsensusModel) -> Partition:
    """Argmax consensus labels; ties go to the lowest cluster index."""
    z = model.responsibilities.z
    return Partition(np.argmax(z, axis=1), z.shape[1])

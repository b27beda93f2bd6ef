"""Built-in ensemble members: seeded k-means and Gaussian-mixture EM.

The GMM supports three covariance families (spherical, diagonal, full) so a
small roster of members still brings genuinely different modeling assumptions
to the ensemble. GMM fits are initialized from a k-means partition.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from .dawid_skene import EmConfig
from .errors import SingularComponent, TooFewPoints
from .types import Partition

SPHERICAL = "spherical"
DIAGONAL = "diagonal"
FULL = "full"
COVARIANCE_FAMILIES = (SPHERICAL, DIAGONAL, FULL)


@dataclass(frozen=True)
class GmmParams:
    weights: np.ndarray
    means: np.ndarray
    covariances: np.ndarray  # (G, d, d)


@dataclass(frozen=True)
class FitResult:
    partition: Partition
    params: Optional[GmmParams]
    loglik: float
    n_iterations: int
    converged: bool


def _as_matrix(data):
    x = np.asarray(getattr(data, "features", data), dtype=np.float64)
    if x.ndim == 1:
        x = x[:, None]
    return x


def kmeans(data, n_clusters: int, seed: int, max_iter: int = 300) -> FitResult:
    """Lloyd's algorithm from seeded random distinct-point initial centers.

    Empty clusters are repaired by reseeding the center to the point farthest
    from it. Deterministic given the seed. FitResult.loglik holds the negated
    within-cluster sum of squares (the objective, up to sign).
    """
    x = _as_matrix(data)
    n = x.shape[0]
    if n < n_clusters:
        raise TooFewPoints(f"need at least {n_clusters} points, got {n}")
    rng = np.random.default_rng(seed)
    centers = x[rng.choice(n, size=n_clusters, replace=False)].copy()
    labels = np.zeros(n, dtype=np.int64)
    iterations = 0
    converged = False
    for _ in range(max_iter):
        iterations += 1
        d2 = ((x[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
        new_labels = np.argmin(d2, axis=1)
        for g in range(n_clusters):
            mask = new_labels == g
            if mask.any():
                centers[g] = x[mask].mean(axis=0)
            else:
                far = np.argmax(((x - centers[g]) ** 2).sum(axis=1))
                centers[g] = x[far]
                new_labels[far] = g
        if np.array_equal(new_labels, labels) and iterations > 1:
            converged = True
            labels = new_labels
            break
        labels = new_labels
    wcss = float(((x - centers[labels]) ** 2).sum())
    return FitResult(
        partition=Partition(labels, n_clusters),
        params=None,
        loglik=-wcss,
        n_iterations=iterations,
        converged=converged,
    )


def _estimate_covariances(x, resp, means, mass, family, floor):
    n, d = x.shape
    g = means.shape[0]
    covs = np.zeros((g, d, d))
    for j in range(g):
        diff = x - means[j]
        weighted = resp[:, j][:, None] * diff
        full = weighted.T @ diff / mass[j]
        if family == FULL:
            cov = (full + full.T) / 2.0
        elif family == DIAGONAL:
            cov = np.diag(np.diag(full))
        else:
            cov = np.eye(d) * (np.trace(full) / d)
        covs[j] = cov + np.eye(d) * floor
    return covs


def _log_gaussian(x, mean, cov):
    d = x.shape[1]
    sign, logdet = np.linalg.slogdet(cov)
    if sign <= 0:
        raise SingularComponent("covariance is not positive definite")
    solved = np.linalg.solve(cov, (x - mean).T).T
    maha = ((x - mean) * solved).sum(axis=1)
    return -0.5 * (d * np.log(2.0 * np.pi) + logdet + maha)


def gmm_fit(
    data,
    n_clusters: int,
    family: str,
    init: Partition,
    config: EmConfig = EmConfig(),
) -> FitResult:
    """Gaussian-mixture EM with a family-constrained covariance M-step.

    Initialized from the given hard partition; a small floor proportional to
    the data's overall variance is added to covariance diagonals every M-step
    to keep components non-singular.
    """
    if family not in COVARIANCE_FAMILIES:
        raise ValueError(f"unknown covariance family: {family!r}")
    x = _as_matrix(data)
    n, d = x.shape
    if n < n_clusters:
        raise TooFewPoints(f"need at least {n_clusters} points, got {n}")
    overall = np.cov(x, rowvar=False).reshape(d, d)
    floor = 1e-6 * max(np.trace(overall) / d, 1e-300)

    resp = np.zeros((n, n_clusters))
    resp[np.arange(n), init.labels] = 1.0
    # Empty initial clusters fall back to global statistics with tiny weight.
    empty = resp.sum(axis=0) == 0
    if empty.any():
        resp[:, empty] = 1e-6
        resp /= resp.sum(axis=1, keepdims=True)

    loglik = -np.inf
    converged = False
    iterations = 0
    for _ in range(config.max_iterations):
        iterations += 1
        # M-step
        mass = resp.sum(axis=0)
        if mass.min() <= n * 1e-12:
            raise SingularComponent(
                f"component {int(mass.argmin())} lost all responsibility mass"
            )
        weights = mass / n
        means = resp.T @ x / mass[:, None]
        covs = _estimate_covariances(x, resp, means, mass, family, floor)
        # E-step
        log_dens = np.column_stack(
            [_log_gaussian(x, means[j], covs[j]) for j in range(n_clusters)]
        )
        weighted = log_dens + np.log(weights)
        new_loglik = float(logsumexp(weighted, axis=1).sum())
        log_resp = weighted - logsumexp(weighted, axis=1, keepdims=True)
        resp = np.exp(log_resp)
        if abs(new_loglik - loglik) / (1.0 + abs(new_loglik)) < config.rel_tolerance:
            loglik = new_loglik
            converged = True
            break
        loglik = new_loglik

    labels = Partition(np.argmax(resp, axis=1), n_clusters)
    params = GmmParams(weights=weights, means=means, covariances=covs)
    return FitResult(
        partition=labels,
        params=params,
        loglik=loglik,
        n_iterations=iterations,
        converged=converged,
    )

"""Seeded synthetic mixture generators with ground-truth labels.

Two flavors: plain Gaussian mixtures, and skewed mixtures produced by pushing
Gaussian draws through the inverse Manly transformation
x_j = log(lambda_j * y_j + 1) / lambda_j (lambda_j = 0 passes through).
Named presets provide ready-made easy/skewed/anisotropic regimes for the
benchmark harness.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BadSpec, RejectionOverflow
from .types import Partition

_MAX_REJECTIONS = 10**6


@dataclass(frozen=True)
class MixtureSpec:
    weights: np.ndarray
    means: np.ndarray  # (G, d)
    covariances: np.ndarray  # (G, d, d)
    skew: Optional[np.ndarray] = None  # (G, d) Manly lambdas, or None

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=np.float64)
        m = np.asarray(self.means, dtype=np.float64)
        c = np.asarray(self.covariances, dtype=np.float64)
        if w.ndim != 1 or w.min() < 0 or abs(w.sum() - 1.0) > 1e-9:
            raise BadSpec("weights must be non-negative and sum to 1")
        if m.ndim != 2 or m.shape[0] != w.size:
            raise BadSpec("means must be G x d")
        if c.shape != (w.size, m.shape[1], m.shape[1]):
            raise BadSpec("covariances must be G x d x d")
        for j in range(w.size):
            if not np.allclose(c[j], c[j].T) or np.linalg.eigvalsh(c[j]).min() <= 0:
                raise BadSpec(f"covariance {j} is not symmetric positive definite")
        skew = self.skew
        if skew is not None:
            skew = np.asarray(skew, dtype=np.float64)
            if skew.shape != m.shape:
                raise BadSpec("skew must be G x d (one lambda per component and dim)")
            object.__setattr__(self, "skew", skew)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "means", m)
        object.__setattr__(self, "covariances", c)

    @property
    def n_components(self):
        return self.weights.size

    @property
    def n_features(self):
        return self.means.shape[1]


@dataclass(frozen=True)
class Dataset:
    features: np.ndarray
    truth: Optional[Partition] = None
    column_names: Optional[tuple] = None

    def __post_init__(self):
        x = np.asarray(self.features, dtype=np.float64).copy()
        if x.ndim != 2 or not np.isfinite(x).all():
            raise BadSpec("features must be a finite N x d matrix")
        if self.truth is not None and len(self.truth) != x.shape[0]:
            raise BadSpec("truth length must match the number of rows")
        x.flags.writeable = False
        object.__setattr__(self, "features", x)

    @property
    def n_items(self):
        return self.features.shape[0]

    @property
    def n_features(self):
        return self.features.shape[1]


def _draw_components(spec, n, rng):
    labels = rng.choice(spec.n_components, size=n, p=spec.weights)
    draws = np.empty((n, spec.n_features))
    for i in range(n):
        g = labels[i]
        draws[i] = rng.multivariate_normal(spec.means[g], spec.covariances[g])
    return labels, draws


def sample_gaussian_mixture(spec: MixtureSpec, n: int, seed: int) -> Dataset:
    """Draw n points from the Gaussian mixture; truth labels recorded."""
    if spec.skew is not None:
        raise BadSpec("spec has skew parameters; use sample_manly_mixture")
    if n < 1:
        raise BadSpec("n must be >= 1")
    rng = np.random.default_rng(seed)
    labels, draws = _draw_components(spec, n, rng)
    return Dataset(features=draws, truth=Partition(labels, spec.n_components))


def manly_forward(x, lam):
    """(exp(lam * x) - 1) / lam per dimension; identity where lam == 0."""
    x = np.asarray(x, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    out = x.copy()
    nz = lam != 0
    out[..., nz] = (np.exp(lam[nz] * x[..., nz]) - 1.0) / lam[nz]
    return out


def _manly_inverse(y, lam):
    # log(lam*y + 1)/lam; caller guarantees lam*y + 1 > 0.
    out = y.copy()
    nz = lam != 0
    out[nz] = np.log(lam[nz] * y[nz] + 1.0) / lam[nz]
    return out


def sample_manly_mixture(spec: MixtureSpec, n: int, seed: int) -> Dataset:
    """Draw Gaussian points and skew them via the inverse Manly transformation.

    Draws violating lam * y + 1 > 0 are rejected and redrawn from the same
    component. With all lambdas zero this reproduces sample_gaussian_mixture
    bit for bit under the same seed.
    """
    if spec.skew is None:
        raise BadSpec("spec lacks skew parameters; use sample_gaussian_mixture")
    if n < 1:
        raise BadSpec("n must be >= 1")
    rng = np.random.default_rng(seed)
    labels, draws = _draw_components(spec, n, rng)
    features = np.empty_like(draws)
    rejections = 0
    for i in range(n):
        g = labels[i]
        lam = spec.skew[g]
        y = draws[i]
        while np.any(lam * y + 1.0 <= 0):
            rejections += 1
            if rejections > _MAX_REJECTIONS:
                raise RejectionOverflow(
                    "too many rejected draws; lambda/mean/covariance combination "
                    "puts most mass outside the transformation's domain"
                )
            y = rng.multivariate_normal(spec.means[g], spec.covariances[g])
        features[i] = _manly_inverse(y, lam)
    return Dataset(features=features, truth=Partition(labels, spec.n_components))


def _blob_spec(means, scale=1.0):
    means = np.asarray(means, dtype=np.float64)
    g, d = means.shape
    return MixtureSpec(
        weights=np.full(g, 1.0 / g),
        means=means,
        covariances=np.repeat(np.eye(d)[None] * scale**2, g, axis=0),
    )


def preset(name: str):
    """Named (spec, n) presets covering easy, skewed, and anisotropic regimes."""
    if name == "x2-like":
        # Three well-separated spherical Gaussian clusters: the easy regime.
        return _blob_spec([[0.0, 0.0], [6.0, 0.0], [0.0, 6.0]]), 300
    if name == "manly-like":
        # Three skewed clusters; Gaussian-family members are misspecified here.
        spec = MixtureSpec(
            weights=np.array([0.4, 0.3, 0.3]),
            means=np.array([[0.0, 0.0], [4.5, 0.0], [0.0, 4.5]]),
            covariances=np.repeat(np.eye(2)[None], 3, axis=0),
            skew=np.array([[1.2, 1.0], [0.9, 1.3], [1.1, 0.8]]),
        )
        return spec, 1000
    if name == "aniso-like":
        # Elongated correlated clusters; covariance family choice matters.
        cov = np.array([[4.0, 1.9], [1.9, 1.0]])
        spec = MixtureSpec(
            weights=np.full(3, 1.0 / 3.0),
            means=np.array([[0.0, 0.0], [5.0, 1.5], [2.0, 4.5]]),
            covariances=np.repeat(cov[None], 3, axis=0),
        )
        return spec, 400
    raise BadSpec(f"unknown preset: {name!r}")


PRESET_NAMES = ("x2-like", "manly-like", "aniso-like")


def sample_preset(name: str, seed: int) -> Dataset:
    spec, n = preset(name)
    if spec.skew is not None:
        return sample_manly_mixture(spec, n, seed)
    return sample_gaussian_mixture(spec, n, seed)

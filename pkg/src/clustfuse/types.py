"""Core domain types: partitions, label matrices, and probability containers.

All types validate on construction and are immutable afterwards, so they can
be shared freely across threads.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EmptyInput, NegativeLabel, OutOfRangeLabel

PROB_TOL = 1e-9


def _frozen_int_array(values, ndim):
    arr = np.asarray(values)
    if arr.dtype == object or arr.ndim != ndim:
        raise EmptyInput(f"expected a rectangular {ndim}-d integer array")
    arr = arr.astype(np.int64, copy=True)
    arr.flags.writeable = False
    return arr


def _frozen_float_array(values, ndim):
    arr = np.asarray(values, dtype=np.float64).copy()
    if arr.ndim != ndim:
        raise EmptyInput(f"expected a {ndim}-d numeric array")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Partition:
    """Hard cluster labels for one clustering: values in [0, n_clusters)."""

    labels: np.ndarray
    n_clusters: int

    def __post_init__(self):
        labels = _frozen_int_array(self.labels, ndim=1)
        if labels.size < 1:
            raise EmptyInput("partition must contain at least one item")
        if labels.min() < 0 or labels.max() >= self.n_clusters:
            raise OutOfRangeLabel(
                f"labels must lie in [0, {self.n_clusters}); "
                f"found range [{labels.min()}, {labels.max()}]"
            )
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return self.labels.size


@dataclass(frozen=True)
class LabelMatrix:
    """N x K matrix of hard labels; column k is observer k's partition."""

    entries: np.ndarray
    n_clusters: int

    def __post_init__(self):
        entries = _frozen_int_array(self.entries, ndim=2)
        if entries.shape[0] < 1 or entries.shape[1] < 1:
            raise EmptyInput("label matrix needs at least one row and one column")
        if entries.min() < 0 or entries.max() >= self.n_clusters:
            raise OutOfRangeLabel(
                f"entries must lie in [0, {self.n_clusters}); "
                f"found range [{entries.min()}, {entries.max()}]"
            )
        object.__setattr__(self, "entries", entries)

    @property
    def n_items(self):
        return self.entries.shape[0]

    @property
    def n_observers(self):
        return self.entries.shape[1]

    def column(self, k):
        """Observer k's labels as a Partition."""
        return Partition(self.entries[:, k], self.n_clusters)


@dataclass(frozen=True)
class Responsibilities:
    """N x G posterior membership probabilities; rows sum to 1."""

    z: np.ndarray

    def __post_init__(self):
        z = _frozen_float_array(self.z, ndim=2)
        if z.size == 0:
            raise EmptyInput("responsibilities must be non-empty")
        if z.min() < -PROB_TOL or np.abs(z.sum(axis=1) - 1.0).max() > PROB_TOL:
            raise ValueError("responsibility rows must be probabilities summing to 1")
        object.__setattr__(self, "z", z)


@dataclass(frozen=True)
class ErrorRates:
    """K x G x G tensor; eps[k, g, h] = P(observer k reports h | truth g)."""

    eps: np.ndarray

    def __post_init__(self):
        eps = _frozen_float_array(self.eps, ndim=3)
        if eps.shape[1] != eps.shape[2]:
            raise ValueError("error-rate tensor must be K x G x G")
        if eps.min() < 0 or np.abs(eps.sum(axis=2) - 1.0).max() > PROB_TOL:
            raise ValueError("each (observer, truth) row must sum to 1")
        object.__setattr__(self, "eps", eps)


@dataclass(frozen=True)
class Priors:
    """Length-G prior class probabilities."""

    pi: np.ndarray

    def __post_init__(self):
        pi = _frozen_float_array(self.pi, ndim=1)
        if pi.min() < 0 or abs(pi.sum() - 1.0) > PROB_TOL:
            raise ValueError("priors must be non-negative and sum to 1")
        object.__setattr__(self, "pi", pi)


def validate_label_matrix(entries, n_clusters):
    """Build a LabelMatrix, rejecting out-of-range labels and empty shapes."""
    arr = np.asarray(entries)
    if arr.size == 0:
        raise EmptyInput("label matrix needs at least one row and one column")
    return LabelMatrix(arr, n_clusters)


def relabel_contiguous(labels):
    """Re-code labels to 0..G-1 in order of first appearance.

    Returns the normalized Partition and the old->new label mapping.
    Pairwise co-membership is unchanged.
    """
    arr = np.asarray(labels)
    if arr.size == 0:
        raise EmptyInput("cannot relabel an empty sequence")
    if arr.dtype == object or arr.ndim != 1:
        raise EmptyInput("expected a 1-d integer sequence")
    arr = arr.astype(np.int64)
    if arr.min() < 0:
        raise NegativeLabel(f"labels must be non-negative; found {arr.min()}")
    mapping = {}
    out = np.empty_like(arr)
    for i, lab in enumerate(arr.tolist()):
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return Partition(out, len(mapping)), mapping

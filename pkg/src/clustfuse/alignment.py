"""Cluster-label alignment between ensemble members.

Majority vote needs all members to speak the same label language; this module
finds, for each member, the relabeling that maximizes item-wise agreement with
a reference member. The optimum is found by solving a linear assignment
problem on the contingency table; ties are broken toward the lexicographically
smallest permutation so results are reproducible.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import BadColumnIndex, ClusterCountMismatch, LengthMismatch
from .metrics import contingency_table
from .types import LabelMatrix, Partition


@dataclass(frozen=True)
class LabelPermutation:
    """A bijection on [0, G) used to relabel one partition."""

    perm: np.ndarray

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.int64).copy()
        if sorted(perm.tolist()) != list(range(perm.size)):
            raise ValueError("perm must be a permutation of 0..G-1")
        perm.flags.writeable = False
        object.__setattr__(self, "perm", perm)

    def apply(self, labels: np.ndarray) -> np.ndarray:
        return self.perm[labels]


def _max_assignment(weights: np.ndarray) -> int:
    rows, cols = linear_sum_assignment(weights, maximize=True)
    return int(weights[rows, cols].sum())


def best_permutation(reference: Partition, other: Partition):
    """Permutation of `other`'s labels maximizing agreement with `reference`.

    Returns (LabelPermutation, agreement). Among equally good permutations the
    lexicographically smallest one is chosen.
    """
    if len(reference) != len(other):
        raise LengthMismatch(
            f"partition lengths differ: {len(reference)} vs {len(other)}"
        )
    if reference.n_clusters != other.n_clusters:
        raise ClusterCountMismatch(
            f"cluster counts differ: {reference.n_clusters} vs {other.n_clusters}"
        )
    g = reference.n_clusters
    # weights[u, v] = items gained by mapping other-label u to v
    weights = contingency_table(other, reference).counts.astype(np.int64)
    best = _max_assignment(weights)

    # Fix perm[u] to the smallest v that keeps the optimum attainable.
    perm = np.full(g, -1, dtype=np.int64)
    free_cols = list(range(g))
    remaining = weights
    fixed_gain = 0
    for u in range(g):
        for j, v in enumerate(free_cols):
            rest = np.delete(np.delete(remaining, 0, axis=0), j, axis=1)
            gain = fixed_gain + int(remaining[0, j])
            if rest.size:
                gain += _max_assignment(rest)
            if gain == best:
                perm[u] = v
                fixed_gain += int(remaining[0, j])
                remaining = np.delete(np.delete(remaining, 0, axis=0), j, axis=1)
                free_cols.pop(j)
                break
    return LabelPermutation(perm), best


def align_ensemble(matrix: LabelMatrix, reference_column: int = 0) -> LabelMatrix:
    """Relabel every column to best agree with the reference column."""
    if not 0 <= reference_column < matrix.n_observers:
        raise BadColumnIndex(
            f"reference column {reference_column} outside [0, {matrix.n_observers})"
        )
    reference = matrix.column(reference_column)
    aligned = np.empty_like(matrix.entries)
    for k in range(matrix.n_observers):
        if k == reference_column:
            aligned[:, k] = matrix.entries[:, k]
            continue
        perm, _ = best_permutation(reference, matrix.column(k))
        aligned[:, k] = perm.apply(matrix.entries[:, k])
    return LabelMatrix(aligned, matrix.n_clusters)

"""Majority-vote consensus over an already-aligned label matrix."""

import numpy as np

from .types import LabelMatrix, Partition


def majority_vote(aligned: LabelMatrix) -> Partition:
    """Per-item plurality label; ties go to the lowest label index.

    The caller is responsible for aligning member labels first (see
    alignment.align_ensemble); voting on unaligned members is meaningless.
    """
    g = aligned.n_clusters
    n = aligned.n_items
    counts = np.zeros((n, g), dtype=np.int64)
    rows = np.repeat(np.arange(n), aligned.n_observers)
    np.add.at(counts, (rows, aligned.entries.ravel()), 1)
    return Partition(np.argmax(counts, axis=1), g)

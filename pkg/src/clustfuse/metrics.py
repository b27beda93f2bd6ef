"""Partition agreement metrics: contingency tables and the adjusted Rand index."""

from dataclasses import dataclass
from math import comb

import numpy as np

from .errors import LengthMismatch, TooFewItems
from .types import Partition


@dataclass(frozen=True)
class ContingencyTable:
    """Cross-tabulation of two partitions of the same items."""

    counts: np.ndarray
    row_marginals: np.ndarray
    col_marginals: np.ndarray
    n_items: int


def contingency_table(a: Partition, b: Partition) -> ContingencyTable:
    """counts[u, v] = number of items with label u in `a` and v in `b`."""
    if len(a) != len(b):
        raise LengthMismatch(f"partition lengths differ: {len(a)} vs {len(b)}")
    counts = np.zeros((a.n_clusters, b.n_clusters), dtype=np.int64)
    np.add.at(counts, (a.labels, b.labels), 1)
    counts.flags.writeable = False
    return ContingencyTable(
        counts=counts,
        row_marginals=counts.sum(axis=1),
        col_marginals=counts.sum(axis=0),
        n_items=len(a),
    )


def _identical_up_to_permutation(counts: np.ndarray) -> bool:
    # True iff every item pair agrees on co-membership: each nonzero cell is
    # alone in both its row and its column.
    nz_rows = (counts > 0).sum(axis=1)
    nz_cols = (counts > 0).sum(axis=0)
    return bool(
        np.all(nz_rows[counts.sum(axis=1) > 0] == 1)
        and np.all(nz_cols[counts.sum(axis=0) > 0] == 1)
    )


def adjusted_rand_index(a: Partition, b: Partition) -> float:
    """Chance-corrected pair-counting agreement between two partitions.

    Returns 1.0 for partitions identical up to relabeling; roughly 0 for
    independent random partitions. When the expected index equals the maximum
    index (e.g. both partitions all-singletons or both a single cluster), the
    value is 1.0 if the partitions agree up to a permutation and 0.0 otherwise.
    """
    table = contingency_table(a, b)
    n = table.n_items
    if n < 2:
        raise TooFewItems("adjusted Rand index needs at least 2 items")
    sum_cells = sum(comb(int(c), 2) for c in table.counts.flat)
    sum_a = sum(comb(int(c), 2) for c in table.row_marginals)
    sum_b = sum(comb(int(c), 2) for c in table.col_marginals)
    total = comb(n, 2)
    expected = sum_a * sum_b / total
    max_index = (sum_a + sum_b) / 2.0
    if max_index == expected:
        return 1.0 if _identical_up_to_permutation(table.counts) else 0.0
    return (sum_cells - expected) / (max_index - expected)

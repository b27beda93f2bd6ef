"""CSV ingestion and results emission.

Three file shapes:
  dataset CSV    header + numeric feature columns + optional label column
  partition CSV  header + K integer label columns, one row per item
  results CSV    long format dataset,method,run,seed,ari plus a companion
                 summary file dataset,method,mean_ari,sd_ari (4 decimals)
"""

import csv
from pathlib import Path

import numpy as np

from .errors import (
    EmptyInput,
    MissingColumn,
    NonNumericCell,
    ParseError,
    RaggedRows,
)
from .types import LabelMatrix, relabel_contiguous, validate_label_matrix
from .datagen import Dataset


def _read_rows(path):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        rows = list(reader)
    if not rows:
        raise EmptyInput(f"{path}: file is empty")
    return rows[0], rows[1:]


def load_dataset_csv(path, label_column=None) -> Dataset:
    """Parse a feature CSV; the named label column becomes ground truth."""
    header, rows = _read_rows(path)
    if not rows:
        raise EmptyInput(f"{path}: no data rows below the header")
    if label_column is not None and label_column not in header:
        raise MissingColumn(f"{path}: no column named {label_column!r}")
    label_idx = header.index(label_column) if label_column is not None else None
    feature_names = tuple(h for i, h in enumerate(header) if i != label_idx)

    features = np.empty((len(rows), len(feature_names)))
    raw_labels = []
    for r, row in enumerate(rows):
        if len(row) != len(header):
            raise RaggedRows(f"{path}: row {r + 2} has {len(row)} cells, expected {len(header)}")
        c = 0
        for i, cell in enumerate(row):
            if i == label_idx:
                raw_labels.append(cell)
                continue
            try:
                features[r, c] = float(cell)
            except ValueError:
                raise NonNumericCell(
                    f"{path}: row {r + 2}, column {header[i]!r}: "
                    f"cannot parse {cell!r} as a number"
                ) from None
            c += 1

    truth = None
    if label_idx is not None:
        codes = {}
        numeric = [codes.setdefault(v, len(codes)) for v in raw_labels]
        truth, _ = relabel_contiguous(numeric)
    return Dataset(features=features, truth=truth, column_names=feature_names)


def load_partitions_csv(path, n_clusters=None) -> LabelMatrix:
    """Parse a K-column partition matrix.

    Without an explicit cluster count each column is independently normalized
    to 0..G-1 (external members need not share a label coding); with one, raw
    labels are validated against [0, n_clusters) as-is.
    """
    header, rows = _read_rows(path)
    if not rows:
        raise EmptyInput(f"{path}: no data rows below the header")
    entries = np.empty((len(rows), len(header)), dtype=np.int64)
    for r, row in enumerate(rows):
        if len(row) != len(header):
            raise RaggedRows(f"{path}: row {r + 2} has {len(row)} cells, expected {len(header)}")
        for c, cell in enumerate(row):
            try:
                entries[r, c] = int(cell)
            except ValueError:
                raise ParseError(
                    f"{path}: row {r + 2}, column {header[c]!r}: "
                    f"cannot parse {cell!r} as an integer label"
                ) from None
    if n_clusters is not None:
        return validate_label_matrix(entries, n_clusters)
    columns = [relabel_contiguous(entries[:, c])[0] for c in range(entries.shape[1])]
    g = max(p.n_clusters for p in columns)
    return validate_label_matrix(np.column_stack([p.labels for p in columns]), g)


def write_dataset_csv(dataset: Dataset, path, label_name="label"):
    """Inverse of load_dataset_csv for generated data."""
    names = dataset.column_names or tuple(
        f"x{j}" for j in range(dataset.n_features)
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        header = list(names) + ([label_name] if dataset.truth is not None else [])
        writer.writerow(header)
        for i in range(dataset.n_items):
            row = [repr(float(v)) for v in dataset.features[i]]
            if dataset.truth is not None:
                row.append(str(int(dataset.truth.labels[i])))
            writer.writerow(row)


def write_partition_csv(labels, path, name="consensus"):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([name])
        for lab in np.asarray(labels).ravel():
            writer.writerow([int(lab)])


def summary_path(path):
    p = Path(path)
    return p.with_name(p.stem + "_summary" + p.suffix)


def write_results_csv(report, path):
    """Emit the long-format results file and its summary companion.

    Rows are sorted by (dataset, method, run); means and sample standard
    deviations are rendered to 4 decimals (Python's float formatting, i.e.
    round-half-even on the decimal expansion). Byte-stable given the report.
    """
    records = sorted(report.records, key=lambda rec: (rec.dataset, rec.method, rec.run))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset", "method", "run", "seed", "ari"])
        for rec in records:
            writer.writerow(
                [rec.dataset, rec.method, rec.run, rec.seed, f"{rec.ari:.12g}"]
            )
    with open(summary_path(path), "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset", "method", "mean_ari", "sd_ari"])
        for (dataset, method), (mean, sd) in sorted(report.aggregates().items()):
            writer.writerow([dataset, method, f"{mean:.4f}", f"{sd:.4f}"])

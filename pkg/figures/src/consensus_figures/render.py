"""Boxplot rendering for benchmark results CSVs.

Input is the harness long format (dataset,method,run,seed,ari). For each
dataset one figure is written with four boxes over the run-level ARI
distributions: the per-run worst member ("min"), the per-run best member
("max"), the aligned majority vote, and the Dawid-Skene consensus. Whiskers
extend to 1.5 IQR; points beyond are drawn as outliers.
"""

import csv
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


class MissingColumns(Exception):
    pass


class EmptyInput(Exception):
    pass


REQUIRED_COLUMNS = ("dataset", "method", "run", "seed", "ari")
SERIES = ("min", "max", "vote", "dawid_skene")
SERIES_LABELS = {
    "min": "worst member",
    "max": "best member",
    "vote": "majority vote",
    "dawid_skene": "consensus",
}


def load_results(path):
    """{dataset: {method: [ari by run]}} from a harness results CSV."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise MissingColumns(f"{path}: missing columns {missing}")
        grouped = defaultdict(lambda: defaultdict(list))
        for row in reader:
            grouped[row["dataset"]][row["method"]].append(
                (int(row["run"]), float(row["ari"]))
            )
    if not grouped:
        raise EmptyInput(f"{path}: no data rows")
    out = {}
    for dataset, methods in grouped.items():
        out[dataset] = {
            method: [ari for _, ari in sorted(pairs)] for method, pairs in methods.items()
        }
    return out


def render_boxplots(results_csv_path, out_dir, format="svg"):
    """Write one boxplot figure per dataset; returns the written paths.

    Output filenames depend only on the dataset names, and SVG output is
    stable across runs (fixed hash salt, no timestamp metadata).
    """
    if format not in ("svg", "png"):
        raise ValueError(f"unsupported format: {format!r}")
    results = load_results(results_csv_path)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    plt.rcParams["svg.hashsalt"] = "consensus-figures"

    written = []
    for dataset in sorted(results):
        methods = results[dataset]
        present = [s for s in SERIES if s in methods]
        if not present:
            raise MissingColumns(
                f"dataset {dataset!r} has none of the series {SERIES}"
            )
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        ax.boxplot(
            [methods[s] for s in present],
            tick_labels=[SERIES_LABELS[s] for s in present],
            whis=1.5,
        )
        ax.set_ylabel("ARI")
        ax.set_ylim(-0.1, 1.0)
        ax.set_title(dataset)
        fig.tight_layout()
        path = out_dir / f"{dataset}.{format}"
        metadata = {"Date": None} if format == "svg" else {}
        fig.savefig(path, metadata=metadata)
        plt.close(fig)
        written.append(path)
    return written

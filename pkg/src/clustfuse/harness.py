"""Benchmark harness: seeded runs of every ensemble method over datasets.

Protocol per (dataset, run): fit a k-means partition from the run seed, fit
every member (GMM members start from that k-means partition), assemble the
label matrix, compute the aligned majority vote and the Dawid-Skene consensus,
and score everything against ground truth with the adjusted Rand index. The
per-run best and worst member scores are recorded as "max" and "min" so
reports show the envelope the consensus methods are judged against.
"""

import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .alignment import align_ensemble
from .clusterers import COVARIANCE_FAMILIES, gmm_fit, kmeans
from .dawid_skene import EmConfig, fit, hard_labels
from .datagen import Dataset, sample_preset
from .errors import BadSpec, EmptyReport
from .io_ingest import load_dataset_csv, load_partitions_csv
from .metrics import adjusted_rand_index
from .types import LabelMatrix, validate_label_matrix
from .vote import majority_vote

VOTE_METHOD = "vote"
CONSENSUS_METHOD = "dawid_skene"
MIN_METHOD = "min"
MAX_METHOD = "max"


@dataclass(frozen=True)
class MemberSpec:
    """One ensemble member: 'kmeans' or 'gmm' with a covariance family."""

    kind: str
    family: Optional[str] = None

    def __post_init__(self):
        if self.kind == "kmeans":
            if self.family is not None:
                raise BadSpec("kmeans member takes no covariance family")
        elif self.kind == "gmm":
            if self.family not in COVARIANCE_FAMILIES:
                raise BadSpec(f"gmm member needs a family in {COVARIANCE_FAMILIES}")
        else:
            raise BadSpec(f"unknown member kind: {self.kind!r}")

    @property
    def name(self):
        return self.kind if self.kind == "kmeans" else f"gmm-{self.family}"


DEFAULT_MEMBERS = (
    MemberSpec("kmeans"),
    MemberSpec("gmm", "spherical"),
    MemberSpec("gmm", "diagonal"),
    MemberSpec("gmm", "full"),
)


@dataclass(frozen=True)
class DatasetSpec:
    """A benchmark dataset: a named preset, a CSV, or external partitions."""

    name: str
    n_clusters: int
    preset: Optional[str] = None
    csv: Optional[str] = None
    label_column: Optional[str] = None
    partitions_csv: Optional[str] = None

    def __post_init__(self):
        if (self.preset is None) == (self.csv is None):
            raise BadSpec(f"dataset {self.name!r}: give exactly one of preset or csv")


@dataclass(frozen=True)
class ExperimentConfig:
    datasets: tuple
    members: tuple = DEFAULT_MEMBERS
    n_runs: int = 100
    base_seed: int = 0
    data_seed: int = 7
    em: EmConfig = field(default_factory=EmConfig)
    gmm_em: EmConfig = field(default_factory=lambda: EmConfig(max_iterations=200, rel_tolerance=1e-7))
    output_dir: Optional[str] = None

    def __post_init__(self):
        if self.n_runs < 1:
            raise BadSpec("n_runs must be >= 1")
        if len(self.members) < 2:
            raise BadSpec("ensemble methods need at least 2 members")


def config_from_json(path) -> ExperimentConfig:
    """Read an ExperimentConfig from a JSON file (see README for the schema)."""
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    datasets = tuple(
        DatasetSpec(
            name=d["name"],
            n_clusters=d["g"],
            preset=d.get("preset"),
            csv=d.get("csv"),
            label_column=d.get("label_column"),
            partitions_csv=d.get("partitions_csv"),
        )
        for d in raw["datasets"]
    )
    members = tuple(
        MemberSpec(kind=m["type"], family=m.get("family"))
        for m in raw.get("members", [{"type": m.kind, "family": m.family} for m in DEFAULT_MEMBERS])
    )
    em = EmConfig(**raw.get("em", {}))
    gmm_em = EmConfig(max_iterations=200, rel_tolerance=1e-7, **raw.get("gmm_em", {}))
    return ExperimentConfig(
        datasets=datasets,
        members=members,
        n_runs=raw.get("n_runs", 100),
        base_seed=raw.get("base_seed", 0),
        data_seed=raw.get("data_seed", 7),
        em=em,
        gmm_em=gmm_em,
        output_dir=raw.get("output_dir"),
    )


@dataclass(frozen=True)
class RunRecord:
    dataset: str
    method: str
    run: int
    seed: int
    ari: float


@dataclass(frozen=True)
class ExperimentReport:
    records: tuple

    def methods(self):
        return sorted({r.method for r in self.records})

    def datasets(self):
        return sorted({r.dataset for r in self.records})

    def runs(self, dataset, method):
        return [r.ari for r in self.records if r.dataset == dataset and r.method == method]

    def aggregates(self):
        """{(dataset, method): (mean, sample sd)}; single runs get sd 0."""
        out = {}
        for ds in self.datasets():
            for method in self.methods():
                values = self.runs(ds, method)
                if not values:
                    continue
                mean = statistics.fmean(values)
                sd = statistics.stdev(values) if len(values) > 1 else 0.0
                out[(ds, method)] = (mean, sd)
        return out


def _load_dataset(spec: DatasetSpec, data_seed: int) -> Dataset:
    if spec.preset is not None:
        return sample_preset(spec.preset, data_seed)
    return load_dataset_csv(spec.csv, label_column=spec.label_column)


def _run_once(data: Dataset, spec: DatasetSpec, members, run, seed, em, gmm_em,
              external: Optional[LabelMatrix]):
    """One seeded run on one dataset; returns RunRecords for every method."""
    g = spec.n_clusters
    if external is not None:
        matrix = external
        member_names = [f"member{k}" for k in range(matrix.n_observers)]
        member_partitions = [matrix.column(k) for k in range(matrix.n_observers)]
    else:
        km = kmeans(data, g, seed=seed)
        member_partitions = []
        member_names = []
        for m in members:
            if m.kind == "kmeans":
                member_partitions.append(km.partition)
            else:
                member_partitions.append(
                    gmm_fit(data, g, m.family, init=km.partition, config=gmm_em).partition
                )
            member_names.append(m.name)
        matrix = validate_label_matrix(
            np.column_stack([p.labels for p in member_partitions]), g
        )

    truth = data.truth
    records = []
    member_aris = []
    for name, part in zip(member_names, member_partitions):
        ari = adjusted_rand_index(truth, part)
        member_aris.append(ari)
        records.append(RunRecord(spec.name, name, run, seed, ari))
    vote_part = majority_vote(align_ensemble(matrix))
    consensus_part = hard_labels(fit(matrix, em))
    records.append(
        RunRecord(spec.name, VOTE_METHOD, run, seed, adjusted_rand_index(truth, vote_part))
    )
    records.append(
        RunRecord(spec.name, CONSENSUS_METHOD, run, seed,
                  adjusted_rand_index(truth, consensus_part))
    )
    records.append(RunRecord(spec.name, MIN_METHOD, run, seed, min(member_aris)))
    records.append(RunRecord(spec.name, MAX_METHOD, run, seed, max(member_aris)))
    return records


def _run_task(args):
    return _run_once(*args)


def run_experiment(config: ExperimentConfig, jobs: int = 1) -> ExperimentReport:
    """Execute every (dataset, run) cell; deterministic given the config.

    Record order is canonical (dataset, method, run) regardless of how many
    workers execute the runs.
    """
    tasks = []
    for spec in config.datasets:
        data = _load_dataset(spec, config.data_seed)
        if data.truth is None:
            raise BadSpec(f"dataset {spec.name!r} has no ground-truth labels")
        external = None
        if spec.partitions_csv is not None:
            external = load_partitions_csv(spec.partitions_csv, n_clusters=spec.n_clusters)
        for run in range(config.n_runs):
            seed = config.base_seed + run
            tasks.append((data, spec, config.members, run, seed,
                          config.em, config.gmm_em, external))

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_task = list(pool.map(_run_task, tasks))
    else:
        per_task = [_run_task(t) for t in tasks]

    records = [rec for batch in per_task for rec in batch]
    records.sort(key=lambda r: (r.dataset, r.method, r.run))
    return ExperimentReport(records=tuple(records))


def summarize(report: ExperimentReport) -> str:
    """Plain-text table: one row per dataset, `mean(sd)` per method.

    The best mean per dataset is marked with a trailing `*`.
    """
    if not report.records:
        raise EmptyReport("no records to summarize")
    aggregates = report.aggregates()
    methods = report.methods()
    lines = []
    header = ["dataset"] + methods
    rows = [header]
    for ds in report.datasets():
        cells = {m: aggregates.get((ds, m)) for m in methods}
        best = max((c[0] for c in cells.values() if c is not None), default=None)
        row = [ds]
        for m in methods:
            if cells[m] is None:
                row.append("-")
                continue
            mean, sd = cells[m]
            marker = "*" if mean == best else ""
            row.append(f"{mean:.4f}({sd:.4f}){marker}")
        rows.append(row)
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    for r in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"

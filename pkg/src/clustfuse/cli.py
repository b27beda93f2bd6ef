"""Command-line entry point.

Subcommands:
  run        execute a benchmark config and write results CSVs
  consensus  fuse an external partition matrix into one consensus partition
  simulate   write a named preset dataset to CSV
  ari        score two single-column partition files against each other

Exit codes: 0 success, 1 validation error, 2 unexpected runtime error.
"""

import argparse
import sys
from pathlib import Path

from .alignment import align_ensemble
from .dawid_skene import fit, hard_labels
from .datagen import PRESET_NAMES, sample_preset
from .errors import ClustfuseError
from .harness import config_from_json, run_experiment, summarize
from .io_ingest import (
    load_partitions_csv,
    write_dataset_csv,
    write_partition_csv,
    write_results_csv,
)
from .metrics import adjusted_rand_index
from .vote import majority_vote


class _Parser(argparse.ArgumentParser):
    # bad arguments are validation errors: exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"error: {message}\n")


def build_parser():
    parser = _Parser(prog="clustfuse")
    parser.add_argument("--quiet", action="store_true", help="suppress stdout tables")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a benchmark experiment")
    p_run.add_argument("--config", required=True, help="JSON experiment config")
    p_run.add_argument("--jobs", type=int, default=1, help="parallel run workers")
    p_run.add_argument("--out", default=None, help="results CSV path (overrides config output_dir)")

    p_cons = sub.add_parser("consensus", help="fuse a partition matrix")
    p_cons.add_argument("--partitions", required=True, help="CSV of member partitions")
    p_cons.add_argument("--method", choices=["ds", "vote"], default="ds")
    p_cons.add_argument("--g", type=int, default=None, help="cluster count (default: inferred)")
    p_cons.add_argument("--out", required=True, help="output CSV for consensus labels")

    p_sim = sub.add_parser("simulate", help="write a preset dataset to CSV")
    p_sim.add_argument("--preset", required=True, choices=PRESET_NAMES)
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--out", required=True)

    p_ari = sub.add_parser("ari", help="adjusted Rand index of two partition files")
    p_ari.add_argument("--a", required=True)
    p_ari.add_argument("--b", required=True)
    return parser


def _cmd_run(args, quiet):
    config = config_from_json(args.config)
    report = run_experiment(config, jobs=args.jobs)
    out = args.out
    if out is None:
        out_dir = Path(config.output_dir or ".")
        out_dir.mkdir(parents=True, exist_ok=True)
        out = out_dir / "results.csv"
    write_results_csv(report, out)
    if not quiet:
        print(summarize(report), end="")
        print(f"wrote {out}")


def _cmd_consensus(args, quiet):
    matrix = load_partitions_csv(args.partitions, n_clusters=args.g)
    if args.method == "vote":
        part = majority_vote(align_ensemble(matrix))
    else:
        part = hard_labels(fit(matrix))
    write_partition_csv(part.labels, args.out)
    if not quiet:
        print(f"wrote {args.out}")


def _cmd_simulate(args, quiet):
    data = sample_preset(args.preset, args.seed)
    write_dataset_csv(data, args.out)
    if not quiet:
        print(f"wrote {args.out}")


def _cmd_ari(args, quiet):
    a = load_partitions_csv(args.a).column(0)
    b = load_partitions_csv(args.b).column(0)
    print(f"{adjusted_rand_index(a, b):.6f}")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "consensus": _cmd_consensus,
        "simulate": _cmd_simulate,
        "ari": _cmd_ari,
    }
    try:
        handlers[args.command](args, args.quiet)
    except (ClustfuseError, FileNotFoundError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"unexpected error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

import csv

import numpy as np
import pytest
from matplotlib import cbook

from consensus_figures import EmptyInput, MissingColumns, load_results, render_boxplots
from consensus_figures.cli import main

SERIES = ("min", "max", "vote", "dawid_skene")


def quantile_by_hand(values, q):
    """Independent linear-interpolation quantile (matches the plotted stats)."""
    x = sorted(values)
    pos = q * (len(x) - 1)
    lo = int(pos)
    hi = min(lo + 1, len(x) - 1)
    frac = pos - lo
    return x[lo] * (1 - frac) + x[hi] * frac


def write_results(path, datasets=("d1", "d2"), n_runs=100, seed=0):
    rng = np.random.default_rng(seed)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["dataset", "method", "run", "seed", "ari"])
        for ds in datasets:
            for method in SERIES:
                base = 0.5 + 0.1 * SERIES.index(method)
                for run in range(n_runs):
                    ari = float(np.clip(base + rng.normal(0, 0.08), -0.1, 1.0))
                    writer.writerow([ds, method, run, run, f"{ari:.12g}"])
    return path


class TestRenderBoxplots:
    def test_one_file_per_dataset(self, tmp_path):
        results = write_results(tmp_path / "results.csv")
        written = render_boxplots(results, tmp_path / "figs")
        assert [p.name for p in written] == ["d1.svg", "d2.svg"]
        for p in written:
            assert p.stat().st_size > 0

    def test_filenames_depend_only_on_dataset_names(self, tmp_path):
        a = write_results(tmp_path / "a.csv", seed=1)
        b = write_results(tmp_path / "b.csv", seed=2)
        names_a = [p.name for p in render_boxplots(a, tmp_path / "fa")]
        names_b = [p.name for p in render_boxplots(b, tmp_path / "fb")]
        assert names_a == names_b

    def test_missing_ari_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("dataset,method,run,seed\nd,min,0,0\n", encoding="utf-8")
        with pytest.raises(MissingColumns):
            render_boxplots(path, tmp_path / "figs")

    def test_empty_input(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("dataset,method,run,seed,ari\n", encoding="utf-8")
        with pytest.raises(EmptyInput):
            render_boxplots(path, tmp_path / "figs")

    def test_constant_series_renders(self, tmp_path):
        path = tmp_path / "flat.csv"
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["dataset", "method", "run", "seed", "ari"])
            for method in SERIES:
                for run in range(10):
                    writer.writerow(["d", method, run, run, "0.75"])
        written = render_boxplots(path, tmp_path / "figs")
        assert len(written) == 1

    def test_box_statistics_match_independent_quantiles(self, tmp_path):
        results = write_results(tmp_path / "results.csv")
        data = load_results(results)
        for dataset, methods in data.items():
            for method in SERIES:
                values = methods[method]
                stats = cbook.boxplot_stats(np.asarray(values), whis=1.5)[0]
                assert stats["med"] == pytest.approx(
                    quantile_by_hand(values, 0.5), abs=1e-12
                )
                assert stats["q1"] == pytest.approx(
                    quantile_by_hand(values, 0.25), abs=1e-12
                )
                assert stats["q3"] == pytest.approx(
                    quantile_by_hand(values, 0.75), abs=1e-12
                )
                iqr = stats["q3"] - stats["q1"]
                in_range = [
                    v
                    for v in values
                    if stats["q1"] - 1.5 * iqr <= v <= stats["q3"] + 1.5 * iqr
                ]
                assert stats["whislo"] == pytest.approx(min(in_range), abs=1e-12)
                assert stats["whishi"] == pytest.approx(max(in_range), abs=1e-12)

    def test_deterministic_svg_output(self, tmp_path):
        results = write_results(tmp_path / "results.csv", datasets=("d1",))
        a = render_boxplots(results, tmp_path / "fa")[0]
        b = render_boxplots(results, tmp_path / "fb")[0]
        assert a.read_bytes() == b.read_bytes()


class TestCli:
    def test_render_command(self, tmp_path, capsys):
        results = write_results(tmp_path / "results.csv")
        code = main(["render", "--input", str(results), "--out", str(tmp_path / "figs")])
        assert code == 0
        assert "d1.svg" in capsys.readouterr().out

    def test_missing_file_exit_code(self, tmp_path):
        code = main(["render", "--input", str(tmp_path / "nope.csv"), "--out", str(tmp_path)])
        assert code == 1

    def test_usage_error_exit_code(self, tmp_path):
        # bad arguments are validation errors, so they exit 1 like any other
        with pytest.raises(SystemExit) as exc:
            main(["render", "--out", str(tmp_path)])
        assert exc.value.code == 1


class TestEndToEndWithHarness:
    def test_renders_from_real_harness_output(self, tmp_path):
        clustfuse = pytest.importorskip("clustfuse")
        from clustfuse.harness import DatasetSpec, ExperimentConfig, MemberSpec, run_experiment
        from clustfuse.io_ingest import write_results_csv

        config = ExperimentConfig(
            datasets=(
                DatasetSpec("x2", 3, preset="x2-like"),
                DatasetSpec("aniso", 3, preset="aniso-like"),
            ),
            members=(MemberSpec("kmeans"), MemberSpec("gmm", "full")),
            n_runs=3,
        )
        results = tmp_path / "results.csv"
        write_results_csv(run_experiment(config), results)
        written = render_boxplots(results, tmp_path / "figs", format="png")
        assert [p.name for p in written] == ["aniso.png", "x2.png"]

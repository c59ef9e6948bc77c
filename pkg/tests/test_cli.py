"""
Unit tests for the command-line interface and bench runner
"""
import argparse
import json

import numpy as np
import pytest
from src.superparametric.cli.bench import BENCH_COLUMNS, run_bench
from src.superparametric.cli.commands import build_parser, config_from_args, main, positive_int
from src.superparametric.config.settings import SolverConfig
from src.superparametric.formats.model_file import read_model
from src.superparametric.formats.tables import read_tsv


@pytest.fixture
def bimodal_file(tmp_path):
    path = tmp_path / "s.txt"
    assert main(["sample", "--dist", "bimodal", "--m", "180", "--seed", "7", "--out", str(path)]) == 0
    return path


class TestParser:
    """Tests for argument parsing"""

    def test_positive_int(self):
        assert positive_int("3") == 3
        with pytest.raises(argparse.ArgumentTypeError):
            positive_int("0")

    def test_fit_defaults(self):
        args = build_parser().parse_args(["fit", "--in", "s.txt", "--out", "m.json"])
        assert args.method == "bezier"
        assert args.degree is None
        assert args.accelerate is None

    def test_no_accelerate(self):
        args = build_parser().parse_args(["fit", "--in", "s.txt", "--out", "m.json", "--no-accelerate"])
        assert args.accelerate is False
        assert config_from_args(args).accelerate_outer is False

    def test_usage_error_exits_one(self, capsys):
        assert main(["sample", "--dist", "bimodal", "--m", "0"]) == 1
        assert "error" in capsys.readouterr().err

    def test_unknown_command(self):
        assert main(["estimate"]) == 1

    def test_unknown_distribution(self):
        assert main(["sample", "--dist", "normal", "--m", "10"]) == 1

    def test_help_exits_zero(self):
        assert main(["--help"]) == 0


class TestSampleCommand:
    """Tests for the sample subcommand"""

    def test_writes_m_lines(self, bimodal_file):
        assert len(bimodal_file.read_text().splitlines()) == 180

    def test_deterministic(self, bimodal_file, tmp_path):
        again = tmp_path / "again.txt"
        main(["sample", "--dist", "bimodal", "--m", "180", "--seed", "7", "--out", str(again)])
        assert again.read_bytes() == bimodal_file.read_bytes()

    def test_stdout(self, capsys):
        assert main(["sample", "--dist", "exponential", "--m", "5", "--seed", "1"]) == 0
        assert len(capsys.readouterr().out.splitlines()) == 5

    def test_unwritable_path(self, tmp_path):
        out = tmp_path / "missing" / "s.txt"
        assert main(["sample", "--dist", "bimodal", "--m", "5", "--out", str(out)]) == 2


class TestFitCommand:
    """Tests for the fit subcommand"""

    def test_bezier_fit(self, bimodal_file, tmp_path, capsys):
        model = tmp_path / "model.json"
        code = main(["fit", "--in", str(bimodal_file), "--method", "bezier", "--degree", "10", "--out", str(model)])
        assert code == 0
        summary = capsys.readouterr().out
        assert "method=bezier" in summary
        assert "windows=11" in summary
        assert read_model(model).basis.window_count == 11

    def test_piecewise_fit_has_two_pieces(self, bimodal_file, tmp_path):
        model = tmp_path / "model.json"
        assert main(["fit", "--in", str(bimodal_file), "--method", "pbezier", "--out", str(model)]) == 0
        document = json.loads(model.read_text())
        assert len(document["pieces"]) == 2
        assert len(document["partition"]["pieces"]) == 2

    def test_bspline_with_too_few_samples(self, tmp_path):
        samples = tmp_path / "few.txt"
        samples.write_text("0.1\n0.2\n0.4\n0.7\n")
        code = main(["fit", "--in", str(samples), "--method", "bspline", "--order", "12",
                     "--out", str(tmp_path / "m.json")])
        assert code == 1

    def test_invalid_config_flag(self, bimodal_file, tmp_path):
        assert main(["fit", "--in", str(bimodal_file), "--r", "-1", "--out", str(tmp_path / "m.json")]) == 1

    def test_missing_sample_file(self, tmp_path):
        assert main(["fit", "--in", str(tmp_path / "none.txt"), "--out", str(tmp_path / "m.json")]) == 2

    def test_non_convergence_dumps_report(self, bimodal_file, tmp_path, capsys):
        code = main(["fit", "--in", str(bimodal_file), "--max-inner", "1", "--out", str(tmp_path / "m.json")])
        assert code == 3
        assert '"outer_iterations"' in capsys.readouterr().err
        assert not (tmp_path / "m.json").exists()


class TestPlotDataCommand:
    """Tests for the plotdata subcommand"""

    @pytest.fixture
    def model_file(self, bimodal_file, tmp_path):
        model = tmp_path / "model.json"
        assert main(["fit", "--in", str(bimodal_file), "--out", str(model)]) == 0
        return model

    def test_grid(self, model_file, tmp_path):
        out = tmp_path / "grid.tsv"
        assert main(["plotdata", "--model", str(model_file), "--truth", "bimodal", "--out", str(out)]) == 0
        grid = read_tsv(out)
        assert len(grid) == 512
        assert np.all(np.diff(grid["x"]) > 0)
        assert set(grid["truth"].unique()) <= {0.0, 2.0 / 3.0, 1.0 / 3.0}

    def test_without_truth(self, model_file, tmp_path):
        out = tmp_path / "grid.tsv"
        assert main(["plotdata", "--model", str(model_file), "--grid", "32", "--cdf", "--out", str(out)]) == 0
        grid = read_tsv(out)
        assert list(grid.columns) == ["x", "density", "truth", "cdf"]
        assert grid["truth"].isna().all()

    def test_unknown_truth(self, model_file):
        assert main(["plotdata", "--model", str(model_file), "--truth", "gamma"]) == 1

    def test_bad_model(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("[]")
        assert main(["plotdata", "--model", str(bad)]) == 2


class TestPartitionCommand:
    """Tests for the partition subcommand"""

    def test_bimodal_pieces(self, bimodal_file, capsys):
        assert main(["partition", "--in", str(bimodal_file)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "piece_index\tlo\thi\tsample_count"
        assert len(lines) == 3


class TestBench:
    """Tests for the bench subcommand and runner"""

    def test_rows_in_order(self):
        table = run_bench("exponential", "bezier", [30, 40], range(2))
        assert list(table.columns) == BENCH_COLUMNS
        assert list(zip(table["m"], table["seed"])) == [(30, 0), (30, 1), (40, 0), (40, 1)]
        assert table["status"].isin(["ok", "budget"]).all()

    def test_workers_do_not_change_output(self):
        serial = run_bench("bimodal", "pbezier", [60], range(3), workers=1)
        parallel = run_bench("bimodal", "pbezier", [60], range(3), workers=3)
        assert serial.equals(parallel)

    def test_failures_become_rows(self):
        table = run_bench("exponential", "bezier", [30], range(2), SolverConfig(max_inner_updates=1))
        assert table["status"].tolist() == ["error:ConvergenceError"] * 2
        assert table["l1"].isna().all()

    def test_repeat_run_is_byte_identical(self, tmp_path):
        first, second = tmp_path / "a.tsv", tmp_path / "b.tsv"
        args = ["bench", "--dist", "exponential", "--method", "bezier", "--m", "30", "40", "--seeds", "2"]
        assert main(args + ["--out", str(first)]) == 0
        assert main(args + ["--workers", "2", "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        assert len(first.read_text().splitlines()) == 1 + 4

    @pytest.mark.slow
    def test_forty_rows(self, tmp_path):
        out = tmp_path / "bench.tsv"
        assert main(["bench", "--dist", "exponential", "--m", "30", "180", "--seeds", "20", "--out", str(out)]) == 0
        assert len(read_tsv(out)) == 40

"""CLI subcommands: run, plot, summary; exit codes and byte determinism."""

import json
import xml.etree.ElementTree as ET

import pytest

from ddrbench.cli import main

RUN_ARGS = [
    "run", "--task", "regression", "--models", "olsr",
    "--samples", "120", "--features", "4", "--grid", "3",
    "--replicates", "1", "--seed", "7",
]


def run_small(out_dir, extra=()):
    return main(RUN_ARGS + ["--out", str(out_dir)] + list(extra))


class TestRun:
    def test_writes_curve_and_report(self, tmp_path):
        assert run_small(tmp_path) == 0
        assert (tmp_path / "olsr_curve.csv").exists()
        assert (tmp_path / "olsr_report.json").exists()

    def test_rerun_byte_identical(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        assert run_small(a) == 0
        assert run_small(b) == 0
        for name in ("olsr_curve.csv", "olsr_report.json"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_all_classifiers_give_five_reports(self, tmp_path):
        code = main([
            "run", "--task", "classification", "--models", "all",
            "--samples", "120", "--features", "5", "--grid", "3",
            "--replicates", "1", "--seed", "3", "--out", str(tmp_path),
        ])
        assert code == 0
        reports = sorted(p.name for p in tmp_path.glob("*_report.json"))
        assert reports == [
            "blrc_report.json", "dtc_report.json", "knnc_report.json",
            "lsvc_report.json", "mlpc_report.json",
        ]

    def test_unknown_model_exit_one(self, tmp_path, capsys):
        code = main([
            "run", "--task", "regression", "--models", "gbm",
            "--out", str(tmp_path),
        ])
        assert code == 1
        assert "olsr" in capsys.readouterr().err  # message names valid options

    def test_unknown_generator_exit_one(self, tmp_path, capsys):
        code = main([
            "run", "--task", "regression", "--models", "olsr",
            "--generator", "moons", "--out", str(tmp_path),
        ])
        assert code == 1
        assert "friedman1" in capsys.readouterr().err

    def test_config_file_defaults_and_flag_wins(self, tmp_path):
        config = tmp_path / "bench.cfg"
        config.write_text(
            "task = regression\nmodels = olsr\nsamples = 120\nfeatures = 4\n"
            "grid = 3\nreplicates = 1\nseed = 7\n"
            f"out = {tmp_path / 'from_file'}\n# comment line\n"
        )
        assert main(["run", "--config", str(config)]) == 0
        assert (tmp_path / "from_file" / "olsr_curve.csv").exists()
        # flag overrides the file's out dir
        assert main(["run", "--config", str(config), "--out", str(tmp_path / "flag")]) == 0
        assert (tmp_path / "flag" / "olsr_curve.csv").exists()

    def test_partial_completion_exit_two(self, tmp_path, monkeypatch):
        import ddrbench.harness as harness
        from ddrbench.errors import DomainError

        original = harness.fit
        calls = {"n": 0}

        def flaky(spec, X, y):
            calls["n"] += 1
            if calls["n"] == 1:
                raise DomainError("synthetic failure")
            return original(spec, X, y)

        monkeypatch.setattr("ddrbench.harness.fit", flaky)
        monkeypatch.setenv("DDRBENCH_THREADS", "1")
        assert run_small(tmp_path) == 2


class TestPlot:
    @pytest.fixture()
    def curve_dir(self, tmp_path):
        assert run_small(tmp_path) == 0
        return tmp_path

    def test_two_polylines_per_curve(self, curve_dir, tmp_path):
        out = tmp_path / "plot.svg"
        code = main(["plot", "--curves", str(curve_dir / "olsr_curve.csv"), "--out", str(out)])
        assert code == 0
        text = out.read_text()
        assert text.count("<polyline") == 2
        ET.fromstring(text)  # well-formed XML with a single root

    def test_regression_ylabel_default(self, curve_dir, tmp_path):
        out = tmp_path / "plot.svg"
        main(["plot", "--curves", str(curve_dir / "olsr_curve.csv"), "--out", str(out)])
        assert "NMSE-Based Accuracy" in out.read_text()

    def test_byte_identical(self, curve_dir, tmp_path):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        args = ["plot", "--curves", str(curve_dir / "olsr_curve.csv")]
        main(args + ["--out", str(a)])
        main(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_bad_csv_row_reported(self, tmp_path, capsys):
        bad = tmp_path / "bad_curve.csv"
        bad.write_text(
            "ddr,train_acc_mean,train_acc_std,test_acc_mean,test_acc_std,replicates\n"
            "0.0,0.1,0.0,0.1,0.0,1\n"
            "oops,0.2,0.0,0.2,0.0,1\n"
        )
        code = main(["plot", "--curves", str(bad), "--out", str(tmp_path / "x.svg")])
        assert code == 1
        assert "row 3" in capsys.readouterr().err


class TestSummary:
    @pytest.fixture()
    def report_dir(self, tmp_path):
        code = main([
            "run", "--task", "regression", "--models", "olsr,knnr",
            "--samples", "120", "--features", "5", "--grid", "3",
            "--replicates", "1", "--seed", "5", "--out", str(tmp_path),
        ])
        assert code == 0
        return tmp_path

    def test_table_and_bars(self, report_dir, tmp_path):
        out = tmp_path / "table.csv"
        reports = sorted(str(p) for p in report_dir.glob("*_report.json"))
        assert main(["summary", "--reports", *reports, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "model,auc_train,auc_test"
        assert [l.split(",")[0] for l in lines[1:]] == ["knnr", "olsr"]
        bars = (tmp_path / "table.svg").read_text()
        assert bars.count("<rect") >= 2  # one per model plus background
        ET.fromstring(bars)

    def test_bar_heights_match_auc(self, report_dir, tmp_path):
        out = tmp_path / "table.csv"
        reports = sorted(str(p) for p in report_dir.glob("*_report.json"))
        main(["summary", "--reports", *reports, "--out", str(out)])
        payload = json.loads((report_dir / "olsr_report.json").read_text())
        assert f"{payload['auc_test']:.3f}" in (tmp_path / "table.svg").read_text()

    def test_empty_reports_exit_one(self, tmp_path):
        assert main(["summary", "--out", str(tmp_path / "t.csv")]) == 1

    def test_schema_mismatch_exit_one(self, tmp_path, capsys):
        bad = tmp_path / "bad_report.json"
        bad.write_text(json.dumps({"schema_version": 99, "model": "olsr"}))
        code = main(["summary", "--reports", str(bad), "--out", str(tmp_path / "t.csv")])
        assert code == 1
        assert "schema_version" in capsys.readouterr().err

    def test_byte_identical(self, report_dir, tmp_path):
        reports = sorted(str(p) for p in report_dir.glob("*_report.json"))
        for name in ("s1", "s2"):
            main(["summary", "--reports", *reports, "--out", str(tmp_path / f"{name}.csv")])
        assert (tmp_path / "s1.csv").read_bytes() == (tmp_path / "s2.csv").read_bytes()
        assert (tmp_path / "s1.svg").read_bytes() == (tmp_path / "s2.svg").read_bytes()

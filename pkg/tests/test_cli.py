"""End-to-end command-line round trips and exit codes."""

import json
import xml.etree.ElementTree as ET

import pytest

from hypergrowth.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def hyperbolic_csv(tmp_path, capsys):
    path = tmp_path / "series.csv"
    code, _, err = run(
        capsys, "synth", "--kind", "hyperbolic",
        "--param", "a=1.0", "--param", "k=0.001",
        "--years", "0:900:50", "--label", "demo",
        "--out", str(path),
    )
    assert code == 0, err
    return path


@pytest.fixture
def spliced_csv(tmp_path, capsys):
    path = tmp_path / "spliced.csv"
    code, _, err = run(
        capsys, "synth", "--kind", "spliced-two-hyperbolic",
        "--param", "a=0.242", "--param", "k=1e-4",
        "--param", "break_year=1820", "--param", "k_ratio=4.2",
        "--years", "1000:1950:10", "--label", "africa-like",
        "--out", str(path),
    )
    assert code == 0, err
    return path


class TestFit:
    def test_exact_recovery_round_trip(self, hyperbolic_csv, capsys):
        code, out, _ = run(capsys, "fit", "--input", str(hyperbolic_csv))
        assert code == 0
        doc = json.loads(out)
        assert doc["a"] == pytest.approx(1.0, rel=1e-9)
        assert doc["k"] == pytest.approx(0.001, rel=1e-9)
        assert doc["singularity_year"] == 1000

    def test_explicit_window_and_weighting(self, hyperbolic_csv, capsys):
        code, out, _ = run(
            capsys, "fit", "--input", str(hyperbolic_csv),
            "--window", "0:500", "--weighting", "direct",
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["window"] == [0.0, 500.0]
        assert doc["weighting"] == "direct"

    def test_missing_file_is_usage_error(self, tmp_path, capsys):
        code, _, err = run(capsys, "fit", "--input", str(tmp_path / "nope.csv"))
        assert code == 2
        assert "error" in err

    def test_bad_window_is_usage_error(self, hyperbolic_csv, capsys):
        code, _, _ = run(
            capsys, "fit", "--input", str(hyperbolic_csv), "--window", "12"
        )
        assert code == 2

    def test_non_hyperbolic_data_is_analysis_error(self, tmp_path, capsys):
        path = tmp_path / "falling.csv"
        path.write_text(
            "entity,year,value\nD,1900,10\nD,1950,5\nD,2000,2.5\nD,2008,2\n"
        )
        code, _, err = run(capsys, "fit", "--input", str(path),
                           "--window", "1900:2008")
        assert code == 1
        assert "error" in err


class TestSegment:
    def test_breakpoint_and_ratio(self, spliced_csv, capsys):
        code, out, _ = run(capsys, "segment", "--input", str(spliced_csv))
        assert code == 0
        doc = json.loads(out)
        assert doc["breakpoint_year"] == 1820.0
        assert doc["k_ratio"] == pytest.approx(4.2, rel=1e-9)
        assert len(doc["segments"]) == 2


class TestDiversion:
    def test_slower_departure_reported(self, tmp_path, capsys):
        path = tmp_path / "slower.csv"
        run(capsys, "synth", "--kind", "hyperbolic-then-slower",
            "--param", "a=1.0", "--param", "k=0.001",
            "--param", "break_year=900", "--param", "slow_factor=0.5",
            "--years", "0:980:10", "--out", str(path))
        code, out, _ = run(
            capsys, "diversion", "--input", str(path), "--window", "0:900"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["finding"]["direction"] == "slower"
        assert doc["finding"]["proximity_years"] is not None


class TestTakeoff:
    def test_positive_verdict(self, tmp_path, capsys):
        path = tmp_path / "takeoff.csv"
        run(capsys, "synth", "--kind", "stagnation-then-takeoff",
            "--param", "level=1.0", "--param", "break_year=1750",
            "--param", "rate=0.02", "--years", "1000:2000:25",
            "--out", str(path))
        code, out, _ = run(
            capsys, "takeoff", "--input", str(path), "--predicted-year", "1750"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["verdict"] == "positive"
        assert doc["break_year"] == 1750.0

    def test_negative_verdict_still_exit_zero(self, hyperbolic_csv, capsys):
        code, out, _ = run(
            capsys, "takeoff", "--input", str(hyperbolic_csv),
            "--predicted-year", "450", "--halfwidth", "100",
        )
        assert code == 0
        assert json.loads(out)["verdict"] == "negative"


class TestReport:
    def test_markdown_report(self, spliced_csv, tmp_path, capsys):
        cfg = tmp_path / "regions.ini"
        cfg.write_text("[africa-like]\nmembers = africa-like\ntwo_regime = true\n")
        code, out, _ = run(
            capsys, "report", "--input", str(spliced_csv),
            "--regions-config", str(cfg), "--emit", "markdown",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("| Region |")
        assert sum("africa-like" in line for line in lines) == 2

    def test_failed_region_sets_exit_one(self, tmp_path, capsys):
        data = tmp_path / "d.csv"
        data.write_text("entity,year,value\nA,1900,1\nA,1950,2\n")
        cfg = tmp_path / "regions.ini"
        cfg.write_text("[A]\nmembers = A\n")
        code, out, err = run(
            capsys, "report", "--input", str(data), "--regions-config", str(cfg)
        )
        assert code == 1
        assert "A" in err

    def test_missing_config_is_usage_error(self, spliced_csv, capsys):
        code, _, _ = run(capsys, "report", "--input", str(spliced_csv))
        assert code == 2


class TestPlot:
    def test_svg_output(self, hyperbolic_csv, tmp_path, capsys):
        out_path = tmp_path / "plot.svg"
        code, _, _ = run(
            capsys, "plot", "--input", str(hyperbolic_csv),
            "--mode", "semilog", "--out", str(out_path),
        )
        assert code == 0
        root = ET.fromstring(out_path.read_text())
        assert root.tag.endswith("svg")

    def test_csv_output_two_regime(self, spliced_csv, capsys):
        code, out, _ = run(
            capsys, "plot", "--input", str(spliced_csv),
            "--two-regime", "--emit", "csv",
        )
        assert code == 0
        assert out.splitlines()[0] == "year,observed,fitted,residual_reciprocal"


class TestSynth:
    def test_determinism(self, tmp_path, capsys):
        argv = ["synth", "--kind", "hyperbolic", "--param", "a=1", "--param",
                "k=0.0004", "--maddison-grid", "--noise", "0.01", "--seed", "5"]
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2

    def test_bad_param_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "synth", "--kind", "hyperbolic",
                         "--param", "a", "--years", "0:100:10")
        assert code == 2

    def test_infeasible_generator_is_usage_error(self, capsys):
        # Sampling past the singularity at year 1000.
        code, _, _ = run(capsys, "synth", "--kind", "hyperbolic",
                         "--param", "a=1", "--param", "k=0.001",
                         "--years", "0:1100:100")
        assert code == 2


class TestVerify:
    def test_small_trial_run_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--trials", "20")
        assert code == 0
        lines = out.strip().splitlines()
        assert all(line.startswith("PASS") for line in lines[:-1])
        assert lines[-1] == "10/10 checks passed"

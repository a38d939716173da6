"""Tests for the command-line entry point."""

import json
import math

import pandas as pd
import pytest

from src.app import build_parser, main


@pytest.fixture
def gap_yaml(write_config, tmp_path):
    return write_config(
        {
            "settings": {"threads": 1},
            "experiment": {"kind": "sphere-gap", "s_values": [1, 2], "output_dir": str(tmp_path / "results")},
        }
    )


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_parser_hist_options():
    args = build_parser().parse_args(["--log-level", "DEBUG", "hist", "e.csv", "--q", "3", "--exclude-trivial"])
    assert args.log_level == "DEBUG"
    assert args.q == 3
    assert args.bins == 40
    assert args.exclude_trivial


class TestValidate:
    """Tests for `validate`."""

    def test_clean_config(self, gap_yaml, capsys):
        assert main(["validate", str(gap_yaml)]) == 0
        assert capsys.readouterr().out == ""

    def test_missing_file(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path / "none.yaml")]) == 2
        assert "error: Configuration file not found" in capsys.readouterr().out

    def test_warnings_do_not_fail(self, write_config, capsys):
        path = write_config(
            {
                "settings": {"orbit_radius_cap": 1},
                "experiment": {"kind": "sphere-variance", "s_values": [3], "T_values": [2]},
            }
        )
        assert main(["validate", str(path)]) == 0
        assert "warning: condition at T=2" in capsys.readouterr().out


class TestRun:
    """Tests for `run`."""

    def test_run_writes_results(self, gap_yaml, tmp_path):
        assert main(["run", str(gap_yaml)]) == 0
        frame = pd.read_csv(tmp_path / "results" / "sphere-gap.csv")
        assert frame["s"].tolist() == [1, 2]
        assert frame["beta"].iloc[0] == pytest.approx(math.log(3) / 2)
        summary = json.loads((tmp_path / "results" / "sphere-gap.summary.json").read_text())
        assert summary["flagged"] == 0

    def test_invalid_config(self, write_config):
        path = write_config({"experiment": {"kind": "sphere-gap"}})
        assert main(["run", str(path)]) == 2

    def test_config_errors_stop_the_run(self, write_config, tmp_path):
        path = write_config(
            {"experiment": {"kind": "graph-variance", "k_values": [7], "output_dir": str(tmp_path / "res")}}
        )
        assert main(["run", str(path)]) == 2
        assert not (tmp_path / "res").exists()


class TestHist:
    """Tests for `hist`."""

    @pytest.fixture
    def eig_file(self, tmp_path):
        path = tmp_path / "eigs.csv"
        path.write_text("lambda\n0.1\n-0.4\n1.2\n")
        return path

    def test_stdout(self, eig_file, capsys):
        assert main(["hist", str(eig_file), "--q", "2", "--bins", "4"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "bin_lo,bin_hi,count,empirical,plancherel"
        assert len(lines) == 5

    def test_output_file(self, eig_file, tmp_path, capsys):
        output = tmp_path / "hist.csv"
        assert main(["hist", str(eig_file), "--q", "2", "--output", str(output)]) == 0
        assert capsys.readouterr().out == ""
        assert len(pd.read_csv(output)) == 40

    def test_rejects_small_q(self, eig_file):
        assert main(["hist", str(eig_file), "--q", "1"]) == 2

    def test_missing_file(self, tmp_path):
        assert main(["hist", str(tmp_path / "none.csv"), "--q", "2"]) == 2

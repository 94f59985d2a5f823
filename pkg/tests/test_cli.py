import csv

import pytest

from emoa_lab.cli import main


def read_rows(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


class TestRunCommand:
    def test_single_cell_run(self, tmp_path, capsys):
        out = tmp_path / "results"
        code = main(
            [
                "run",
                "--problem",
                "ojzj",
                "--n",
                "10",
                "--k",
                "2",
                "--strategy",
                "deterministic",
                "--runs",
                "3",
                "--seed",
                "41",
                "--out",
                str(out),
                "--jobs",
                "1",
            ]
        )
        assert code == 0
        trials = read_rows(out / "trials.csv")
        assert len(trials) == 3
        assert trials[0]["strategy"] == "deterministic"
        assert trials[0]["mu"] == "20"  # 2(n - 2k + 4) by default
        assert {t["front_found"] for t in trials} <= {"true", "false"}
        summary = read_rows(out / "summary.csv")
        assert len(summary) == 1
        assert summary[0]["runs"] == "3"
        assert "mean=" in capsys.readouterr().out

    def test_explicit_mu_and_fraction(self, tmp_path):
        out = tmp_path / "results"
        code = main(
            [
                "run",
                "--n",
                "10",
                "--k",
                "2",
                "--mu",
                "11",
                "--strategy",
                "stochastic",
                "--subset-fraction",
                "0.75",
                "--runs",
                "2",
                "--seed",
                "5",
                "--budget",
                "2000",
                "--out",
                str(out),
                "--jobs",
                "1",
            ]
        )
        assert code == 0
        trials = read_rows(out / "trials.csv")
        assert trials[0]["mu"] == "11"
        assert trials[0]["strategy"] == "stochastic"

    def test_bad_flag_exits_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["run", "--n", "10", "--k", "2", "--strategy", "magic"])
        assert exc.value.code == 2

    def test_invalid_problem_parameters_exit_one(self, tmp_path, capsys):
        code = main(
            [
                "run",
                "--n",
                "10",
                "--k",
                "5",  # violates k < n/2
                "--strategy",
                "deterministic",
                "--runs",
                "1",
                "--seed",
                "1",
                "--out",
                str(tmp_path / "x"),
            ]
        )
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_output_collision_exits_one(self, tmp_path, capsys):
        blocker = tmp_path / "occupied"
        blocker.write_text("")
        code = main(
            [
                "run",
                "--n",
                "10",
                "--k",
                "2",
                "--strategy",
                "deterministic",
                "--runs",
                "1",
                "--seed",
                "1",
                "--out",
                str(blocker),
            ]
        )
        assert code == 1
        assert "error:" in capsys.readouterr().err


class TestFigure3Command:
    def test_tiny_grid(self, tmp_path, capsys):
        out = tmp_path / "fig"
        code = main(
            ["figure3", "--out-dir", str(out), "--runs", "1", "--jobs", "1"]
        )
        assert code == 0
        summary = read_rows(out / "summary.csv")
        assert len(summary) == 10  # five sizes, two strategies
        for name in ("trials.csv", "summary.csv", "plot_data.json", "figure3.svg"):
            assert (out / name).exists()
        stdout = capsys.readouterr().out
        assert "std/mean" in stdout

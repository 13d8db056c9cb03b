"""Figure scripts are exercised end to end: experiment CSVs are produced by
the primary command-line tool in a subprocess, then rendered by invoking the
scripts exactly as documented (`figures/<name>.py <csv> <out>`)."""

import subprocess
import sys
from pathlib import Path

import pytest

FIGURES_DIR = Path(__file__).resolve().parent.parent


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "mncomplex", *args],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return proc


def run_script(name, *args):
    return subprocess.run(
        [sys.executable, str(FIGURES_DIR / name), *args],
        capture_output=True,
        text=True,
    )


@pytest.fixture(scope="module")
def support_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("support") / "support.csv"
    run_cli(
        "sweep", "support", "--n", "30", "40", "--m", "2", "--p", "0.3",
        "--trials", "2", "--seed", "17", "-o", str(path),
    )
    return path


@pytest.fixture(scope="module")
def copies_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("copies") / "copies.csv"
    run_cli(
        "sweep", "copies", "--n", "25", "--m", "1", "--beta", "1.5", "2.0",
        "--facets", "0,1", "--trials", "2", "--seed", "23", "-o", str(path),
    )
    return path


@pytest.fixture(scope="module")
def reference_csv(tmp_path_factory):
    """Single-trial reproduction of the headline summary run."""
    path = tmp_path_factory.mktemp("reference") / "reference.csv"
    run_cli(
        "sweep", "support", "--n", "150",
        "--m", "1", "2", "4", "8", "12", "--p", "0.2",
        "--cap", "4", "--trials", "1", "--seed", "5150", "-o", str(path),
    )
    return path


class TestSupportFigure:
    def test_renders_nonempty_image(self, support_csv, tmp_path):
        out = tmp_path / "support.png"
        proc = run_script("render_support_figure.py", str(support_csv), str(out))
        assert proc.returncode == 0, proc.stderr
        assert out.stat().st_size > 1000

    def test_two_y_columns(self, support_csv, tmp_path):
        out = tmp_path / "two.png"
        proc = run_script(
            "render_support_figure.py", str(support_csv), str(out),
            "--y", "ratio_at", "ratio_below",
        )
        assert proc.returncode == 0, proc.stderr
        assert out.stat().st_size > 1000

    def test_missing_column_names_the_column(self, support_csv, tmp_path):
        out = tmp_path / "bad.png"
        proc = run_script(
            "render_support_figure.py", str(support_csv), str(out), "--y", "nope"
        )
        assert proc.returncode == 2
        assert "nope" in proc.stderr
        assert not out.exists()

    def test_empty_csv_is_error_without_image(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("n,m,p,ratio_at\n")
        out = tmp_path / "empty.png"
        proc = run_script("render_support_figure.py", str(empty), str(out))
        assert proc.returncode == 2
        assert not out.exists()


class TestCopySweepFigure:
    def test_renders_nonempty_image(self, copies_csv, tmp_path):
        out = tmp_path / "copies.png"
        proc = run_script("render_copy_sweep_figure.py", str(copies_csv), str(out))
        assert proc.returncode == 0, proc.stderr
        assert out.stat().st_size > 1000

    def test_threshold_marker_available_in_sidecar(self, copies_csv):
        import json

        sidecar = json.loads(
            copies_csv.with_suffix(".summary.json").read_text()
        )
        assert sidecar["predicted_thresholds"] == {"1": "2/3"}


class TestSummaryTable:
    def test_reference_table_t_row(self, reference_csv):
        proc = run_script("render_summary_table.py", str(reference_csv))
        assert proc.returncode == 0, proc.stderr
        lines = proc.stdout.splitlines()
        header = lines[0]
        assert [c.strip() for c in header.strip("|").split("|")][1:] == [
            "m=1", "m=2", "m=4", "m=8", "m=12"
        ]
        t_row = next(ln for ln in lines if ln.startswith("| t |"))
        cells = [c.strip() for c in t_row.strip("|").split("|")][1:]
        assert cells == ["3", "3", "2", "2", "2"]

    def test_writes_file_when_asked(self, support_csv, tmp_path):
        out = tmp_path / "table.md"
        proc = run_script("render_summary_table.py", str(support_csv), str(out))
        assert proc.returncode == 0, proc.stderr
        assert "| quantity |" in out.read_text()

    def test_missing_column_is_error(self, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("n,m\n1,2\n")
        proc = run_script("render_summary_table.py", str(bad))
        assert proc.returncode == 2
        assert "'t'" in proc.stderr  # first missing column is named

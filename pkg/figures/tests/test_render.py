"""Figure-rendering tests.

The fixture produces real CSVs by invoking the simulator CLI as a
subprocess, so the renderer is exercised exactly the way a user drives it:
through the published command line and file formats only.
"""

import csv
import subprocess
import sys
from pathlib import Path

import matplotlib.pyplot as plt
import pytest

from ptfigures import FigureInputError, FigureSpec, parse_input_arg, render

R_VALUES = (0.0, 0.5, 0.95)
FAST = (
    "--override", "n_steps=16",
    "--override", "t_max=4.0",
    "--override", "d_bath=6",
    "--override", "temperature=2.0",
)


def run_simulator(command, out_dir, *overrides):
    args = [sys.executable, "-m", "ptthermo.cli", command, "--out", str(out_dir)]
    args += FAST
    for item in overrides:
        args += ["--override", item]
    completed = subprocess.run(args, capture_output=True, text=True)
    assert completed.returncode == 0, completed.stderr
    return Path(out_dir) / "run.csv"


@pytest.fixture(scope="session")
def csv_corpus(tmp_path_factory):
    """open-ergotropy and laws CSVs for every (state, r) pair used below."""
    base = tmp_path_factory.mktemp("csvs")
    corpus = {}
    for r in R_VALUES:
        for state in ("excited", "intermediate"):
            path = run_simulator(
                "open-ergotropy", base / f"open_{state}_{r}", f"r={r}", f"initial_state={state}"
            )
            corpus[("open", state, r)] = path
        for state in ("excited", "intermediate", "ground"):
            path = run_simulator(
                "laws", base / f"laws_{state}_{r}", f"r={r}", f"initial_state={state}"
            )
            corpus[("laws", state, r)] = path
    return corpus


def labeled(corpus, kind, pairs):
    return tuple(
        parse_input_arg(f"{corpus[(kind, state, r)]}:{state},r={r:g}")
        for state, r in pairs
    )


class TestRenderFig2:
    def test_two_panels_three_curves_each(self, csv_corpus, tmp_path):
        inputs = labeled(
            csv_corpus,
            "open",
            [(state, r) for state in ("excited", "intermediate") for r in R_VALUES],
        )
        out = tmp_path / "fig2.png"
        fig = render(FigureSpec("fig2", inputs, out))
        try:
            assert out.exists()
            assert len(fig.axes) == 2
            assert all(len(ax.lines) == 3 for ax in fig.axes)
        finally:
            plt.close(fig)

    def test_missing_panel_state_rejected(self, csv_corpus, tmp_path):
        inputs = labeled(csv_corpus, "open", [("excited", r) for r in R_VALUES])
        with pytest.raises(FigureInputError, match="intermediate"):
            render(FigureSpec("fig2", inputs, tmp_path / "fig2.png"))


class TestRenderFig3:
    def test_three_panels_three_quantities_each(self, csv_corpus, tmp_path):
        inputs = labeled(csv_corpus, "laws", [("excited", r) for r in R_VALUES])
        out = tmp_path / "fig3.pdf"
        fig = render(FigureSpec("fig3", inputs, out))
        try:
            assert out.exists()
            assert len(fig.axes) == 3
            assert all(len(ax.lines) == 3 for ax in fig.axes)
        finally:
            plt.close(fig)


class TestRenderFig4:
    def test_three_state_panels(self, csv_corpus, tmp_path):
        inputs = labeled(
            csv_corpus,
            "laws",
            [(state, r) for state in ("excited", "intermediate", "ground") for r in R_VALUES],
        )
        out = tmp_path / "fig4.png"
        fig = render(FigureSpec("fig4", inputs, out))
        try:
            assert out.exists()
            assert len(fig.axes) == 3
            assert all(len(ax.lines) == 3 for ax in fig.axes)
        finally:
            plt.close(fig)

    def test_rendering_is_read_only_and_repeatable(self, csv_corpus, tmp_path):
        inputs = labeled(csv_corpus, "laws", [(s, 0.5) for s in ("excited", "intermediate", "ground")])
        before = [item.path.read_bytes() for item in inputs]
        out = tmp_path / "fig4.png"
        for _ in range(2):
            plt.close(render(FigureSpec("fig4", inputs, out)))
        assert [item.path.read_bytes() for item in inputs] == before
        assert out.exists()


class TestInputValidation:
    def test_label_parsing(self):
        item = parse_input_arg("some/dir/run.csv:excited,r=0.5")
        assert item.state == "excited"
        assert item.r == 0.5
        assert item.path == Path("some/dir/run.csv")

    def test_bad_label_rejected(self):
        with pytest.raises(FigureInputError, match="label"):
            parse_input_arg("run.csv")
        with pytest.raises(FigureInputError, match="unknown initial state"):
            parse_input_arg("run.csv:warm,r=0.5")

    def test_missing_file(self, tmp_path):
        item = parse_input_arg(f"{tmp_path / 'absent.csv'}:excited,r=0")
        with pytest.raises(FigureInputError, match="does not exist"):
            render(FigureSpec("fig2", (item,), tmp_path / "out.png"))

    def test_missing_column_named_in_error(self, tmp_path):
        path = tmp_path / "bad.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["t", "dU", "dW", "dQ_B", "residual", "s_vn"])  # no sigma
            writer.writerow(["0", "0", "0", "0", "0", "0"])
        inputs = tuple(
            parse_input_arg(f"{path}:{state},r=0")
            for state in ("excited", "intermediate", "ground")
        )
        with pytest.raises(FigureInputError, match="'sigma' missing from"):
            render(FigureSpec("fig4", inputs, tmp_path / "out.png"))

    def test_empty_csv_writes_nothing(self, tmp_path):
        path = tmp_path / "empty.csv"
        with open(path, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerow(
                ["t", "ergotropy", "lambda_plus", "lambda_minus", "trace_rho_g"]
            )
        inputs = tuple(
            parse_input_arg(f"{path}:{state},r=0") for state in ("excited", "intermediate")
        )
        out = tmp_path / "out.png"
        with pytest.raises(FigureInputError, match="no data rows"):
            render(FigureSpec("fig2", inputs, out))
        assert not out.exists()


class TestCli:
    def test_end_to_end(self, csv_corpus, tmp_path):
        out = tmp_path / "fig3.png"
        args = [sys.executable, "-m", "ptfigures.cli", "--figure", "fig3", "--out", str(out), "--inputs"]
        args += [f"{csv_corpus[('laws', 'excited', r)]}:excited,r={r:g}" for r in R_VALUES]
        completed = subprocess.run(args, capture_output=True, text=True)
        assert completed.returncode == 0, completed.stderr
        assert out.exists()

    def test_error_reported_on_stderr(self, tmp_path):
        args = [
            sys.executable, "-m", "ptfigures.cli",
            "--figure", "fig2",
            "--out", str(tmp_path / "x.png"),
            "--inputs", f"{tmp_path / 'absent.csv'}:excited,r=0",
        ]
        completed = subprocess.run(args, capture_output=True, text=True)
        assert completed.returncode == 1
        assert "does not exist" in completed.stderr

"""Render static figures from the simulator's CSV time series.

Three layouts are supported, keyed by figure id:

* ``fig2`` - ergotropy vs t, panels (a) excited and (b) intermediate initial
  state, one curve per r value;
* ``fig3`` - the first-law quantities dU, dW, dQ_B vs t, one panel per r;
* ``fig4`` - entropy production vs t, panels (a) excited, (b) intermediate,
  (c) ground, one curve per r value.

Inputs are the unmodified ``run.csv`` files of the simulator CLI; each input
carries a label ``<initial_state>,r=<value>``. Rendering is read-only over
the inputs and overwrites its output deterministically.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

OPEN_ERGOTROPY_HEADER = ("t", "ergotropy", "lambda_plus", "lambda_minus", "trace_rho_g")
LAWS_HEADER = ("t", "dU", "dW", "dQ_B", "residual", "sigma", "s_vn")

STATE_ORDER = ("excited", "intermediate", "ground")

# per-figure layout: expected CSV header, panel keying and plotted columns
_LAYOUTS = {
    "fig2": dict(header=OPEN_ERGOTROPY_HEADER, panels=("excited", "intermediate"),
                 columns=("ergotropy",), ylabel="ergotropy", panel_by="state"),
    "fig3": dict(header=LAWS_HEADER, panels=None,
                 columns=("dU", "dW", "dQ_B"), ylabel="energy", panel_by="r"),
    "fig4": dict(header=LAWS_HEADER, panels=("excited", "intermediate", "ground"),
                 columns=("sigma",), ylabel="entropy production", panel_by="state"),
}

# curve styling by ascending r: solid, dashed, dot-dashed, dotted
_LINESTYLES = ("-", "--", "-.", ":")


class FigureInputError(ValueError):
    """A CSV input is missing, malformed or inconsistent with the figure id."""


@dataclass(frozen=True)
class LabeledInput:
    path: Path
    state: str
    r: float


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    inputs: tuple[LabeledInput, ...]
    output: Path
    image_format: str | None = None


def parse_input_arg(text: str) -> LabeledInput:
    """Parse one ``<csv path>:<state>,r=<value>`` command-line item."""
    path_text, sep, label = text.rpartition(":")
    if not sep:
        raise FigureInputError(f"input must look like path:label, got {text!r}")
    state, sep, r_part = label.partition(",")
    if not sep or not r_part.startswith("r="):
        raise FigureInputError(
            f"label must look like <state>,r=<value>, got {label!r}"
        )
    if state not in STATE_ORDER:
        raise FigureInputError(f"unknown initial state {state!r} in label {label!r}")
    try:
        r = float(r_part[2:])
    except ValueError as exc:
        raise FigureInputError(f"could not parse r value in label {label!r}") from exc
    return LabeledInput(path=Path(path_text), state=state, r=r)


def _read_series(path: Path, expected_header) -> dict[str, list[float]]:
    if not path.exists():
        raise FigureInputError(f"input file does not exist: {path}")
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise FigureInputError(f"empty CSV (no header): {path}")
    header = rows[0]
    missing = [column for column in expected_header if column not in header]
    if missing:
        raise FigureInputError(
            f"column '{missing[0]}' missing from {path} (header: {header})"
        )
    if tuple(header) != tuple(expected_header):
        raise FigureInputError(
            f"unexpected header in {path}: got {header}, expected {list(expected_header)}"
        )
    if len(rows) < 2:
        raise FigureInputError(f"empty CSV (no data rows): {path}")
    data = {column: [] for column in header}
    for row in rows[1:]:
        for column, cell in zip(header, row):
            data[column].append(float(cell))
    return data


def render(spec: FigureSpec):
    """Render one figure and save it; returns the matplotlib Figure."""
    if spec.figure_id not in _LAYOUTS:
        raise FigureInputError(
            f"unknown figure id {spec.figure_id!r}; expected one of {sorted(_LAYOUTS)}"
        )
    layout = _LAYOUTS[spec.figure_id]
    if not spec.inputs:
        raise FigureInputError("no inputs given")

    # read and validate everything before any output is produced
    series = [(item, _read_series(item.path, layout["header"])) for item in spec.inputs]

    if layout["panel_by"] == "state":
        panel_keys = list(layout["panels"])
        for key in panel_keys:
            if not any(item.state == key for item, _ in series):
                raise FigureInputError(
                    f"{spec.figure_id} needs at least one input for the "
                    f"'{key}' initial state"
                )
        extra = {item.state for item, _ in series} - set(panel_keys)
        if extra:
            raise FigureInputError(
                f"{spec.figure_id} does not use initial state(s): {sorted(extra)}"
            )
    else:
        panel_keys = sorted({item.r for item, _ in series})

    r_rank = {r: i for i, r in enumerate(sorted({item.r for item, _ in series}))}
    fig, axes = plt.subplots(
        1, len(panel_keys), figsize=(4.2 * len(panel_keys), 3.4), squeeze=False
    )
    axes = axes[0]
    for index, (ax, key) in enumerate(zip(axes, panel_keys)):
        if layout["panel_by"] == "state":
            members = [(item, data) for item, data in series if item.state == key]
            members.sort(key=lambda pair: pair[0].r)
            title = f"({chr(ord('a') + index)}) {key}"
            for item, data in members:
                style = _LINESTYLES[min(r_rank[item.r], len(_LINESTYLES) - 1)]
                for column in layout["columns"]:
                    ax.plot(data["t"], data[column], style, label=f"r={item.r:g}")
        else:
            members = [(item, data) for item, data in series if item.r == key]
            title = f"({chr(ord('a') + index)}) r={key:g}"
            for item, data in members:
                for j, column in enumerate(layout["columns"]):
                    style = _LINESTYLES[min(j, len(_LINESTYLES) - 1)]
                    ax.plot(data["t"], data[column], style, label=column)
        ax.set_title(title)
        ax.set_xlabel("t")
        ax.legend(fontsize=8)
    axes[0].set_ylabel(layout["ylabel"])
    fig.tight_layout()
    output = Path(spec.output)
    output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(output, format=spec.image_format)
    return fig

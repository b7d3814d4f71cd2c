"""Render sweep results as a scatter plot with a worst-slope envelope line.

Input is the CSV / summary-JSON pair written by ``qubitcert sweep``. Nothing
numerical is recomputed here: the dashed envelope is anchored at the origin
and its slope is taken verbatim from the summary's ``worst_slope`` field, so
the figure can never disagree with the sweep that produced it.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

# column contract of the sweep CSV; anything else is a different file format
CSV_HEADER = ("index", "epsilon", "distance", "d_state", "d_meas",
              "infid_s", "infid_sinv")

DEFAULT_XLABEL = "failure probability"
DEFAULT_YLABEL = "model distance"
DEFAULT_MAX_POINTS = 20000


class InputError(ValueError):
    """The CSV or summary JSON is missing, truncated, or malformed."""


@dataclass(frozen=True)
class FigureSpec:
    """Everything needed to render one figure."""

    csv_path: Path
    summary_path: Path
    out_path: Path
    xlabel: str = DEFAULT_XLABEL
    ylabel: str = DEFAULT_YLABEL
    max_points: int = DEFAULT_MAX_POINTS


def load_points(path) -> np.ndarray:
    """Read a sweep CSV and return an (n, 2) float array of (epsilon, distance)."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"csv not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputError(f"empty csv: {path}") from None
        if tuple(header) != CSV_HEADER:
            raise InputError(
                f"unexpected csv header: {','.join(header)!r}")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(CSV_HEADER):
                raise InputError(
                    f"{path}:{lineno}: expected {len(CSV_HEADER)} fields, "
                    f"got {len(row)}")
            try:
                rows.append((float(row[1]), float(row[2])))
            except ValueError:
                raise InputError(
                    f"{path}:{lineno}: non-numeric value") from None
    if not rows:
        raise InputError(f"no data rows in {path}")
    return np.asarray(rows, dtype=float)


def load_summary(path) -> dict:
    """Read the summary sidecar; only worst_slope is required."""
    path = Path(path)
    if not path.is_file():
        raise InputError(f"summary not found: {path}")
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid summary JSON: {exc}") from None
    if not isinstance(payload, dict) or "worst_slope" not in payload:
        raise InputError("summary must be a JSON object with worst_slope")
    slope = payload["worst_slope"]
    if isinstance(slope, bool) or not isinstance(slope, (int, float)) \
            or not math.isfinite(slope) or slope < 0:
        raise InputError(f"worst_slope must be a finite nonnegative number, "
                         f"got {slope!r}")
    return payload


def subsample(points: np.ndarray, limit: int) -> np.ndarray:
    """Thin to at most limit rows with an even stride.

    The rows with the largest epsilon and largest distance are always kept so
    thinning never shrinks the visible extent of the cloud.
    """
    if limit < 1:
        raise InputError("max points must be >= 1")
    if len(points) <= limit:
        return points
    idx = np.linspace(0, len(points) - 1, limit).round().astype(int)
    extremes = np.array([points[:, 0].argmax(), points[:, 1].argmax()])
    idx = np.unique(np.concatenate([idx, extremes]))
    return points[idx]


def build_figure(points: np.ndarray, summary: dict, spec: FigureSpec):
    """Assemble the matplotlib figure; file output lives in render_scatter.

    Split out so tests can inspect the scatter offsets and line data instead
    of parsing a rasterized image.
    """
    shown = subsample(points, spec.max_points)
    slope = float(summary["worst_slope"])
    x_max = float(points[:, 0].max())
    if x_max <= 0.0:
        x_max = 1.0

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.scatter(shown[:, 0], shown[:, 1], s=4, alpha=0.4, linewidths=0,
               label=f"{len(points)} models")
    line_x = np.array([0.0, x_max])
    ax.plot(line_x, slope * line_x, linestyle="--", color="black",
            label=f"envelope slope {slope:.3g}")
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.set_xlim(left=0.0)
    ax.set_ylim(bottom=0.0)
    ax.legend(loc="upper left", frameon=False)
    fig.tight_layout()
    return fig, ax


def render_scatter(spec: FigureSpec) -> Path:
    """Load the inputs, draw the figure, and write the image file."""
    points = load_points(spec.csv_path)
    summary = load_summary(spec.summary_path)
    fig, _ = build_figure(points, summary, spec)
    out = Path(spec.out_path)
    try:
        fig.savefig(out, dpi=150)
    finally:
        plt.close(fig)
    return out

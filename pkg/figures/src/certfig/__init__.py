"""Scatter figure renderer for gate-certification sweep results."""

from .figure import (
    CSV_HEADER,
    DEFAULT_MAX_POINTS,
    DEFAULT_XLABEL,
    DEFAULT_YLABEL,
    FigureSpec,
    InputError,
    build_figure,
    load_points,
    load_summary,
    render_scatter,
    subsample,
)

__all__ = [
    "CSV_HEADER",
    "DEFAULT_MAX_POINTS",
    "DEFAULT_XLABEL",
    "DEFAULT_YLABEL",
    "FigureSpec",
    "InputError",
    "build_figure",
    "load_points",
    "load_summary",
    "render_scatter",
    "subsample",
]

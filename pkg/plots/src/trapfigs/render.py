"""Static figure rendering for exported trap grids.

Three kinds: `contour` (2D potential cuts), `line` (1D scans) and
`minima-map` (per-column minima, 1D profile or 2D map).  Output is
deterministic for fixed input and style: fixed rcParams, pinned PNG
metadata, no timestamps.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .reader import SchemaError, load_grid

KINDS = ("contour", "line", "minima-map")

STYLE_VERSION = "trapfigs-style/1"

_RC = {
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 130,
    "savefig.dpi": 130,
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "svg.hashsalt": STYLE_VERSION,
}

_LABELS = {
    "potential": "potential (uK)",
    "length": "minimum height (um)",
}


@dataclass(frozen=True)
class FigureSpec:
    """One rendering job: input grid, plot kind, output PNG, scale limits."""

    input_path: str
    kind: str
    output_path: str
    vmin: float | None = None  # colour/energy scale lower limit (uK)
    vmax: float | None = None
    title: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown plot kind {self.kind!r}", column="kind")


def _axis_label(name):
    return f"{name} (um)"


def _line_plot(ax, grid, spec, marker=""):
    s = grid.axis_values[0]
    ax.plot(s, grid.values, lw=1.4, marker=marker, ms=2.5, color="#1f5fa8")
    ax.set_xlabel(_axis_label(grid.axis_names[0]))
    ax.set_ylabel(_LABELS[grid.quantity])
    if spec.vmin is not None or spec.vmax is not None:
        ax.set_ylim(spec.vmin, spec.vmax)


def _contour_plot(fig, ax, grid, spec):
    h = grid.axis_values[0]
    v = grid.axis_values[1]
    vals = np.ma.masked_invalid(grid.values).T  # rows follow the second axis
    levels = 31
    img = ax.contourf(h, v, vals, levels=levels, cmap="RdYlBu_r",
                      vmin=spec.vmin, vmax=spec.vmax)
    ax.contour(h, v, vals, levels=levels, colors="k", linewidths=0.25, alpha=0.4)
    fig.colorbar(img, ax=ax, label=_LABELS[grid.quantity])
    ax.set_xlabel(_axis_label(grid.axis_names[0]))
    ax.set_ylabel(_axis_label(grid.axis_names[1]))


def _map_plot(fig, ax, grid, spec):
    h = grid.axis_values[0]
    v = grid.axis_values[1]
    vals = np.ma.masked_invalid(grid.values).T
    img = ax.pcolormesh(h, v, vals, cmap="RdYlBu_r", shading="nearest",
                        vmin=spec.vmin, vmax=spec.vmax)
    fig.colorbar(img, ax=ax, label=_LABELS[grid.quantity])
    ax.set_xlabel(_axis_label(grid.axis_names[0]))
    ax.set_ylabel(_axis_label(grid.axis_names[1]))


def render(spec):
    """Render one figure; returns the output path.

    Raises SchemaError for missing/invalid inputs or a kind/shape mismatch.
    """
    grid = load_grid(spec.input_path)
    if spec.kind == "contour" and grid.ndim != 2:
        raise SchemaError("contour needs a 2D grid", column=grid.axis_names[0])
    if spec.kind == "line" and grid.ndim != 1:
        raise SchemaError("line needs a 1D grid", column=grid.axis_names[0])
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        if spec.kind == "contour":
            _contour_plot(fig, ax, grid, spec)
        elif spec.kind == "line":
            _line_plot(ax, grid, spec)
        elif grid.ndim == 1:  # minima-map, 1D profile
            _line_plot(ax, grid, spec, marker="o")
        elif grid.ndim == 2:
            _map_plot(fig, ax, grid, spec)
        else:
            raise SchemaError("minima-map needs a 1D or 2D grid",
                              column=grid.axis_names[0])
        title = spec.title
        if title is None:
            name = grid.metadata.get("config_name", "")
            title = f"{name} {'/'.join(grid.axis_names)}".strip()
        ax.set_title(title)
        out = Path(spec.output_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(out, format="png",
                    metadata={"Software": STYLE_VERSION})
        plt.close(fig)
    return out

"""Sampled scalar fields on regular axes, with CSV/JSON export.

Values are stored in SI (joules for potentials, metres for length maps).
JSON export keeps full float precision and round-trips bit-exactly; CSV is
the plot-friendly format (micrometres / microkelvin, 9 significant digits).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.constants import k as k_B

from .errors import ConfigError

GRID_SCHEMA = "crosstrap.grid/1"

# quantity tag -> (CSV value column, SI -> CSV scale)
_QUANTITIES = {
    "potential": ("potential_uK", 1.0 / (k_B * 1e-6)),
    "length": ("x_min_um", 1e6),
}


@dataclass(frozen=True)
class GridAxis:
    """One uniformly sampled axis: name, start [m], step [m], count."""

    name: str
    start: float
    step: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError("axis needs at least one sample", field=f"axis.{self.name}")
        if self.count > 1 and self.step == 0.0:
            raise ConfigError("axis step must be nonzero", field=f"axis.{self.name}")

    @property
    def values(self):
        return self.start + self.step * np.arange(self.count)


@dataclass
class PotentialGrid:
    """Values sampled over the outer product of the axes (row-major)."""

    axes: tuple[GridAxis, ...]
    values: np.ndarray
    metadata: dict = field(default_factory=dict)
    quantity: str = "potential"

    def __post_init__(self):
        shape = tuple(ax.count for ax in self.axes)
        self.values = np.asarray(self.values, dtype=float).reshape(shape)
        if self.quantity not in _QUANTITIES:
            raise ValueError(f"unknown quantity {self.quantity!r}")

    @property
    def values_uK(self):
        """Potential in microkelvin (potential grids only)."""
        if self.quantity != "potential":
            raise ValueError("values_uK applies to potential grids")
        return self.values / (k_B * 1e-6)

    def axis(self, name):
        for ax in self.axes:
            if ax.name == name:
                return ax
        raise KeyError(name)


def grid_to_json(grid, path):
    """Write a grid as JSON; floats keep repr precision (lossless)."""
    doc = {
        "schema": GRID_SCHEMA,
        "quantity": grid.quantity,
        "axes": [
            {"name": ax.name, "start_m": ax.start, "step_m": ax.step, "count": ax.count}
            for ax in grid.axes
        ],
        "values_si": grid.values.ravel().tolist(),
        "metadata": grid.metadata,
    }
    with open(path, "w", newline="\n") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def grid_from_json(path):
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("schema") != GRID_SCHEMA:
        raise ConfigError(f"not a grid file (schema {doc.get('schema')!r})", field="schema")
    axes = tuple(
        GridAxis(a["name"], a["start_m"], a["step_m"], a["count"]) for a in doc["axes"]
    )
    return PotentialGrid(
        axes=axes,
        values=np.array(doc["values_si"], dtype=float),
        metadata=doc.get("metadata", {}),
        quantity=doc.get("quantity", "potential"),
    )


def _fmt(x):
    return f"{x:.9g}"


def grid_to_csv(grid, path):
    """Write a grid as CSV: coordinate columns in um, value in uK (or um)."""
    value_col, scale = _QUANTITIES[grid.quantity]
    coord_cols = [f"{ax.name}_um" for ax in grid.axes]
    grids = np.meshgrid(*[ax.values * 1e6 for ax in grid.axes], indexing="ij")
    flat_coords = [g.ravel() for g in grids]
    flat_values = grid.values.ravel() * scale
    with open(path, "w", newline="\n") as fh:
        for key in sorted(grid.metadata):
            fh.write(f"# {key}: {grid.metadata[key]}\n")
        fh.write(",".join(coord_cols + [value_col]) + "\n")
        for row in zip(*flat_coords, flat_values):
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def grid_from_csv(path):
    """Re-import a CSV grid (precision limited to the 9-digit format)."""
    metadata = {}
    with open(path) as fh:
        line = fh.readline()
        while line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, val = body.split(":", 1)
                metadata[key.strip()] = val.strip()
            line = fh.readline()
        header = [c.strip() for c in line.strip().split(",")]
        if not header or not header[-1]:
            raise ConfigError("empty or headerless CSV grid", field="header")
        rows = [ln.strip().split(",") for ln in fh if ln.strip()]
    value_col = header[-1]
    quantity = None
    for q, (col, _) in _QUANTITIES.items():
        if col == value_col:
            quantity = q
    if quantity is None:
        raise ConfigError(f"unknown value column {value_col!r}", field=value_col)
    if not all(c.endswith("_um") for c in header[:-1]):
        bad = [c for c in header[:-1] if not c.endswith("_um")]
        raise ConfigError(f"unexpected coordinate column {bad[0]!r}", field=bad[0])
    data = np.array(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != len(header):
        raise ConfigError("ragged CSV grid", field=value_col)
    axes = []
    for j, col in enumerate(header[:-1]):
        vals = np.unique(data[:, j])
        step = float(vals[1] - vals[0]) * 1e-6 if len(vals) > 1 else 0.0
        axes.append(GridAxis(col[:-3], float(vals[0]) * 1e-6, step, len(vals)))
    _, scale = _QUANTITIES[quantity]
    values = data[:, -1] / scale
    return PotentialGrid(tuple(axes), values, metadata, quantity)

"""Readers for the exported grid files (CSV and JSON).

This package is a pure consumer of the documented export schema; it never
imports the solver package. CSV carries display units (um / uK); JSON
carries SI values, converted here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

JSON_SCHEMA = "crosstrap.grid/1"
K_B = 1.380649e-23

# value column -> (quantity tag, SI -> display scale)
VALUE_COLUMNS = {
    "potential_uK": ("potential", 1.0 / (K_B * 1e-6)),
    "x_min_um": ("length", 1e6),
}


class SchemaError(Exception):
    """Input file does not match the grid schema.

    `column` names the offending column or field when known.
    """

    def __init__(self, message, column=None):
        self.column = column
        super().__init__(f"[{column}] {message}" if column else message)


@dataclass
class Grid:
    """A loaded grid in display units (coordinates um, potential uK)."""

    axis_names: list
    axis_values: list  # list of 1D arrays, um
    values: np.ndarray  # display units, shape = axis lengths
    quantity: str  # "potential" or "length"
    value_label: str  # column name, e.g. potential_uK
    metadata: dict = field(default_factory=dict)

    @property
    def ndim(self):
        return len(self.axis_names)


def _load_csv(path):
    metadata = {}
    with open(path) as fh:
        line = fh.readline()
        while line.startswith("#"):
            body = line[1:].strip()
            if ":" in body:
                key, val = body.split(":", 1)
                metadata[key.strip()] = val.strip()
            line = fh.readline()
        header = [c.strip() for c in line.strip().split(",")] if line.strip() else []
        rows = [ln.strip().split(",") for ln in fh if ln.strip()]
    if not header or header == [""]:
        raise SchemaError("empty grid file (no header row)")
    value_col = header[-1]
    if value_col not in VALUE_COLUMNS:
        raise SchemaError(f"unknown value column {value_col!r}", column=value_col)
    coord_cols = header[:-1]
    if not coord_cols:
        raise SchemaError("no coordinate columns before the value column",
                          column=value_col)
    for col in coord_cols:
        if not col.endswith("_um"):
            raise SchemaError(f"coordinate column {col!r} lacks the _um suffix",
                              column=col)
    if not rows:
        raise SchemaError("grid file has a header but no samples",
                          column=value_col)
    try:
        data = np.array(rows, dtype=float)
    except ValueError as exc:
        raise SchemaError(f"non-numeric cell: {exc}", column=value_col) from exc
    if data.ndim != 2 or data.shape[1] != len(header):
        raise SchemaError("ragged rows", column=value_col)
    axis_values = []
    shape = []
    for j, col in enumerate(coord_cols):
        vals = np.unique(data[:, j])
        axis_values.append(vals)
        shape.append(len(vals))
    if int(np.prod(shape)) != data.shape[0]:
        raise SchemaError(
            f"samples do not fill the axis grid ({data.shape[0]} rows, "
            f"expected {int(np.prod(shape))})", column=coord_cols[0])
    quantity, _ = VALUE_COLUMNS[value_col]
    values = data[:, -1].reshape(shape)
    names = [c[:-3] for c in coord_cols]
    return Grid(names, axis_values, values, quantity, value_col, metadata)


def _load_json(path):
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg}") from exc
    if doc.get("schema") != JSON_SCHEMA:
        raise SchemaError(f"schema tag {doc.get('schema')!r} is not {JSON_SCHEMA}",
                          column="schema")
    for key in ("axes", "values_si", "quantity"):
        if key not in doc:
            raise SchemaError(f"missing field {key!r}", column=key)
    quantity = doc["quantity"]
    label = None
    for col, (q, _) in VALUE_COLUMNS.items():
        if q == quantity:
            label = col
    if label is None:
        raise SchemaError(f"unknown quantity {quantity!r}", column="quantity")
    _, scale = VALUE_COLUMNS[label]
    names, axis_values, shape = [], [], []
    for ax in doc["axes"]:
        try:
            names.append(ax["name"])
            vals = (ax["start_m"] + ax["step_m"] * np.arange(ax["count"])) * 1e6
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"bad axis entry: {exc}", column="axes") from exc
        axis_values.append(vals)
        shape.append(int(ax["count"]))
    values = np.asarray(doc["values_si"], dtype=float) * scale
    if values.size != int(np.prod(shape)):
        raise SchemaError("values_si length does not match the axes",
                          column="values_si")
    return Grid(names, axis_values, values.reshape(shape), quantity, label,
                doc.get("metadata", {}))


def load_grid(path):
    """Load a grid export; raises SchemaError on any mismatch."""
    path = Path(path)
    if not path.exists():
        raise SchemaError(f"input file {path} does not exist")
    if path.suffix.lower() == ".json":
        return _load_json(path)
    return _load_csv(path)

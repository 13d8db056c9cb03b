"""Shared plumbing for the figure scripts.

The scripts are read-only consumers of the experiment CSVs and their JSON
sidecars: nothing is recomputed, nothing is mutated or reordered.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path


class MissingColumnError(KeyError):
    """A referenced column is absent from the CSV header."""

    def __init__(self, column: str, path: str):
        super().__init__(f"column {column!r} not found in {path}")
        self.column = column


@dataclass
class FigureSpec:
    """One rendering request: CSV in, image out."""

    csv_path: str
    x_column: str
    y_columns: list
    output_path: str
    reference_lines: dict = field(default_factory=dict)  # label -> y value


def read_csv(path: str):
    """Rows as dicts plus the header, in file order."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        rows = list(reader)
    if not rows:
        raise ValueError(f"{path} has no data rows")
    return header, rows


def read_sidecar(csv_path: str) -> dict:
    """The summary sidecar written next to the CSV, or {} if absent."""
    side = Path(csv_path).with_suffix(".summary.json")
    if side.exists():
        return json.loads(side.read_text())
    return {}


def require_columns(header, columns, path: str) -> None:
    for col in columns:
        if col not in header:
            raise MissingColumnError(col, path)


def config_echo(sidecar: dict) -> str:
    """One-line seed/grid echo embedded in every figure."""
    cfg = sidecar.get("config", {})
    if not cfg:
        return "no config sidecar"
    parts = [f"seed={sidecar.get('master_seed', cfg.get('master_seed'))}"]
    for key in ("n_values", "m_values", "p_values", "beta_values"):
        values = cfg.get(key)
        if values:
            parts.append(f"{key.split('_')[0]}={values}")
    parts.append(f"trials={cfg.get('trials')}")
    return "  ".join(str(p) for p in parts)


def group_mean(rows, key_col: str, value_col: str):
    """Mean of value_col per distinct key_col value, keys in first-seen order."""
    order = []
    sums: dict = {}
    counts: dict = {}
    for row in rows:
        key = row[key_col]
        if key not in sums:
            order.append(key)
            sums[key] = 0.0
            counts[key] = 0
        sums[key] += float(row[value_col])
        counts[key] += 1
    return [(key, sums[key] / counts[key]) for key in order]


def save_figure(fig, spec: FigureSpec, echo: str) -> None:
    fig.text(0.01, 0.01, echo, fontsize=6, alpha=0.7)
    fig.savefig(spec.output_path, dpi=150, metadata={"Description": echo})

"""Trajectory tables and their CSV / JSON writers.

Complex quantities are split into adjacent ``<name>_re`` and ``<name>_im``
columns; CSV values use ``%.17g`` so that files round-trip losslessly.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np
from pydantic import Field

from app.conventions import conventions_hash
from app.exceptions import DimensionError
from app.schema import OutputFormat
from app.twistor_core.types import ArrayModel


class TrajectoryTable(ArrayModel):
    columns: List[str] = Field(default_factory=list)
    rows: np.ndarray = Field(default_factory=lambda: np.empty((0, 0)))
    metadata: Dict[str, Any] = Field(default_factory=dict)

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]


class TableBuilder:
    """Accumulates named columns of equal length."""

    def __init__(self, length: int):
        self.length = length
        self.names: List[str] = []
        self.values: List[np.ndarray] = []

    def add(self, name: str, values: Union[np.ndarray, List[float]]) -> "TableBuilder":
        values = np.asarray(values)
        if values.shape != (self.length,):
            raise DimensionError(f"column {name} has shape {values.shape}, expected ({self.length},)")
        if np.iscomplexobj(values):
            self.names += [f"{name}_re", f"{name}_im"]
            self.values += [values.real.astype(float), values.imag.astype(float)]
        else:
            self.names.append(name)
            self.values.append(values.astype(float))
        return self

    def add_matrix(self, name: str, matrices: np.ndarray) -> "TableBuilder":
        """One complex column per entry, named <name><i><j> with 1-based indices."""
        matrices = np.asarray(matrices)
        for i in range(matrices.shape[1]):
            for j in range(matrices.shape[2]):
                self.add(f"{name}{i + 1}{j + 1}", matrices[:, i, j].astype(complex))
        return self

    def build(self, metadata: Dict[str, Any]) -> TrajectoryTable:
        rows = np.column_stack(self.values) if self.values else np.empty((self.length, 0))
        return TrajectoryTable(
            columns=self.names,
            rows=rows,
            metadata={**metadata, "conventions_hash": conventions_hash()},
        )


def write_csv(table: TrajectoryTable, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, table.rows, fmt="%.17g", delimiter=",", header=",".join(table.columns), comments="")
    return path


def _finite_or_none(value: float):
    return float(value) if np.isfinite(value) else None


def write_json(table: TrajectoryTable, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "metadata": table.metadata,
        "columns": table.columns,
        "rows": [[_finite_or_none(x) for x in row] for row in table.rows],
    }
    with path.open("w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    return path


def write_table(table: TrajectoryTable, path: Path, fmt: OutputFormat) -> Path:
    if OutputFormat(fmt) == OutputFormat.JSON:
        return write_json(table, path)
    return write_csv(table, path)


def read_csv(path: Path) -> TrajectoryTable:
    """Inverse of write_csv, for cross-checks and tests."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as f:
        columns = f.readline().strip().split(",")
    rows = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return TrajectoryTable(columns=columns, rows=rows)

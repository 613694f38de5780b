import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.cli.export import TableBuilder, read_csv, write_csv, write_json, write_table
from app.conventions import conventions_hash
from app.exceptions import DimensionError
from app.schema import OutputFormat


@pytest.fixture
def table():
    """Three rows with a real, a complex and a matrix column."""
    builder = TableBuilder(3)
    builder.add("s", [0.0, 0.5, 1.0])
    builder.add("z", np.array([1 + 2j, 3 - 1j, np.nan]))
    builder.add_matrix("A", np.arange(12, dtype=float).reshape(3, 2, 2))
    return builder.build({"n": 2})


def test_columns(table):
    assert table.columns[:3] == ["s", "z_re", "z_im"]
    assert "A12_re" in table.columns
    assert "A21_im" in table.columns
    assert table.rows.shape == (3, 3 + 8)
    assert table.metadata["conventions_hash"] == conventions_hash()
    assert_allclose(table.column("A12_re"), [1.0, 5.0, 9.0])


def test_length_mismatch():
    with pytest.raises(DimensionError):
        TableBuilder(2).add("s", [1.0, 2.0, 3.0])


def test_csv_round_trip(table, tmp_path):
    path = write_csv(table, tmp_path / "sub" / "table.csv")
    back = read_csv(path)
    assert back.columns == table.columns
    assert_allclose(back.rows, table.rows, equal_nan=True, rtol=0, atol=0)


def test_json_layout(table, tmp_path):
    path = write_json(table, tmp_path / "table.json")
    payload = json.loads(path.read_text())
    assert set(payload) == {"metadata", "columns", "rows"}
    assert payload["metadata"]["n"] == 2
    assert payload["rows"][2][1] is None
    assert path.read_text().endswith("\n")


def test_write_table_dispatch(table, tmp_path):
    csv_path = write_table(table, tmp_path / "a.csv", OutputFormat.CSV)
    json_path = write_table(table, tmp_path / "a.json", "json")
    assert csv_path.read_text().startswith("s,z_re,z_im")
    assert json_path.read_text().lstrip().startswith("{")

import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from app.cli import main
from app.cli.export import read_csv
from app.cli.runner import build_parser, build_run_config, parse_tolerance
from app.exceptions import ConfigError


def simulate(tmp_path, name, *flags):
    out = tmp_path / name
    assert main(["simulate", "--out", str(out), *flags]) == 0
    return out


def write_matrix(tmp_path, rows):
    path = tmp_path / "rho.json"
    path.write_text(json.dumps(rows))
    return str(path)


# ---------------------------------------------------------------- arguments


def test_parse_tolerance():
    assert parse_tolerance("rk4=1e-3") == {"rk4": 1e-3}


def test_flags_override_config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"n": 3, "seed": 4, "tolerances": {"rk4": 1e-3}}))
    args = build_parser().parse_args(["verify", "--config", str(path), "--seed", "9", "--tol", "forms=1e-5"])
    run = build_run_config(args)
    assert (run.n, run.seed) == (3, 9)
    assert run.tolerances == {"rk4": 1e-3, "forms": 1e-5}


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--tol", "nonsense=1e-3"],
        ["verify", "--tol", "rk4=-1"],
        ["verify", "--tol", "rk4"],
        ["verify", "--n", "0"],
        ["simulate", "--scenario", "orbit"],
        ["simulate", "--dt", "0"],
        ["verify", "--log-level", "chatty"],
        ["classify"],
        [],
    ],
)
def test_usage_errors(argv):
    assert main(argv) == 2


def test_bad_config_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text("{not json")
    assert main(["verify", "--config", str(path)]) == 2
    with pytest.raises(ConfigError):
        build_run_config(build_parser().parse_args(["verify", "--config", str(tmp_path / "missing.json")]))


# ---------------------------------------------------------------- verify


def test_verify_passes(tmp_path, capsys):
    out = tmp_path / "results.json"
    assert main(["verify", "--n", "2", "--samples", "5", "--seed", "1", "--out", str(out)]) == 0
    printed = capsys.readouterr().out
    assert "23/23 suites passed" in printed
    payload = json.loads(out.read_text())
    assert len(payload["results"]) == 23
    assert all(r["passed"] for r in payload["results"])


def test_verify_fails_with_impossible_tolerances(capsys):
    assert main(["verify", "--n", "1", "--samples", "1", "--tol", "all=1e-30"]) == 1
    assert "FAIL" in capsys.readouterr().out


# ---------------------------------------------------------------- simulate


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_simulate_is_deterministic(tmp_path, fmt):
    flags = ["--scenario", "riccati", "--n", "2", "--seed", "5", "--t-end", "1", "--dt", "0.05", "--format", fmt]
    first = simulate(tmp_path, f"a.{fmt}", *flags)
    second = simulate(tmp_path, f"b.{fmt}", *flags)
    assert first.read_bytes() == second.read_bytes()


def test_riccati_is_periodic(tmp_path):
    out = simulate(tmp_path, "riccati.csv", "--n", "2", "--t-end", str(np.pi), "--dt", "0.01")
    table = read_csv(out)
    assert table.columns[0] == "s"
    assert "Y12_re" in table.columns and "Itilde0" in table.columns
    assert_allclose(table.rows[-1, 1:], table.rows[0, 1:], atol=1e-8)
    y_size = np.max(np.abs(table.rows[:, [i for i, c in enumerate(table.columns) if c.startswith("Y")]]), axis=1)
    energy = table.column("Itilde0")[y_size < 100.0]
    assert_allclose(energy, energy[0], rtol=1e-8)


def test_kepler3d_default_orbit_is_planar(tmp_path):
    out = simulate(tmp_path, "kepler.csv", "--scenario", "kepler3d", "--t-end", str(np.pi), "--dt", "0.01")
    table = read_csv(out)
    for name in ("x3", "y3", "M1", "M2"):
        assert_allclose(table.column(name), 0.0, atol=1e-10)
    for name in ("M3", "Itilde0"):
        values = table.column(name)
        assert_allclose(values, values[0], atol=1e-9)
    physical = table.column("t_physical")
    assert physical[0] == 0.0
    assert np.all(np.diff(physical) > 0)


def test_kepler3d_radial_orbit(tmp_path):
    """Tests that y = 0 gives radial motion with vanishing angular momentum."""
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"scenario": "kepler3d", "params": {"y": [0, 0, 0], "x": [1, 0, 0]}}))
    out = tmp_path / "radial.csv"
    assert main(["simulate", "--config", str(path), "--out", str(out), "--t-end", str(np.pi), "--dt", "0.01"]) == 0
    table = read_csv(out)
    for name in ("y2", "y3", "x2", "x3", "M1", "M2", "M3"):
        values = table.column(name)
        assert_allclose(values[np.isfinite(values)], 0.0, atol=1e-9)


def test_kepler3d_needs_n2(tmp_path):
    assert main(["simulate", "--scenario", "kepler3d", "--n", "1", "--out", str(tmp_path / "k.csv")]) == 2


def test_perturbed_unperturbed_actions(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"scenario": "perturbed", "n": 2, "params": {"h0": "eta1 + xi1 + eta2*xi2"}}))
    out = tmp_path / "perturbed.json"
    assert main(["simulate", "--config", str(path), "--out", str(out), "--format", "json", "--t-end", "1", "--dt", "0.01"]) == 0
    payload = json.loads(out.read_text())
    assert payload["metadata"]["k"] == [1, -1]
    rows = np.array(payload["rows"], dtype=float)
    for r in range(1, 5):
        column = rows[:, payload["columns"].index(f"I{r}")]
        assert_allclose(column, column[0], atol=1e-6)


@pytest.mark.parametrize(
    "params",
    [
        {},
        {"h0": "eta1", "k": [1]},
        {"h0": "sin(eta1)"},
        {"h0": "eta1", "chart": [[1, 0], [0, 1]]},
    ],
)
def test_perturbed_bad_parameters(tmp_path, params):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"scenario": "perturbed", "n": 2, "params": params}))
    assert main(["simulate", "--config", str(path), "--out", str(tmp_path / "p.csv")]) == 2


# ---------------------------------------------------------------- classify


@pytest.mark.parametrize(
    "rows, label, rank",
    [
        ([[[0, 1], 0], [0, 0]], "(1,0)", "1"),
        ([[[0, 1], 0, 0], [0, [0, -1], 0], [0, 0, 0]], "(1,1)", "2"),
        ([[0, 0], [0, 0]], "(0,0)", "0"),
    ],
)
def test_classify(tmp_path, capsys, rows, label, rank):
    assert main(["classify", "--input", write_matrix(tmp_path, rows)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == [f"label {label}", f"rank {rank}", "nilpotent yes"]


def test_classify_reads_rho_key(tmp_path, capsys):
    path = tmp_path / "rho.json"
    path.write_text(json.dumps({"rho": [[[0, 2]]]}))
    assert main(["classify", "--input", str(path)]) == 0
    assert "label (1,0)" in capsys.readouterr().out


@pytest.mark.parametrize(
    "rows",
    [
        [[1, 0], [0, 0]],
        [[0, 1], [0]],
        [["a"]],
        [],
    ],
)
def test_classify_rejects_input(tmp_path, rows):
    assert main(["classify", "--input", write_matrix(tmp_path, rows)]) == 2


def test_classify_malformed_json(tmp_path):
    path = tmp_path / "rho.json"
    path.write_text("[[0, 1],")
    assert main(["classify", "--input", str(path)]) == 2

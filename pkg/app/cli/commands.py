"""The verify, simulate and classify commands.

Each command takes a validated RunConfig and returns an ExitCode; errors are
raised as TwistorError subclasses and mapped to exit codes by the runner.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from app.cli.export import TableBuilder, TrajectoryTable, write_table
from app.config import RunConfig, config
from app.dynamics.integrator import integrate_rk4
from app.dynamics.kepler import X_NORM, fictitious_to_physical, integrals_from_twistor, integrals_mr
from app.dynamics.riccati import flow_closed_form, linear_rhs
from app.exceptions import ConfigError, DimensionError, DomainError, MembershipError, SingularActionError
from app.integrable.chart import ActionAngleChart, actions, check_integrability, default_integrable
from app.integrable.hamiltonian import PerturbedSpec, eval_h_array, perturbed_rhs
from app.logger import logger
from app.momentum.maps import j0
from app.momentum.observables import i_tilde_plus_plus, i_tilde_zero
from app.momentum.sampling import random_rank_one_point
from app.momentum.types import CotangentUn
from app.regularize.pauli import ks_inverse_n2, ks_transform_n2, pauli_decompose
from app.schema import ExitCode, Realization, Scenario
from app.twistor_core.forms import anti_hermitian_residual, change_realization
from app.twistor_core.orbits import is_square_zero, orbit_label
from app.twistor_core.sampling import random_generic_twistor
from app.twistor_core.types import TwistorVector
from app.verify import SuiteContext, SuiteResult, default_suites


DEFAULT_KEPLER_Y = (0.0, 0.5, 0.0)
DEFAULT_KEPLER_X = (1.0, 0.0, 0.0)
# Relative |zeta|^2 below which a kepler3d sample is treated as a collision.
COLLISION_BAND = 1e-12


def _horizon(run: RunConfig) -> Tuple[float, float]:
    t_end = run.t_end if run.t_end is not None else config.simulation.t_end
    dt = run.dt if run.dt is not None else config.simulation.dt
    return t_end, dt


def _output_path(run: RunConfig) -> Path:
    if run.out:
        return Path(run.out)
    name = f"{run.scenario.value}_n{run.n}_seed{run.seed}.{run.format.value}"
    return config.output_root / name


def _metadata(run: RunConfig, t_end: float, dt: float, **extra: Any) -> Dict[str, Any]:
    return {
        "n": run.n,
        "seed": run.seed,
        "scenario": run.scenario.value,
        "t_end": t_end,
        "dt": dt,
        **extra,
    }


def _pauli_columns(builder: TableBuilder, name: str, matrices: List[np.ndarray]) -> None:
    parts = [pauli_decompose(m) for m in matrices]
    builder.add(f"{name}0", [p.scalar for p in parts])
    for axis in range(3):
        builder.add(f"{name}{axis + 1}", [p.vec[axis] for p in parts])


# ---------------------------------------------------------------- verify


def cmd_verify(run: RunConfig) -> ExitCode:
    """Run every verification suite and print one line per suite."""
    context = SuiteContext(
        n=run.n,
        seed=run.seed,
        samples=run.samples or config.verify.samples,
        tolerances=config.tolerances.override(run.tolerances),
        settings=config.verify,
    )
    suites = default_suites()
    logger.info(f"Running {len(suites)} suites with n={run.n}, seed={run.seed}, samples={context.samples}")
    results = suites.run_all(context)
    for result in results:
        print(result)
    passed = sum(1 for result in results if result.passed)
    print(f"{passed}/{len(results)} suites passed")
    if run.out:
        write_results(results, Path(run.out), run)
    return ExitCode.OK if passed == len(results) else ExitCode.FAILURE


def _finite_or_none(value: float) -> Optional[float]:
    return float(value) if np.isfinite(value) else None


def write_results(results: List[SuiteResult], path: Path, run: RunConfig) -> Path:
    """Suite results as JSON; non-finite residuals are written as null."""
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "metadata": {"n": run.n, "seed": run.seed, "samples": run.samples or config.verify.samples},
        "results": [
            {**result.model_dump(), "residual": _finite_or_none(result.residual),
             "tolerance": _finite_or_none(result.tolerance)}
            for result in results
        ],
    }
    with path.open("w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2)
        f.write("\n")
    logger.info(f"Suite results written to {path}")
    return path


# ---------------------------------------------------------------- simulate


def simulate_riccati(run: RunConfig) -> TrajectoryTable:
    """Closed-form flow of I~0 from a random rank-one point, sampled on an even grid."""
    t_end, dt = _horizon(run)
    rng = np.random.default_rng(run.seed)
    start = random_rank_one_point(run.n, rng)
    steps = max(1, int(np.ceil(t_end / dt - 1e-9)))
    times = np.linspace(0.0, t_end, steps + 1)

    size = run.n
    ys = np.full((times.size, size, size), np.nan, dtype=complex)
    xs = np.full_like(ys, np.nan)
    ms = np.full_like(ys, np.nan)
    rs = np.full_like(ys, np.nan)
    energy = np.full(times.size, np.nan)
    singular = 0
    for i, t in enumerate(times):
        try:
            p = flow_closed_form(start, float(t))
        except SingularActionError:
            singular += 1
            continue
        ys[i], xs[i] = p.Y, p.X
        ms[i], rs[i] = integrals_mr(p)
        energy[i] = i_tilde_zero(p)
    if singular:
        logger.warning(f"{singular} samples hit the chart boundary and were written as NaN")

    builder = TableBuilder(times.size).add("s", times)
    builder.add_matrix("Y", ys).add_matrix("X", xs).add("Itilde0", energy)
    builder.add_matrix("M", ms).add_matrix("R", rs)
    return builder.build(_metadata(run, t_end, dt))


def _kepler_start(run: RunConfig) -> Tuple[np.ndarray, np.ndarray]:
    y = np.array(run.params.y if run.params.y is not None else DEFAULT_KEPLER_Y, dtype=float)
    x = np.array(run.params.x if run.params.x is not None else DEFAULT_KEPLER_X, dtype=float)
    if y.shape != (3,) or x.shape != (3,):
        raise ConfigError("kepler3d needs 3-vectors y and x")
    return y, x


def _zeta_norm2(w: np.ndarray) -> float:
    zeta = change_realization(TwistorVector.from_stacked(w, Realization.DIAGONAL)).lower
    return float(np.vdot(zeta, zeta).real)


def simulate_kepler3d(run: RunConfig) -> TrajectoryTable:
    """RK4 on the twistor lift from a KS preimage of (y, x), mapped back row by row."""
    if run.n != 2:
        raise ConfigError(f"kepler3d is defined for n = 2, got n = {run.n}")
    t_end, dt = _horizon(run)
    y0, x0 = _kepler_start(run)
    try:
        start = change_realization(ks_inverse_n2(y0, x0))
    except DomainError as e:
        raise ConfigError(f"invalid kepler3d start: {e.message}") from e

    traj = integrate_rk4(
        linear_rhs,
        start.stacked,
        t_end,
        dt,
        {X_NORM: _zeta_norm2},
        log_every=config.simulation.log_every,
    )
    try:
        physical = fictitious_to_physical(traj)
    except DomainError as e:
        logger.warning(f"physical time unavailable: {e.message}")
        physical = np.full(traj.times.size, np.nan)

    rows = traj.times.size
    ys = np.full((rows, 3), np.nan)
    xs = np.full((rows, 3), np.nan)
    energy = np.empty(rows)
    ms, rs = [], []
    collisions = 0
    for i, w in enumerate(traj.states):
        v = TwistorVector.from_stacked(w, Realization.DIAGONAL)
        u = change_realization(v)
        energy[i] = i_tilde_plus_plus(u)
        m, r = integrals_from_twistor(v)
        ms.append(m)
        rs.append(r)
        if traj.invariants[X_NORM][i] <= COLLISION_BAND * (1.0 + energy[i]):
            collisions += 1
            continue
        ys[i], xs[i] = ks_transform_n2(u)
    if collisions:
        logger.warning(f"{collisions} samples at a collision; y and x written as NaN")

    builder = TableBuilder(rows).add("s", traj.times).add("t_physical", physical)
    for axis in range(3):
        builder.add(f"y{axis + 1}", ys[:, axis])
    for axis in range(3):
        builder.add(f"x{axis + 1}", xs[:, axis])
    builder.add("Itilde0", energy)
    _pauli_columns(builder, "M", ms)
    _pauli_columns(builder, "R", rs)
    return builder.build(_metadata(run, t_end, dt, y=y0.tolist(), x=x0.tolist()))


def perturbed_system(run: RunConfig) -> Tuple[PerturbedSpec, ActionAngleChart]:
    """PerturbedSpec and chart from the run parameters, filling gaps from default_integrable."""
    params = run.params
    if not params.h0:
        raise ConfigError("the perturbed scenario needs an h0 expression")
    chart, k, l = default_integrable(run.n)
    if params.k is not None:
        k = params.k
    if params.l is not None:
        l = params.l
    if len(k) != run.n or len(l) != run.n:
        raise ConfigError(f"exponent vectors k and l must have length n = {run.n}")
    if params.chart is not None:
        try:
            chart = ActionAngleChart.from_rows(params.chart)
        except (ValueError, DimensionError, MembershipError) as e:
            raise ConfigError(f"invalid chart: {e}") from e
        if chart.n != run.n:
            raise ConfigError(f"chart is for n = {chart.n}, run has n = {run.n}")
    spec = PerturbedSpec.from_expressions(params.h0, params.g0, k, l)
    violated = [r + 1 for r, ok in enumerate(check_integrability(chart, k, l)) if not ok]
    if violated:
        logger.warning(f"monomial violates integrability rows {violated}; those actions will drift")
    return spec, chart


def simulate_perturbed(run: RunConfig) -> TrajectoryTable:
    """RK4 flow of H = h0 + g0 (m + conj m) on twistor space, with the chart actions per row."""
    t_end, dt = _horizon(run)
    spec, chart = perturbed_system(run)
    rng = np.random.default_rng(run.seed)
    start = random_generic_twistor(run.n, rng)
    traj = integrate_rk4(
        perturbed_rhs(spec),
        start.stacked,
        t_end,
        dt,
        {"H": lambda w: eval_h_array(spec, w)},
        log_every=config.simulation.log_every,
    )
    values = np.array(
        [actions(chart, TwistorVector.from_stacked(w, Realization.DIAGONAL)) for w in traj.states]
    )

    n = run.n
    builder = TableBuilder(traj.times.size).add("s", traj.times)
    for j in range(n):
        builder.add(f"eta{j + 1}", traj.states[:, j])
    for j in range(n):
        builder.add(f"xi{j + 1}", traj.states[:, n + j])
    builder.add("H", traj.invariants["H"])
    for r in range(2 * n):
        builder.add(f"I{r + 1}", values[:, r])
    extra = {
        "h0": run.params.h0,
        "g0": run.params.g0,
        "k": list(spec.exponents.k),
        "l": list(spec.exponents.l),
        "chart": chart.rho.tolist(),
    }
    return builder.build(_metadata(run, t_end, dt, **extra))


SIMULATORS = {
    Scenario.RICCATI: simulate_riccati,
    Scenario.KEPLER3D: simulate_kepler3d,
    Scenario.PERTURBED: simulate_perturbed,
}


def cmd_simulate(run: RunConfig) -> ExitCode:
    """Integrate the configured scenario and write its trajectory table."""
    logger.info(f"Simulating {run.scenario.value} with n={run.n}, seed={run.seed}")
    table = SIMULATORS[run.scenario](run)
    path = write_table(table, _output_path(run), run.format)
    logger.info(f"{table.rows.shape[0]} rows x {len(table.columns)} columns written to {path}")
    print(path)
    return ExitCode.OK


# ---------------------------------------------------------------- classify


def _parse_entry(entry: Any) -> complex:
    if isinstance(entry, bool):
        raise ConfigError("matrix entries must be numbers or [re, im] pairs")
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, list) and len(entry) == 2 and all(
        isinstance(part, (int, float)) and not isinstance(part, bool) for part in entry
    ):
        return complex(entry[0], entry[1])
    raise ConfigError(f"cannot read matrix entry {entry!r}")


def read_matrix(path: Path) -> np.ndarray:
    """A square complex matrix from JSON rows of numbers or [re, im] pairs."""
    try:
        with Path(path).open("r", encoding="utf-8") as f:
            raw = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"Cannot read matrix file {path}: {e}") from e
    if isinstance(raw, dict):
        raw = raw.get("rho")
    if not isinstance(raw, list) or not raw or not all(isinstance(row, list) for row in raw):
        raise ConfigError("matrix file must hold a non-empty list of rows")
    size = len(raw)
    if any(len(row) != size for row in raw):
        raise ConfigError("matrix must be square")
    return np.array([[_parse_entry(entry) for entry in row] for row in raw], dtype=complex)


def classify(rho: np.ndarray) -> Tuple[Tuple[int, int], int, bool]:
    """Orbit label (k, l) of rho, and rank and nilpotency of J0(E, rho)."""
    label = orbit_label(rho)
    image = j0(CotangentUn(Z=np.eye(rho.shape[0]), rho=rho))
    nilpotent, rank = is_square_zero(image.matrix)
    return (label.k, label.l), rank, nilpotent


def cmd_classify(run: RunConfig, input_path: Optional[str]) -> ExitCode:
    """Report the nilpotent orbit of J0(E, rho) for a matrix rho read from a file."""
    if not input_path:
        raise ConfigError("classify needs --input with a matrix file")
    rho = read_matrix(Path(input_path))
    if anti_hermitian_residual(rho) > 1e-8:
        raise ConfigError("rho must be anti-hermitian")
    (k, l), rank, nilpotent = classify(rho)
    print(f"label ({k},{l})")
    print(f"rank {rank}")
    print(f"nilpotent {'yes' if nilpotent else 'no'}")
    if not nilpotent or rank != k + l:
        logger.warning(f"J0(E, rho) is inconsistent with ({k},{l}): rank {rank}, nilpotent={nilpotent}")
        return ExitCode.FAILURE
    return ExitCode.OK

import json
import threading
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from app.exceptions import ConfigError
from app.schema import OutputFormat, Scenario


def get_project_root() -> Path:
    """Get the project root directory"""
    return Path(__file__).resolve().parent.parent


PROJECT_ROOT = get_project_root()


class ToleranceSettings(BaseModel):
    """Acceptance thresholds of the verification suites (relative residuals)"""

    forms: float = Field(1e-12, description="Hermitian form and intertwiner residuals")
    membership: float = Field(1e-12, description="u(n,n) membership of momentum images")
    group_membership: float = Field(1e-10, description="U(n,n) membership of sampled elements")
    nilpotency: float = Field(1e-10, description="Square-zero residual of momentum images")
    quadratic: float = Field(1e-10, description="J^2 = c I J residual")
    equivariance: float = Field(1e-9, description="Equivariance and diagram residuals")
    round_trip: float = Field(1e-10, description="Cayley and realization round trips")
    lie_poisson: float = Field(1e-10, description="Lie-Poisson bracket of linear functions")
    regularization: float = Field(1e-9, description="k_reg / c_reg class distance")
    section: float = Field(1e-12, description="KS section identities")
    pullback: float = Field(1e-6, description="One-form pullback by finite differences")
    flow_ode: float = Field(1e-6, description="Closed-form flow against the Riccati field")
    periodicity: float = Field(1e-10, description="pi-periodicity and group property")
    rk4: float = Field(1e-6, description="RK4 against the closed-form flow")
    conservation: float = Field(1e-8, description="Drift of Itilde0, M, R along flows")
    kepler: float = Field(1e-10, description="H0 against Itilde0")
    mr_vectors: float = Field(1e-9, description="Pauli vectors of M, R against closed forms")
    fictitious_time: float = Field(1e-6, description="Quadrature refinement of physical time")
    canonical: float = Field(1e-6, description="Canonical brackets of action-angle charts")
    torus_drift: float = Field(1e-6, description="Torus momenta drift under the perturbed flow")
    negative_control: float = Field(1e-2, description="Minimum drift of a violated row")
    quadrature: float = Field(1e-6, description="Energy quadrature against reduced RK4")
    reduced_energy: float = Field(1e-8, description="Energy drift of the reduced flow")

    def override(self, overrides: Dict[str, float]) -> "ToleranceSettings":
        """Return a copy with the given keys replaced; key 'all' sets every tolerance."""
        values = self.model_dump()
        if "all" in overrides:
            values = {key: overrides["all"] for key in values}
        for key, value in overrides.items():
            if key == "all":
                continue
            if key not in values:
                raise ConfigError(f"Unknown tolerance key: {key}")
            values[key] = value
        return ToleranceSettings(**values)


class VerifySettings(BaseModel):
    """Sample counts and step sizes of the verification suites"""

    samples: int = Field(100, description="Random samples per suite")
    flow_samples: int = Field(3, description="Trajectories per flow suite")
    fd_step: float = Field(1e-6, description="Relative central-difference step")
    pullback_step: float = Field(1e-5, description="Curve step for the one-form pullback check")
    conservation_t_end: float = Field(10.0, description="Horizon of conservation sweeps")
    conservation_dt: float = Field(1e-3, description="RK4 step of conservation sweeps")
    perturbed_dt: float = Field(1e-2, description="RK4 step of the perturbed twistor flow")


class SimulationSettings(BaseModel):
    """Defaults of the simulate command"""

    t_end: float = Field(3.141592653589793, description="Fictitious-time horizon")
    dt: float = Field(1e-3, description="RK4 step")
    log_every: int = Field(500, description="Invariant log cadence in steps")
    output_dir: str = Field("output", description="Directory for trajectory files")


class LoggingSettings(BaseModel):
    """Loguru sinks"""

    print_level: str = Field("INFO", description="stderr level")
    logfile_level: str = Field("DEBUG", description="File sink level")
    name: str = Field("twistor", description="Log file prefix")
    directory: str = Field("logs", description="Log directory relative to the project root")
    to_file: bool = Field(True, description="Whether to write a log file")
    format: str = Field(
        "<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | {message}",
        description="stderr format",
    )


class AppConfig(BaseModel):
    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings)
    verify: VerifySettings = Field(default_factory=VerifySettings)
    simulation: SimulationSettings = Field(default_factory=SimulationSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    model_config = ConfigDict(arbitrary_types_allowed=True)


class ScenarioParameters(BaseModel):
    """Initial data and model parameters of the simulate scenarios"""

    y: Optional[List[float]] = Field(None, description="kepler3d: initial y vector")
    x: Optional[List[float]] = Field(None, description="kepler3d: initial x vector")
    h0: Optional[str] = Field(None, description="perturbed: h0 expression")
    g0: str = Field("0", description="perturbed: g0 expression")
    k: Optional[List[int]] = Field(None, description="perturbed: eta exponents")
    l: Optional[List[int]] = Field(None, description="perturbed: xi exponents")
    chart: Optional[List[List[float]]] = Field(
        None, description="perturbed: action chart rows (defaults to the standard chart)"
    )


class RunConfig(BaseModel):
    """One invocation of the command-line surface"""

    n: int = Field(2, ge=1, description="Half-dimension")
    seed: int = Field(0, description="Seed of every random draw")
    tolerances: Dict[str, float] = Field(
        default_factory=dict, description="Tolerance overrides (KEY -> value)"
    )
    scenario: Scenario = Field(Scenario.RICCATI, description="simulate scenario")
    out: Optional[str] = Field(None, description="Output path")
    format: OutputFormat = Field(OutputFormat.CSV, description="Output format")
    t_end: Optional[float] = Field(None, gt=0, description="Horizon override")
    dt: Optional[float] = Field(None, gt=0, description="Step override")
    samples: Optional[int] = Field(None, ge=1, description="Samples per suite override")
    params: ScenarioParameters = Field(default_factory=ScenarioParameters)

    @field_validator("tolerances")
    @classmethod
    def check_tolerance_keys(cls, value: Dict[str, float]) -> Dict[str, float]:
        known = set(ToleranceSettings.model_fields) | {"all"}
        unknown = sorted(set(value) - known)
        if unknown:
            raise ValueError(f"unknown tolerance keys: {', '.join(unknown)}")
        for key, tol in value.items():
            if not tol > 0:
                raise ValueError(f"tolerance {key} must be positive")
        return value

    @classmethod
    def from_json_file(cls, path: Path) -> "RunConfig":
        """Load a run config from JSON; malformed files raise ConfigError."""
        try:
            with Path(path).open("r", encoding="utf-8") as f:
                raw = json.load(f)
            return cls.model_validate(raw)
        except (OSError, json.JSONDecodeError, ValidationError) as e:
            raise ConfigError(f"Cannot load run config {path}: {e}") from e


class Config:
    _instance = None
    _lock = threading.Lock()
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            with cls._lock:
                if cls._instance is None:
                    cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            with self._lock:
                if not self._initialized:
                    self._config = None
                    self._load_initial_config()
                    self._initialized = True

    @staticmethod
    def _get_config_path() -> Optional[Path]:
        root = PROJECT_ROOT
        config_path = root / "config" / "config.toml"
        if config_path.exists():
            return config_path
        example_path = root / "config" / "config.example.toml"
        if example_path.exists():
            return example_path
        return None

    def _load_config(self) -> dict:
        config_path = self._get_config_path()
        if config_path is None:
            return {}
        with config_path.open("rb") as f:
            return tomllib.load(f)

    def _load_initial_config(self):
        raw_config = self._load_config()
        self._config = AppConfig(
            tolerances=ToleranceSettings(**raw_config.get("tolerances", {})),
            verify=VerifySettings(**raw_config.get("verify", {})),
            simulation=SimulationSettings(**raw_config.get("simulation", {})),
            logging=LoggingSettings(**raw_config.get("logging", {})),
        )

    @property
    def tolerances(self) -> ToleranceSettings:
        return self._config.tolerances

    @property
    def verify(self) -> VerifySettings:
        return self._config.verify

    @property
    def simulation(self) -> SimulationSettings:
        return self._config.simulation

    @property
    def logging(self) -> LoggingSettings:
        return self._config.logging

    @property
    def output_root(self) -> Path:
        """Get the default output directory"""
        return PROJECT_ROOT / self._config.simulation.output_dir

    @property
    def root_path(self) -> Path:
        """Get the root path of the application"""
        return PROJECT_ROOT


config = Config()

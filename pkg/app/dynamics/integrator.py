"""Fixed-step RK4 integration with an invariant log."""

from typing import Callable, Dict, Optional

import numpy as np
from pydantic import Field, model_validator

from app.exceptions import DimensionError, DomainError, IntegrationAbort
from app.logger import logger
from app.twistor_core.types import ArrayModel


VectorField = Callable[[np.ndarray], np.ndarray]
Invariant = Callable[[np.ndarray], float]


class Trajectory(ArrayModel):
    """Sampled states of one flow with the invariants evaluated at every sample."""

    times: np.ndarray = Field(..., description="Strictly increasing sample times")
    states: np.ndarray = Field(..., description="One flattened state per row")
    invariants: Dict[str, np.ndarray] = Field(default_factory=dict)

    @model_validator(mode="after")
    def check_samples(self):
        if self.states.ndim != 2 or self.states.shape[0] != self.times.size:
            raise DimensionError(
                f"{self.times.size} times do not match states of shape {self.states.shape}"
            )
        if np.any(np.diff(self.times) <= 0):
            raise DimensionError("trajectory times must be strictly increasing")
        for name, values in self.invariants.items():
            if values.shape != self.times.shape:
                raise DimensionError(f"invariant {name} has {values.size} samples")
        return self

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def drift(self, name: str) -> float:
        """max |I(t) - I(0)| over the trajectory."""
        values = self.invariants[name]
        return float(np.max(np.abs(values - values[0])))


def rk4_step(field: VectorField, state: np.ndarray, h: float) -> np.ndarray:
    k1 = field(state)
    k2 = field(state + 0.5 * h * k1)
    k3 = field(state + 0.5 * h * k2)
    k4 = field(state + h * k3)
    return state + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate_rk4(
    field: VectorField,
    state: np.ndarray,
    t_end: float,
    dt: float,
    invariants: Optional[Dict[str, Invariant]] = None,
    log_every: int = 0,
) -> Trajectory:
    """Classic RK4 from t = 0 to t_end.

    The step is the largest h <= dt dividing t_end evenly, so the last sample
    lands on t_end.

    Raises:
        DomainError: If dt <= 0 or t_end < 0.
        IntegrationAbort: On the first non-finite state.
    """
    if not dt > 0:
        raise DomainError(f"step must be positive, got {dt}")
    if t_end < 0:
        raise DomainError(f"horizon must be nonnegative, got {t_end}")
    invariants = invariants or {}
    steps = int(np.ceil(t_end / dt - 1e-9)) if t_end > 0 else 0
    h = t_end / steps if steps else 0.0

    state = np.array(state, dtype=complex)
    states = np.empty((steps + 1, state.size), dtype=complex)
    states[0] = state
    logged = {name: np.empty(steps + 1) for name in invariants}
    for name, fn in invariants.items():
        logged[name][0] = fn(state)

    for step in range(1, steps + 1):
        state = rk4_step(field, state, h)
        if not np.all(np.isfinite(state)):
            raise IntegrationAbort("non-finite state", step=step, time=step * h)
        states[step] = state
        for name, fn in invariants.items():
            logged[name][step] = fn(state)
        if log_every and step % log_every == 0:
            summary = ", ".join(f"{name}={logged[name][step]:.12g}" for name in logged)
            logger.debug(f"step {step}/{steps} t={step * h:.6g} {summary}")

    return Trajectory(
        times=np.linspace(0.0, t_end, steps + 1),
        states=states,
        invariants=logged,
    )

from app.dynamics.integrator import Trajectory, integrate_rk4
from app.dynamics.kepler import (
    fictitious_to_physical,
    integrals_from_twistor,
    integrals_mr,
    kepler_h0_n2,
    mr_vectors_n2,
    n_plus_minus,
)
from app.dynamics.riccati import (
    finite_difference_field,
    flow_closed_form,
    flow_linear,
    from_riccati_state,
    hamiltonian_field,
    riccati_state,
)


__all__ = [
    "Trajectory",
    "fictitious_to_physical",
    "finite_difference_field",
    "flow_closed_form",
    "flow_linear",
    "from_riccati_state",
    "hamiltonian_field",
    "integrals_from_twistor",
    "integrals_mr",
    "integrate_rk4",
    "kepler_h0_n2",
    "mr_vectors_n2",
    "n_plus_minus",
    "riccati_state",
]

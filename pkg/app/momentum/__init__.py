from app.momentum.actions import act_lambda, act_on_un, act_sigma_tilde
from app.momentum.functionals import (
    bracket_of_linear,
    lie_poisson_linear,
    linear_functional_eval,
    x_plus_minus,
    x_plus_plus,
)
from app.momentum.maps import j0, j0_tilde, j_pm, j_pm_tilde
from app.momentum.observables import (
    Observable,
    i_minus,
    i_plus,
    i_plus_plus,
    i_tilde_plus_plus,
    i_tilde_zero,
    i_zero,
    observable,
)
from app.momentum.poisson import poisson_bracket_flat, twistor_field
from app.momentum.types import CotangentHn, CotangentUn, LinearFunctional


__all__ = [
    "CotangentHn",
    "CotangentUn",
    "LinearFunctional",
    "Observable",
    "act_lambda",
    "act_on_un",
    "act_sigma_tilde",
    "bracket_of_linear",
    "i_minus",
    "i_plus",
    "i_plus_plus",
    "i_tilde_plus_plus",
    "i_tilde_zero",
    "i_zero",
    "j0",
    "j0_tilde",
    "j_pm",
    "j_pm_tilde",
    "lie_poisson_linear",
    "linear_functional_eval",
    "observable",
    "poisson_bracket_flat",
    "twistor_field",
    "x_plus_minus",
    "x_plus_plus",
]

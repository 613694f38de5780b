from app.integrable.chart import (
    ActionAngleChart,
    actions,
    angles,
    check_integrability,
    default_integrable,
    standard_chart,
    torus_momentum,
)
from app.integrable.expression import compile_expression
from app.integrable.hamiltonian import (
    ExponentVector,
    PerturbedSpec,
    bracket_with_actions,
    eval_h,
    eval_h_tilde,
    eval_h_tilde_n2,
    perturbed_field,
)
from app.integrable.reduction import (
    libration_bounds,
    libration_period,
    quadrature_solve,
    reduced_field,
    reduced_field_printed,
    reduced_h,
)


__all__ = [
    "ActionAngleChart",
    "ExponentVector",
    "PerturbedSpec",
    "actions",
    "angles",
    "bracket_with_actions",
    "check_integrability",
    "compile_expression",
    "default_integrable",
    "eval_h",
    "eval_h_tilde",
    "eval_h_tilde_n2",
    "libration_bounds",
    "libration_period",
    "perturbed_field",
    "quadrature_solve",
    "reduced_field",
    "reduced_field_printed",
    "reduced_h",
    "standard_chart",
    "torus_momentum",
]

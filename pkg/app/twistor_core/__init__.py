from app.twistor_core.forms import (
    ad_cayley,
    ad_cayley_inverse,
    adjoint,
    algebra_residual,
    cayley_intertwiner,
    change_realization,
    fractional_action,
    group_residual,
    is_algebra_element,
    is_anti_hermitian,
    is_group_element,
    is_hermitian,
    is_isotropic,
    is_unitary,
    isotropic_frame,
    make_form,
    null_invariant,
)
from app.twistor_core.orbits import (
    is_square_zero,
    orbit_label,
    rho_normal_form,
    square_zero_residual,
    stabilizer_element,
)
from app.twistor_core.sampling import random_algebra_element, random_group_element
from app.twistor_core.types import (
    AlgebraElement,
    GroupElement,
    HermitianForm,
    Intertwiner,
    OrbitLabel,
    TwistorVector,
)


__all__ = [
    "AlgebraElement",
    "GroupElement",
    "HermitianForm",
    "Intertwiner",
    "OrbitLabel",
    "TwistorVector",
    "ad_cayley",
    "ad_cayley_inverse",
    "adjoint",
    "algebra_residual",
    "cayley_intertwiner",
    "change_realization",
    "fractional_action",
    "group_residual",
    "is_algebra_element",
    "is_anti_hermitian",
    "is_group_element",
    "is_hermitian",
    "is_isotropic",
    "is_square_zero",
    "is_unitary",
    "isotropic_frame",
    "make_form",
    "null_invariant",
    "orbit_label",
    "random_algebra_element",
    "random_group_element",
    "rho_normal_form",
    "square_zero_residual",
    "stabilizer_element",
]

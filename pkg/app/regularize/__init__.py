from app.regularize.cayley import cayley, cayley_inverse, t_star_c
from app.regularize.classes import (
    canonical_representative,
    class_distance,
    invert_j_pm,
    invert_j_pm_tilde,
    rank_one_factor,
)
from app.regularize.ks import (
    c_reg,
    k_reg,
    ks_section,
    ks_section_rank_one,
    one_form_tilde0,
    one_form_tilde_pm,
    section_residual,
    submersion_r,
)
from app.regularize.pauli import (
    PauliVector,
    ks_inverse_n2,
    ks_transform_n2,
    pauli_compose,
    pauli_coordinates,
    pauli_decompose,
)


__all__ = [
    "PauliVector",
    "c_reg",
    "canonical_representative",
    "cayley",
    "cayley_inverse",
    "class_distance",
    "invert_j_pm",
    "invert_j_pm_tilde",
    "k_reg",
    "ks_inverse_n2",
    "ks_section",
    "ks_section_rank_one",
    "ks_transform_n2",
    "one_form_tilde0",
    "one_form_tilde_pm",
    "pauli_compose",
    "pauli_coordinates",
    "pauli_decompose",
    "rank_one_factor",
    "section_residual",
    "submersion_r",
    "t_star_c",
]

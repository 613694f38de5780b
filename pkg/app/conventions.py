"""Sign and factor conventions pinned by the verification suites.

Every constant here is asserted by a suite in app.verify; the JSON export
records ``conventions_hash()`` so that trajectory files can be matched to the
conventions they were produced under.
"""

import hashlib
import json
from typing import Dict, Union


# j_pm(v)^2 = QUADRATIC_CONSTANT * I+-(v) * j_pm(v)
QUADRATIC_CONSTANT = -1j

# L_X(J(v)) against the named invariants, for X in {i E, i phi_d} and C^+ X C.
PAIRING_CONSTANT = 1.0

# {L1 o J, L2 o J} = BRACKET_SIGN * L_[X1, X2] o J
BRACKET_SIGN = -1.0

# Ratio of the KS vector zeta^+ sigma zeta to the Pauli vector of X = zeta zeta^+.
KS_X_FACTOR = 2.0

# H0(y, x_KS) = H0_FACTOR * I~0 and I~++ o R = ENERGY_FACTOR * I~0.
H0_FACTOR = 1.0
ENERGY_FACTOR = 1.0

# Restricted one-form in Pauli coordinates: ONE_FORM_FACTOR * y . dx.
ONE_FORM_FACTOR = 2.0


CONVENTIONS: Dict[str, Union[str, float]] = {
    "form.diagonal": "phi_d = diag(E, -E)",
    "form.antidiagonal": "phi_a = i [[0, -E], [E, 0]]",
    "intertwiner": "C = [[E, -iE], [-iE, E]] / sqrt 2, C^+ phi_d C = phi_a, Ad_C X = C X C^+",
    "momentum.twistor": "J(w) = -i w w^+ phi",
    "momentum.quadratic_constant": "-i",
    "pairing.generators": "X++ = iE, X+- = i phi_d, anti-diagonal images C^+ X C (C^+ X+- C = i phi_a)",
    "pairing.constant": PAIRING_CONSTANT,
    "bracket.flat": "{f, g} = i sum phi_m (df/dw~_m dg/dw_m - dg/dw~_m df/dw_m)",
    "bracket.pullback_sign": BRACKET_SIGN,
    "hamiltonian.convention": "i_V omega = dH, f' = {H, f}",
    "riccati": "Y' = E + Y^2, X' = -(XY + YX)",
    "riccati.closed_form": "g(t) = [[cos t E, sin t E], [-sin t E, cos t E]]",
    "integrals": "M = i[X, Y], R = X + YXY, N+- = (R +- M)/2, N+ = xi xi^+, N- = eta eta^+",
    "pauli.basis": "right-handed, sigma_2 = [[0, -i], [i, 0]], a0 = Tr A / 2",
    "ks.x_factor": KS_X_FACTOR,
    "kepler.h0_factor": H0_FACTOR,
    "kepler.energy_factor": ENERGY_FACTOR,
    "kepler.one_form_factor": ONE_FORM_FACTOR,
    "kepler.r0": "R0 = |x| (1 + y^2) in Pauli coordinates, M0 = 0",
    "integrability": "sum_j (rho_rj k_j + rho_r,n+j l_j) = delta_r1",
    "reduction": "H_red = H0 + 2 W cos psi, psi' = dH0/dI + 2 dW/dI cos psi",
}


def conventions_hash() -> str:
    payload = json.dumps(CONVENTIONS, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()

"""Seeded random points of the cotangent spaces."""

import numpy as np

from app.momentum.types import CotangentHn, CotangentUn
from app.twistor_core.sampling import (
    complex_gaussian,
    random_anti_hermitian,
    random_hermitian,
    random_unitary,
)


def random_cotangent_un(n: int, rng: np.random.Generator) -> CotangentUn:
    return CotangentUn(Z=random_unitary(n, rng), rho=random_anti_hermitian(n, rng))


def random_cotangent_hn(n: int, rng: np.random.Generator) -> CotangentHn:
    return CotangentHn(Y=random_hermitian(n, rng), X=random_hermitian(n, rng))


def random_rank_one_point(n: int, rng: np.random.Generator) -> CotangentHn:
    """A point (Y, zeta zeta^+) with X positive semi-definite of rank one."""
    zeta = complex_gaussian(rng, n)
    return CotangentHn(Y=random_hermitian(n, rng), X=np.outer(zeta, zeta.conj()))

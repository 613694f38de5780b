"""Value types of the complex linear-algebra substrate.

Every array field is copied into a read-only complex ``numpy`` array on
construction, so instances can be shared between threads.
"""

from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.exceptions import DimensionError, MembershipError
from app.schema import Realization


def as_complex_array(value, ndim: int, name: str = "array") -> np.ndarray:
    """Copy ``value`` into a read-only complex array of the given rank."""
    arr = np.array(value, dtype=complex)
    if arr.ndim != ndim:
        raise DimensionError(f"{name} must have {ndim} dimension(s), got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise MembershipError(f"{name} has non-finite entries")
    arr.setflags(write=False)
    return arr


def as_square_matrix(value, name: str = "matrix") -> np.ndarray:
    arr = as_complex_array(value, 2, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {arr.shape}")
    return arr


class ArrayModel(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class HermitianForm(ArrayModel):
    """A hermitian form of signature (n, n) on C^2n."""

    n: int = Field(..., ge=1, description="Half-dimension")
    realization: Realization = Field(..., description="Diagonal or anti-diagonal block form")
    matrix: np.ndarray = Field(..., description="2n x 2n matrix of the form")

    @field_validator("matrix", mode="before")
    @classmethod
    def check_matrix(cls, value):
        return as_square_matrix(value, "form matrix")

    @model_validator(mode="after")
    def check_shape(self):
        if self.matrix.shape != (2 * self.n, 2 * self.n):
            raise DimensionError(
                f"form matrix must be {2 * self.n}x{2 * self.n}, got {self.matrix.shape}"
            )
        return self


class TwistorVector(ArrayModel):
    """A point of C^n + C^n: (eta, xi) when diagonal, (upsilon, zeta) when anti-diagonal."""

    realization: Realization = Field(..., description="Realization tag")
    upper: np.ndarray = Field(..., description="eta or upsilon")
    lower: np.ndarray = Field(..., description="xi or zeta")

    @field_validator("upper", "lower", mode="before")
    @classmethod
    def check_vector(cls, value):
        return as_complex_array(value, 1, "twistor component")

    @model_validator(mode="after")
    def check_lengths(self):
        if self.upper.shape != self.lower.shape or self.upper.size == 0:
            raise DimensionError(
                f"twistor components must have equal positive length, "
                f"got {self.upper.size} and {self.lower.size}"
            )
        return self

    @property
    def n(self) -> int:
        return self.upper.size

    @property
    def stacked(self) -> np.ndarray:
        """The 2n column (upper, lower)."""
        return np.concatenate([self.upper, self.lower])

    @classmethod
    def from_stacked(cls, w, realization: Realization) -> "TwistorVector":
        w = np.asarray(w, dtype=complex).ravel()
        if w.size % 2 or w.size == 0:
            raise DimensionError(f"stacked twistor must have even positive length, got {w.size}")
        n = w.size // 2
        return cls(realization=realization, upper=w[:n], lower=w[n:])

    def scaled(self, factor: complex) -> "TwistorVector":
        return TwistorVector(
            realization=self.realization,
            upper=factor * self.upper,
            lower=factor * self.lower,
        )


class AlgebraElement(ArrayModel):
    """An element of u(n,n) for the attached form."""

    form: HermitianForm
    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def check_matrix(cls, value):
        return as_square_matrix(value, "algebra element")

    @model_validator(mode="after")
    def check_shape(self):
        if self.matrix.shape != self.form.matrix.shape:
            raise DimensionError(
                f"algebra element shape {self.matrix.shape} does not fit form "
                f"{self.form.matrix.shape}"
            )
        return self

    def blocks(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        return split_blocks(self.matrix)


class GroupElement(ArrayModel):
    """An element of U(n,n) for the attached form."""

    form: HermitianForm
    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def check_matrix(cls, value):
        return as_square_matrix(value, "group element")

    @model_validator(mode="after")
    def check_shape(self):
        if self.matrix.shape != self.form.matrix.shape:
            raise DimensionError(
                f"group element shape {self.matrix.shape} does not fit form "
                f"{self.form.matrix.shape}"
            )
        return self

    def blocks(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Blocks (A, B, C, D) of the 2x2 block decomposition."""
        return split_blocks(self.matrix)

    def inverse(self) -> np.ndarray:
        """g^-1 = phi g^+ phi."""
        phi = self.form.matrix
        return phi @ self.matrix.conj().T @ phi


class Intertwiner(ArrayModel):
    """A unitary map carrying one form into another: matrix^+ target matrix = source."""

    source: HermitianForm
    target: HermitianForm
    matrix: np.ndarray

    @field_validator("matrix", mode="before")
    @classmethod
    def check_matrix(cls, value):
        return as_square_matrix(value, "intertwiner")


class OrbitLabel(BaseModel):
    """Signature pair (k, l) of a nilpotent orbit."""

    k: int = Field(..., ge=0)
    l: int = Field(..., ge=0)

    model_config = ConfigDict(frozen=True)

    def __str__(self) -> str:
        return f"({self.k},{self.l})"

    @property
    def rank(self) -> int:
        return self.k + self.l


def split_blocks(m: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Split a 2n x 2n matrix into its n x n blocks (top-left, top-right, bottom-left, bottom-right)."""
    m = np.asarray(m)
    size = m.shape[0]
    if m.ndim != 2 or m.shape[1] != size or size % 2:
        raise DimensionError(f"expected an even square matrix, got shape {m.shape}")
    n = size // 2
    return m[:n, :n], m[:n, n:], m[n:, :n], m[n:, n:]

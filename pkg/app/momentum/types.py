import numpy as np
from pydantic import field_validator, model_validator

from app.exceptions import DimensionError, MembershipError
from app.twistor_core.forms import anti_hermitian_residual, hermitian_residual, unitary_residual
from app.twistor_core.types import AlgebraElement, ArrayModel, as_square_matrix


class CotangentUn(ArrayModel):
    """A point (Z, rho) of T*U(n) = U(n) x iH(n); rho is stored anti-hermitian."""

    Z: np.ndarray
    rho: np.ndarray

    @field_validator("Z", "rho", mode="before")
    @classmethod
    def check_matrix(cls, value):
        return as_square_matrix(value, "cotangent component")

    @model_validator(mode="after")
    def check_shapes(self):
        if self.Z.shape != self.rho.shape:
            raise DimensionError(f"Z {self.Z.shape} and rho {self.rho.shape} differ in shape")
        return self

    @property
    def n(self) -> int:
        return self.Z.shape[0]

    def check(self, tol: float = 1e-8) -> "CotangentUn":
        """Raise MembershipError unless Z is unitary and rho anti-hermitian."""
        if unitary_residual(self.Z) > tol:
            raise MembershipError("Z is not unitary")
        if anti_hermitian_residual(self.rho) > tol:
            raise MembershipError("rho is not anti-hermitian")
        return self


class CotangentHn(ArrayModel):
    """A point (Y, X) of H(n) x H(n)."""

    Y: np.ndarray
    X: np.ndarray

    @field_validator("Y", "X", mode="before")
    @classmethod
    def check_matrix(cls, value):
        return as_square_matrix(value, "cotangent component")

    @model_validator(mode="after")
    def check_shapes(self):
        if self.Y.shape != self.X.shape:
            raise DimensionError(f"Y {self.Y.shape} and X {self.X.shape} differ in shape")
        return self

    @property
    def n(self) -> int:
        return self.Y.shape[0]

    def check(self, tol: float = 1e-8) -> "CotangentHn":
        """Raise MembershipError unless both components are hermitian."""
        if hermitian_residual(self.Y) > tol or hermitian_residual(self.X) > tol:
            raise MembershipError("Y and X must be hermitian")
        return self


class LinearFunctional(ArrayModel):
    """L_X(A) = Tr(X A) for a generator X in u(n,n)."""

    generator: AlgebraElement

class TwistorError(Exception):
    """Base exception for all twistor-kepler errors"""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class DimensionError(TwistorError):
    """Raised when array shapes do not fit the operation or n is not positive"""


class ConventionError(TwistorError):
    """Raised when a twistor vector or form has the wrong realization"""


class MembershipError(TwistorError):
    """Raised when an input misses a membership precondition (unitary, hermitian, null, ...)"""


class SingularActionError(TwistorError):
    """Raised when a fractional-linear action or Cayley map hits a singular denominator"""


class RankError(TwistorError):
    """Raised when a rank-one factorization precondition fails"""


class DomainError(TwistorError):
    """Raised when a point falls outside the chart or reduced domain"""


class IntegrationAbort(TwistorError):
    """Raised when a stepped integration produces a non-finite state"""

    def __init__(self, message: str, step: int, time: float):
        super().__init__(f"{message} (step={step}, t={time:.6g})")
        self.step = step
        self.time = time


class QuadratureError(TwistorError):
    """Raised when the energy quadrature cannot locate a libration"""


class ExpressionError(TwistorError):
    """Raised when an h0/g0 expression does not follow the grammar"""


class ConfigError(TwistorError):
    """Raised for malformed run configuration"""

import zlib
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from app.config import ToleranceSettings, VerifySettings


class SuiteContext(BaseModel):
    """Everything a suite may depend on; suites draw randomness only from ``rng``."""

    n: int = Field(..., ge=1)
    seed: int = 0
    samples: int = Field(100, ge=1)
    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings)
    settings: VerifySettings = Field(default_factory=VerifySettings)

    def rng(self, salt: str) -> np.random.Generator:
        """A generator keyed by (seed, salt), stable across processes."""
        return np.random.default_rng([self.seed, zlib.crc32(salt.encode("utf-8"))])


class SuiteResult(BaseModel):
    """Outcome of one verification suite."""

    name: str
    passed: bool = False
    residual: float = Field(default=float("nan"), description="Worst measured residual")
    tolerance: float = Field(default=float("nan"))
    samples: int = 0
    detail: Optional[str] = Field(default=None)
    error: Optional[str] = Field(default=None)

    def __bool__(self):
        return self.passed

    def __str__(self):
        verdict = "PASS" if self.passed else "FAIL"
        line = (
            f"{self.name:<18} {verdict}  residual={self.residual:.3e}  "
            f"tol={self.tolerance:.1e}  samples={self.samples}"
        )
        if self.error:
            line += f"  error: {self.error}"
        elif self.detail:
            line += f"  ({self.detail})"
        return line

    def replace(self, **kwargs):
        """Returns a new SuiteResult with the given fields replaced."""
        return type(self)(**{**self.model_dump(), **kwargs})


class SuiteFailure(SuiteResult):
    """A SuiteResult for a suite that raised instead of measuring."""


class BaseSuite(ABC, BaseModel):
    name: str
    description: str
    tolerance_key: str
    lower_bound: bool = Field(
        default=False, description="Pass when the residual reaches the tolerance instead"
    )

    model_config = ConfigDict(arbitrary_types_allowed=True)

    def __call__(self, context: SuiteContext) -> SuiteResult:
        return self.execute(context)

    @abstractmethod
    def execute(self, context: SuiteContext) -> SuiteResult:
        """Run the suite and report its worst residual."""

    def tolerance(self, context: SuiteContext) -> float:
        return getattr(context.tolerances, self.tolerance_key)

    def result(
        self, context: SuiteContext, residual: float, samples: int, detail: Optional[str] = None
    ) -> SuiteResult:
        tol = self.tolerance(context)
        passed = residual >= tol if self.lower_bound else residual <= tol
        return SuiteResult(
            name=self.name,
            passed=bool(passed),
            residual=float(residual),
            tolerance=tol,
            samples=samples,
            detail=detail,
        )

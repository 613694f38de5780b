from app.verify.base import BaseSuite, SuiteContext, SuiteFailure, SuiteResult
from app.verify.collection import SuiteCollection, default_suites


__all__ = [
    "BaseSuite",
    "SuiteCollection",
    "SuiteContext",
    "SuiteFailure",
    "SuiteResult",
    "default_suites",
]

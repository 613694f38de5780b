"""Collection classes for running verification suites."""
from typing import List, Optional, Sequence

from app.exceptions import TwistorError
from app.logger import logger
from app.verify.algebra import (
    EquivarianceSuite,
    FormsSuite,
    GroupMembershipSuite,
    LiePoissonSuite,
    MembershipSuite,
    NilpotencySuite,
    QuadraticSuite,
    RoundTripSuite,
)
from app.verify.base import BaseSuite, SuiteContext, SuiteFailure, SuiteResult
from app.verify.flows import ConservationSuite, FlowOdeSuite, PeriodicitySuite, Rk4Suite
from app.verify.integrable import (
    CanonicalSuite,
    NegativeControlSuite,
    QuadratureSuite,
    ReducedEnergySuite,
    TorusDriftSuite,
)
from app.verify.regularization import (
    FictitiousTimeSuite,
    KeplerSuite,
    MrVectorsSuite,
    PullbackSuite,
    RegularizationSuite,
    SectionSuite,
)


class SuiteCollection:
    """A collection of verification suites."""

    def __init__(self, *suites: BaseSuite):
        self.suites = suites
        self.suite_map = {suite.name: suite for suite in suites}

    def __iter__(self):
        return iter(self.suites)

    def __len__(self):
        return len(self.suites)

    def run(self, *, name: str, context: SuiteContext) -> SuiteResult:
        suite = self.suite_map.get(name)
        if not suite:
            return SuiteFailure(name=name, error=f"Suite {name} is invalid")
        return self._run_one(suite, context)

    def run_all(self, context: SuiteContext) -> List[SuiteResult]:
        """Run all suites in the collection sequentially."""
        return [self._run_one(suite, context) for suite in self.suites]

    @staticmethod
    def _run_one(suite: BaseSuite, context: SuiteContext) -> SuiteResult:
        logger.info(f"Running suite '{suite.name}' (n={context.n}, seed={context.seed})")
        try:
            result = suite(context)
        except TwistorError as e:
            logger.error(f"Suite '{suite.name}' raised: {e.message}")
            return SuiteFailure(name=suite.name, tolerance=suite.tolerance(context), error=e.message)
        log = logger.info if result.passed else logger.warning
        log(str(result))
        return result

    def get_suite(self, name: str) -> Optional[BaseSuite]:
        return self.suite_map.get(name)

    def add_suite(self, suite: BaseSuite):
        self.suites += (suite,)
        self.suite_map[suite.name] = suite
        return self

    def add_suites(self, *suites: BaseSuite):
        for suite in suites:
            self.add_suite(suite)
        return self

    def select(self, names: Sequence[str]) -> "SuiteCollection":
        """Sub-collection in the given order; unknown names are dropped with a warning."""
        chosen = []
        for name in names:
            if name in self.suite_map:
                chosen.append(self.suite_map[name])
            else:
                logger.warning(f"Unknown suite '{name}' ignored")
        return SuiteCollection(*chosen)


def default_suites() -> SuiteCollection:
    """Every suite, ordered from the linear algebra up to the reduced dynamics."""
    return SuiteCollection(
        FormsSuite(),
        GroupMembershipSuite(),
        MembershipSuite(),
        NilpotencySuite(),
        QuadraticSuite(),
        EquivarianceSuite(),
        RoundTripSuite(),
        LiePoissonSuite(),
        RegularizationSuite(),
        SectionSuite(),
        PullbackSuite(),
        FlowOdeSuite(),
        PeriodicitySuite(),
        Rk4Suite(),
        ConservationSuite(),
        KeplerSuite(),
        MrVectorsSuite(),
        FictitiousTimeSuite(),
        CanonicalSuite(),
        TorusDriftSuite(),
        NegativeControlSuite(),
        QuadratureSuite(),
        ReducedEnergySuite(),
    )

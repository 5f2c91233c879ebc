"""Invariant suite registry and runner."""
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple, TypeVar

from pydantic import BaseModel, ConfigDict

from lsvlab.core.domain import ExponentProfile
from lsvlab.errors import PreconditionError, UnknownSuiteError
from lsvlab.harness.calibration import CalibrationStore
from lsvlab.log import get_logger

logger = get_logger(__name__)

Scale = Literal["quick", "full"]
T = TypeVar("T")


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    value: Optional[float] = None


class SuiteReport(BaseModel):
    suite: str
    seed: int
    scale: Scale
    checks: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


class SuiteRun(BaseModel):
    reports: List[SuiteReport]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def failures(self) -> List[Tuple[str, CheckResult]]:
        return [(r.suite, c) for r in self.reports for c in r.checks if not c.passed]


class SuiteContext(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    seed: int
    scale: Scale
    store: CalibrationStore
    profile: ExponentProfile

    def pick(self, quick: T, full: T) -> T:
        return quick if self.scale == "quick" else full

    def calibrated(self, name: str, value: float) -> CheckResult:
        """Freeze `value` on first sight, then require it within slack; keyed per scale."""
        outcome = self.store.check_or_freeze(f"{name}[{self.scale}]", value)
        return CheckResult(
            name=f"calibration {name}",
            passed=outcome.passed,
            detail=f"{outcome.status}: value {value:.6g}, frozen {outcome.frozen:.6g}",
            value=value,
        )


SuiteRunner = Callable[[SuiteContext], List[CheckResult]]


class Suite(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    description: str
    runner: SuiteRunner


class SuiteRegistry:
    def __init__(self) -> None:
        self._suites: Dict[str, Suite] = {}

    def register(self, suite: Suite) -> None:
        self._suites[suite.name] = suite

    def get(self, name: str) -> Optional[Suite]:
        return self._suites.get(name)

    def list(self) -> List[Suite]:
        return list(self._suites.values())

    def exists(self, name: str) -> bool:
        return name in self._suites


def run_invariant_suite(
    registry: SuiteRegistry,
    name: str,
    seed: int = 0,
    scale: Scale = "quick",
    store: Optional[CalibrationStore] = None,
    profile: Optional[ExponentProfile] = None,
) -> SuiteReport:
    suite = registry.get(name)
    if suite is None:
        known = ", ".join(s.name for s in registry.list())
        raise UnknownSuiteError(f"unknown suite '{name}' (known: {known})")
    ctx = SuiteContext(
        seed=seed,
        scale=scale,
        store=store or CalibrationStore(),
        profile=profile or ExponentProfile.desk(),
    )
    logger.info("running suite %s (seed=%d, scale=%s)", name, seed, scale)
    report = SuiteReport(suite=name, seed=seed, scale=scale, checks=suite.runner(ctx))
    for check in report.checks:
        if not check.passed:
            logger.warning("%s: %s failed (%s)", name, check.name, check.detail)
    return report


def run_invariant_suites(
    registry: SuiteRegistry,
    names: Sequence[str],
    seed: int = 0,
    scale: Scale = "quick",
    store: Optional[CalibrationStore] = None,
    profile: Optional[ExponentProfile] = None,
) -> SuiteRun:
    if not names:
        raise PreconditionError("empty suite list")
    for name in names:
        if not registry.exists(name):
            raise UnknownSuiteError(f"unknown suite '{name}'")
    return SuiteRun(reports=[run_invariant_suite(registry, n, seed, scale, store, profile) for n in names])

"""Tail experiments, frozen calibrations and the invariant suites."""

from lsvlab.harness.builtin import get_builtin_suites
from lsvlab.harness.calibration import CalibrationOutcome, CalibrationStore
from lsvlab.harness.experiments import (
    Ensemble,
    ExperimentConfig,
    TailCalibration,
    TailCell,
    TailCurve,
    calibrate_tail_constant,
    exact_singularity_frequency,
    run_tail_experiment,
    union_bound_report,
)
from lsvlab.harness.suites import (
    CheckResult,
    Suite,
    SuiteRegistry,
    SuiteReport,
    SuiteRun,
    run_invariant_suite,
    run_invariant_suites,
)

# Global registry instance
registry = SuiteRegistry()

# Register built-in suites on import
for suite in get_builtin_suites():
    registry.register(suite)

__all__ = [
    "CalibrationOutcome",
    "CalibrationStore",
    "CheckResult",
    "Ensemble",
    "ExperimentConfig",
    "Suite",
    "SuiteRegistry",
    "SuiteReport",
    "SuiteRun",
    "TailCalibration",
    "TailCell",
    "TailCurve",
    "calibrate_tail_constant",
    "exact_singularity_frequency",
    "registry",
    "run_invariant_suite",
    "run_invariant_suites",
    "run_tail_experiment",
    "union_bound_report",
]

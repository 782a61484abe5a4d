"""Abstract base class for all verification suites."""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod

import anyio

from reflexive_mldeg.lattice import Polytope
from reflexive_mldeg.likelihood import ml_degree
from reflexive_mldeg.score import Scaling, design_matrix
from reflexive_mldeg.types import MLReport, SuiteResult, SuiteRow, TrackerConfig, VerifyConfig

log = logging.getLogger("reflexive_mldeg")


def row(label: str, expected: object, observed: object) -> SuiteRow:
    """A PASS/FAIL line; it passes when both sides render to the same text."""
    return SuiteRow(
        label=label,
        expected=str(expected),
        observed=str(observed),
        passed=str(expected) == str(observed),
    )


def pair(report: MLReport) -> str:
    """``mldeg/deg`` in the notation of the published tables."""
    return f"{report['ml_degree']}/{report['degree']}"


class BaseSuite(ABC):
    """All suites must inherit from this class and implement `check`."""

    #: Registry key used in CLI ``--suite`` (e.g. ``"polygons"``)
    suite_key: str = ""
    #: Human-readable name shown in reports
    name: str = ""
    #: Short description of what this suite reproduces
    description: str = ""

    def __init__(self, config: VerifyConfig) -> None:
        self.config = config

    @property
    def tracker(self) -> TrackerConfig:
        return self.config["tracker"]

    @property
    def extended(self) -> bool:
        return self.config["extended"]

    @abstractmethod
    def check(self) -> list[SuiteRow]:
        """Compute every row of the suite. Runs in a worker thread."""
        ...

    async def run(self, limiter: anyio.CapacityLimiter | None = None) -> SuiteResult:
        rows = await anyio.to_thread.run_sync(self.check, limiter=limiter)
        passed = sum(1 for r in rows if r["passed"])
        return SuiteResult(
            suite=self.suite_key,
            name=self.name,
            rows=rows,
            passed=passed,
            failed=len(rows) - passed,
            error=None,
        )

    def ml(self, polytope: Polytope, scaling: Scaling | None = None) -> MLReport:
        log.info("suite %s: %s", self.suite_key, polytope.name)
        return ml_degree(design_matrix(polytope), scaling, self.tracker)

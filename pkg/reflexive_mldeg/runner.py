"""Async verification runner; runs the selected suites concurrently."""

from __future__ import annotations

import asyncio
from datetime import datetime, timezone

import anyio

from reflexive_mldeg.exceptions import ConfigError, MLDegreeError, SuiteError
from reflexive_mldeg.suites import ALL_SUITES, BaseSuite
from reflexive_mldeg.types import SuiteResult, SuiteRow, VerifyConfig, VerifyReport, VerifySummary


async def run_verify(config: VerifyConfig) -> VerifyReport:
    """Execute all requested suites and return a full :class:`VerifyReport`.

    Args:
        config: Validated verification configuration from the CLI.

    Returns:
        A :class:`VerifyReport` with per-suite rows and a row-level summary.
    """
    suite_names = config["suites"] if config["suites"] else list(ALL_SUITES.keys())

    unknown = [s for s in suite_names if s not in ALL_SUITES]
    if unknown:
        raise ConfigError(
            f"Unknown suite(s): {', '.join(unknown)}. Available: {', '.join(ALL_SUITES)}"
        )

    suites: list[BaseSuite] = [ALL_SUITES[name](config) for name in suite_names]
    limiter = anyio.CapacityLimiter(config.get("concurrency") or 2)

    gathered = await asyncio.gather(
        *[_run_suite(suite, limiter) for suite in suites],
        return_exceptions=True,
    )

    results: dict[str, SuiteResult] = {}
    for suite, outcome in zip(suites, gathered):
        if isinstance(outcome, SuiteError):
            results[suite.suite_key] = _failed(suite, f"Suite execution error: {outcome.reason}")
        elif isinstance(outcome, MLDegreeError):
            results[suite.suite_key] = _failed(suite, str(outcome))
        elif isinstance(outcome, BaseException):
            results[suite.suite_key] = _failed(suite, f"Unexpected error: {outcome}")
        else:
            results[suite.suite_key] = outcome

    passed = sum(r["passed"] for r in results.values())
    failed = sum(r["failed"] for r in results.values())
    return VerifyReport(
        timestamp=datetime.now(tz=timezone.utc).isoformat(),
        results=results,
        summary=VerifySummary(total=passed + failed, passed=passed, failed=failed),
    )


def _failed(suite: BaseSuite, reason: str) -> SuiteResult:
    return SuiteResult(
        suite=suite.suite_key,
        name=suite.name,
        rows=[SuiteRow(label="suite error", expected="completed", observed=reason, passed=False)],
        passed=0,
        failed=1,
        error=reason,
    )


async def _run_suite(suite: BaseSuite, limiter: anyio.CapacityLimiter) -> SuiteResult:
    """Run a single suite, converting unexpected exceptions to :class:`SuiteError`."""
    try:
        return await suite.run(limiter)
    except MLDegreeError:
        raise
    except Exception as exc:
        raise SuiteError(suite.name, str(exc)) from exc

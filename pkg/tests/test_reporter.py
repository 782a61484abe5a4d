"""Tests for the Rich terminal reporter and JSON export."""

from __future__ import annotations

import io
import json

import pytest

from reflexive_mldeg.reporter import (
    render_catalog,
    render_drop,
    render_error,
    render_info,
    render_json,
    render_ml_report,
    render_report,
)
from reflexive_mldeg.types import (
    CatalogRecord,
    DropVerdict,
    MLReport,
    PolytopeInfo,
    SuiteResult,
    SuiteRow,
    VerifyReport,
    VerifySummary,
)


def _make_report(*, passed: bool = True) -> VerifyReport:
    """Build a minimal one-row VerifyReport."""
    observed = "3/5" if passed else "4/5"
    result = SuiteResult(
        suite="polygons",
        name="Reflexive polygons",
        rows=[SuiteRow(label="P5a", expected="3/5", observed=observed, passed=passed)],
        passed=1 if passed else 0,
        failed=0 if passed else 1,
        error=None,
    )
    return VerifyReport(
        timestamp="2026-10-19T00:00:00+00:00",
        results={"polygons": result},
        summary=VerifySummary(total=1, passed=1 if passed else 0, failed=0 if passed else 1),
    )


def _make_ml_report(*, consistent: bool = True) -> MLReport:
    return MLReport(
        degree=8,
        ml_degree=4,
        drop=4,
        per_seed_counts=[4, 4, 4] if consistent else [4, 3, 4],
        positive_counts=[1, 1, 1],
        failed_paths=[0, 0, 0],
        seeds=[0, 1, 2],
        bezout=9,
        consistent=consistent,
        drop_witness="dim 2 face on vertices [0, 1, 2, 3]",
    )


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def test_render_json_round_trips_report() -> None:
    buf = io.StringIO()
    render_json(_make_report(), output=buf)
    data = json.loads(buf.getvalue())
    assert data["summary"]["passed"] == 1
    assert data["results"]["polygons"]["rows"][0]["observed"] == "3/5"


def test_render_json_defaults_to_stdout(capsys: pytest.CaptureFixture[str]) -> None:
    render_json({"ml_degree": 3})
    assert json.loads(capsys.readouterr().out) == {"ml_degree": 3}


# ---------------------------------------------------------------------------
# Rich output
# ---------------------------------------------------------------------------


def test_render_report_pass() -> None:
    buf = io.StringIO()
    render_report(_make_report(passed=True), output=buf)
    text = buf.getvalue()
    assert "Reflexive polygons" in text
    assert "PASS" in text
    assert "FAIL" not in text


def test_render_report_fail() -> None:
    buf = io.StringIO()
    render_report(_make_report(passed=False), output=buf)
    text = buf.getvalue()
    assert "FAIL" in text
    assert "4/5" in text


def test_render_info() -> None:
    info = PolytopeInfo(
        name="P5a",
        dim=2,
        vertices=[[0, -1], [0, 1], [1, 0], [-1, 1], [-1, 0]],
        n_lattice_points=6,
        f_vector=[5, 5],
        reflexive=True,
        degree=5,
        lattice_index=1,
    )
    buf = io.StringIO()
    render_info(info, output=buf)
    text = buf.getvalue()
    assert "P5a" in text
    assert "5 5" in text
    assert "yes" in text


def test_render_ml_report_flags_inconsistency() -> None:
    buf = io.StringIO()
    render_ml_report("P8a", _make_ml_report(consistent=False), output=buf)
    text = buf.getvalue()
    assert "INCONSISTENT" in text
    assert "4, 3, 4" in text


def test_render_ml_report_shows_witness() -> None:
    buf = io.StringIO()
    render_ml_report("P8a", _make_ml_report(), output=buf)
    assert "CONSISTENT" in buf.getvalue()
    assert "Drop witness" in buf.getvalue()


def test_render_drop() -> None:
    verdicts = [
        DropVerdict(name="B^0(P6d)", construction="B", vanishes=False, witness=None,
                    ml_degree=6, degree=6),
        DropVerdict(name="B^1(P6d)", construction="B", vanishes=True, witness="dim 2 face",
                    ml_degree=11, degree=12),
    ]
    buf = io.StringIO()
    render_drop(verdicts, output=buf)
    text = buf.getvalue()
    assert "B^1(P6d)" in text
    assert "11" in text


def test_render_catalog() -> None:
    record = CatalogRecord(
        id="ks:0",
        dim=3,
        n_lattice_points=5,
        f_vector=[4, 6, 4],
        degree=4,
        ml_degree=4,
        drop=0,
        reflexive=True,
        seeds=3,
        consistent=True,
        runtime_ms=0,
    )
    buf = io.StringIO()
    render_catalog([record], output=buf)
    assert "ks:0" in buf.getvalue()


def test_render_error(capsys: pytest.CaptureFixture[str]) -> None:
    render_error("Something went wrong")
    assert "Something went wrong" in capsys.readouterr().err

"""Shared pytest fixtures for reflexive-mldeg tests."""

from __future__ import annotations

import pathlib

import pytest

from reflexive_mldeg.builders import reflexive_polygon
from reflexive_mldeg.lattice import Polytope
from reflexive_mldeg.solver import default_tracker_config
from reflexive_mldeg.types import CatalogConfig, TrackerConfig, VerifyConfig


def make_tracker_config(**overrides: object) -> TrackerConfig:
    """Return the default :class:`TrackerConfig` with optional overrides."""
    return default_tracker_config(**overrides)


def make_verify_config(**overrides: object) -> VerifyConfig:
    """Return a minimal :class:`VerifyConfig` with optional overrides."""
    base: VerifyConfig = VerifyConfig(
        suites=[],
        concurrency=2,
        extended=False,
        output_format="rich",
        output_file=None,
        tracker=make_tracker_config(),
    )
    base.update(overrides)  # type: ignore[typeddict-item]
    return base


def make_catalog_config(
    input_path: pathlib.Path, output_path: pathlib.Path, **overrides: object
) -> CatalogConfig:
    """Return a :class:`CatalogConfig` without timings so outputs are reproducible."""
    base: CatalogConfig = CatalogConfig(
        input_path=str(input_path),
        output_path=str(output_path),
        output_format="rich",
        limit=None,
        concurrency=1,
        transpose=None,
        timings=False,
        tracker=make_tracker_config(),
    )
    base.update(overrides)  # type: ignore[typeddict-item]
    return base


def ks_block(polytope: Polytope) -> str:
    """A 'd n' block with one vertex per column."""
    d = polytope.dim
    lines = [f"{d} {len(polytope.vertices)}"]
    lines += [" ".join(str(v[k]) for v in polytope.vertices) for k in range(d)]
    return "\n".join(lines) + "\n"


@pytest.fixture
def p5a() -> Polytope:
    return reflexive_polygon("P5a")


@pytest.fixture
def polygon_file(tmp_path: pathlib.Path) -> pathlib.Path:
    """A vertex file with P3, P4a and P5a, in that order."""
    path = tmp_path / "polygons.txt"
    path.write_text(
        "# three reflexive polygons\n"
        + "".join(ks_block(reflexive_polygon(n)) for n in ("P3", "P4a", "P5a")),
        encoding="utf-8",
    )
    return path

"""Shared TypedDict definitions for reflexive-mldeg."""

from __future__ import annotations

from typing import Final, Literal, TypedDict

Vector = tuple[int, ...]

SolutionStatus = Literal["nonsingular-torus", "off-torus", "at-infinity", "singular", "failed"]
Construction = Literal["A", "B", "C"]
OutputFormat = Literal["rich", "json", "csv"]


class TrackerConfig(TypedDict):
    """Step control and tolerances for homotopy path tracking."""

    initial_step: float
    min_step: float
    max_step: float
    newton_tol: float
    max_newton_iters: int
    corrector_iters: int
    corrector_tol: float
    dedup_tol: float
    torus_tol: float
    infinity_threshold: float
    singular_svd_tol: float
    witness_tol: float
    endgame_t: float
    path_cap: int
    seeds: int
    seed: int


class TrackedSolution(TypedDict):
    """Endpoint of one homotopy path after Newton refinement."""

    point: list[complex]
    residual: float
    min_singular_value: float
    status: SolutionStatus


class MLReport(TypedDict):
    """Result of an ML degree computation over several random data vectors."""

    degree: int
    ml_degree: int
    drop: int
    per_seed_counts: list[int]
    positive_counts: list[int]
    failed_paths: list[int]
    seeds: list[int]
    bezout: int
    consistent: bool
    drop_witness: str | None


class PolytopeInfo(TypedDict):
    """Summary printed by the ``info`` command."""

    name: str
    dim: int
    vertices: list[list[int]]
    n_lattice_points: int
    f_vector: list[int]
    reflexive: bool
    degree: int
    lattice_index: int


class DropVerdict(TypedDict):
    """Outcome of the principal A-determinant face check."""

    name: str
    construction: str
    vanishes: bool
    witness: str | None
    ml_degree: int | None
    degree: int


class CatalogRecord(TypedDict):
    """One JSON-lines row of a catalog run; field order is the output order."""

    id: str
    dim: int
    n_lattice_points: int
    f_vector: list[int]
    degree: int
    ml_degree: int
    drop: int
    reflexive: bool
    seeds: int
    consistent: bool
    runtime_ms: int


class CatalogConfig(TypedDict):
    """Runtime configuration of a catalog run."""

    input_path: str
    output_path: str
    output_format: OutputFormat
    limit: int | None
    concurrency: int
    transpose: bool | None
    timings: bool
    tracker: TrackerConfig


class SuiteRow(TypedDict):
    """One PASS/FAIL line of a verification suite."""

    label: str
    expected: str
    observed: str
    passed: bool


class SuiteResult(TypedDict):
    """Standard result returned by every verification suite."""

    suite: str
    name: str
    rows: list[SuiteRow]
    passed: int
    failed: int
    error: str | None


class VerifyConfig(TypedDict):
    """Runtime configuration passed from the CLI to the suite runner."""

    suites: list[str]
    concurrency: int
    extended: bool
    output_format: OutputFormat
    output_file: str | None
    tracker: TrackerConfig


class VerifySummary(TypedDict):
    """Summary section of a verification report."""

    total: int
    passed: int
    failed: int


class VerifyReport(TypedDict):
    """Full verification report produced by the runner."""

    timestamp: str
    results: dict[str, SuiteResult]
    summary: VerifySummary


POLYGON_NAMES: Final[tuple[str, ...]] = (
    "P3", "P4a", "P4b", "P4c", "P5a", "P5b", "P6a", "P6b",
    "P6c", "P6d", "P7a", "P7b", "P8a", "P8b", "P8c", "P9",
)

SUITE_GROUPS: Final[dict[str, list[str]]] = {
    "tables": ["polygons", "constructions", "b-iteration"],
    "families": ["cube", "cross", "simplices", "graphs"],
    "scalings": ["ml-one", "scaled-drops", "discriminants"],
    "all": [
        "polygons",
        "cube",
        "cross",
        "ml-one",
        "scaled-drops",
        "simplices",
        "constructions",
        "b-iteration",
        "discriminants",
        "graphs",
        "properties",
    ],
}

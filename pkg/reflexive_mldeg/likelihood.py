"""ML degree estimation over random data, and the closed-form degree and drop formulas."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from reflexive_mldeg.discriminant import principal_A_determinant_vanishes
from reflexive_mldeg.exceptions import DimensionOutOfRangeError
from reflexive_mldeg.score import (
    DataVector,
    DesignMatrix,
    Scaling,
    complete_solution,
    scaled_polynomial,
    score_system,
    solution_to_distribution,
    theta_system,
)
from reflexive_mldeg.solver import (
    deduplicate,
    default_tracker_config,
    newton_refine,
    solve_total_degree,
)
from reflexive_mldeg.types import MLReport, TrackedSolution, TrackerConfig

log = logging.getLogger("reflexive_mldeg")

#: Share of failed paths above which a run is reported as inconsistent.
MAX_FAILURE_RATE = 0.01


@dataclass
class CriticalPoints:
    """Torus solutions (s, θ) of the score equations for one data vector."""

    data: DataVector
    solutions: list[TrackedSolution]
    positive: int
    paths: int
    failed_paths: int


def critical_points(
    design: DesignMatrix,
    scaling: Scaling,
    data: DataVector,
    cfg: TrackerConfig,
    *,
    seed: int | None = None,
    force: bool = False,
) -> CriticalPoints:
    """Solve the score equations at *data*.

    The θ-system is solved first; its torus solutions with f_c(θ) != 0 are lifted
    by s = 1 / f_c(θ) and polished on the full (s, θ) system.
    """
    reduced = theta_system(design, scaling, data)
    full = score_system(design, scaling, data)
    solved = solve_total_degree(reduced, cfg, seed=seed, force=force)

    lifted: list[TrackedSolution] = []
    for sol in solved.with_status("nonsingular-torus"):
        theta = np.asarray(sol["point"])
        f = scaled_polynomial(design, scaling, theta)
        if abs(f) <= cfg["torus_tol"]:
            continue
        refined = newton_refine(full, complete_solution(design, scaling, theta), cfg)
        if refined["status"] == "nonsingular-torus":
            lifted.append(refined)
    lifted = deduplicate(lifted, cfg["dedup_tol"])
    positive = sum(
        solution_to_distribution(design, scaling, np.asarray(sol["point"]))[1] for sol in lifted
    )
    return CriticalPoints(
        data=data,
        solutions=lifted,
        positive=positive,
        paths=solved.paths,
        failed_paths=solved.failed_paths,
    )


def _modal(counts: list[int]) -> int:
    # ties go to the larger count; lost paths undercount, they never overcount
    tally = Counter(counts)
    top = max(tally.values())
    return max(c for c, k in tally.items() if k == top)


def ml_degree(
    design: DesignMatrix,
    scaling: Scaling | None = None,
    cfg: TrackerConfig | None = None,
    *,
    data: DataVector | None = None,
    find_witness: bool = False,
    force: bool = False,
) -> MLReport:
    """Count nonsingular torus critical points for ``cfg["seeds"]`` random data vectors.

    With fixed *data* every seed reuses it and only the homotopy changes.
    """
    cfg = cfg or default_tracker_config()
    scaling = scaling or Scaling.standard(design.n)
    degree = design.polytope.normalized_volume

    seeds = [cfg["seed"] + i for i in range(cfg["seeds"])]
    counts: list[int] = []
    positives: list[int] = []
    failures: list[int] = []
    bezout = 0
    consistent = True
    for seed in seeds:
        sample = data or DataVector.random(design.n, np.random.default_rng(seed))
        found = critical_points(design, scaling, sample, cfg, seed=seed, force=force)
        bezout = found.paths
        counts.append(len(found.solutions))
        positives.append(found.positive)
        failures.append(found.failed_paths)
        if found.failed_paths > MAX_FAILURE_RATE * found.paths:
            consistent = False
        log.info(
            "seed %d: %d critical points (%d positive), %d of %d paths failed",
            seed, len(found.solutions), found.positive, found.failed_paths, found.paths,
        )
    consistent = consistent and len(set(counts)) == 1
    mldeg = _modal(counts)
    if mldeg > degree:
        log.warning("ML degree estimate %d exceeds the degree %d", mldeg, degree)
        consistent = False
    if not consistent:
        log.warning("inconsistent solution counts %s for %s", counts, design.polytope.name)

    witness = None
    if find_witness and mldeg < degree:
        _, face = principal_A_determinant_vanishes(design, scaling, cfg)
        witness = face.label if face is not None else None

    return MLReport(
        degree=degree,
        ml_degree=mldeg,
        drop=degree - mldeg,
        per_seed_counts=counts,
        positive_counts=positives,
        failed_paths=failures,
        seeds=seeds,
        bezout=bezout,
        consistent=consistent,
        drop_witness=witness,
    )


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def cube_degree(d: int) -> int:
    return math.factorial(d) * 2**d


def cube_ml_degree(d: int) -> int:
    return 2**d


def predicted_ml_degree_A(mldeg: int, k: int) -> int:
    """Construction A doubles the ML degree."""
    return 2**k * mldeg


def _comb(n: int, r: int) -> int:
    return math.comb(n, r) if r >= 0 else 0


def b_iteration_drop(name: str, k: int) -> int:
    """ML degree drop of B^k of a reflexive polygon at the standard scaling.

    k = 0 gives the drop of the polygon itself.
    """
    if k < 0:
        raise DimensionOutOfRangeError("b_iteration_drop", k, 0, 64)
    if k % 2 == 0:
        even = {
            "P3": _comb(k, (k - 2) // 2),
            "P5a": 2 * _comb(k, k // 2),
            "P8a": 4 * _comb(k, k // 2),
        }
        return even.get(name, 0)
    odd = {
        "P6a": 2 * _comb(k, (k - 1) // 2),
        "P6d": _comb(k, (k - 1) // 2),
        "P9": _comb(k, (k - 5) // 2),
    }
    return odd.get(name, 0)

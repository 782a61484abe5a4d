"""Tests for ML degree estimation and the closed-form degree formulas."""

from __future__ import annotations

import numpy as np
import pytest

from reflexive_mldeg.builders import POLYGON_POINTS, cube, iterate, reflexive_polygon
from reflexive_mldeg.exceptions import DimensionOutOfRangeError
from reflexive_mldeg.lattice import Polytope
from reflexive_mldeg.likelihood import (
    b_iteration_drop,
    critical_points,
    cube_degree,
    cube_ml_degree,
    ml_degree,
    predicted_ml_degree_A,
)
from reflexive_mldeg.score import DataVector, Scaling, birch_residual, design_matrix
from tests.conftest import make_tracker_config

# ---------------------------------------------------------------------------
# Solver-backed ML degrees
# ---------------------------------------------------------------------------


def test_segment_ml_degree() -> None:
    report = ml_degree(design_matrix(cube(1)), cfg=make_tracker_config())
    assert report["degree"] == 2
    assert report["ml_degree"] == 2
    assert report["drop"] == 0
    assert report["consistent"]
    assert report["seeds"] == [0, 1, 2]


def test_p5a_drops_by_two(p5a: Polytope) -> None:
    report = ml_degree(design_matrix(p5a), cfg=make_tracker_config())
    assert (report["ml_degree"], report["degree"]) == (3, 5)
    assert report["per_seed_counts"] == [3, 3, 3]
    assert report["drop_witness"] is None


def test_p8a_drop_has_witness() -> None:
    design = design_matrix(reflexive_polygon("P8a"))
    report = ml_degree(design, cfg=make_tracker_config(seeds=1), find_witness=True)
    assert (report["ml_degree"], report["degree"]) == (4, 8)
    assert report["drop_witness"] is not None
    assert report["drop_witness"].startswith("dim 2 face")


def test_fixed_data_reused_for_every_seed(p5a: Polytope) -> None:
    design = design_matrix(p5a)
    data = DataVector((3, 1, 4, 1, 5, 9))
    report = ml_degree(design, cfg=make_tracker_config(seeds=2), data=data)
    assert report["per_seed_counts"] == [3, 3]


def test_exactly_one_positive_critical_point(p5a: Polytope) -> None:
    design = design_matrix(p5a)
    scaling = Scaling.standard(design.n)
    data = DataVector((3, 1, 4, 1, 5, 9))
    found = critical_points(design, scaling, data, make_tracker_config())
    assert found.positive == 1
    for sol in found.solutions:
        residual, mass_defect = birch_residual(design, scaling, np.asarray(sol["point"]), data)
        assert residual <= 1e-8
        assert mass_defect <= 1e-8


def test_same_seeds_same_report(p5a: Polytope) -> None:
    design = design_matrix(p5a)
    cfg = make_tracker_config(seeds=2, seed=5)
    assert ml_degree(design, cfg=cfg) == ml_degree(design, cfg=cfg)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


def test_cube_formulas() -> None:
    assert [cube_degree(d) for d in (1, 2, 3)] == [2, 8, 48]
    assert [cube_ml_degree(d) for d in (1, 2, 3)] == [2, 4, 8]


def test_construction_A_doubles_ml_degree() -> None:
    assert predicted_ml_degree_A(3, 1) == 6
    assert predicted_ml_degree_A(4, 2) == 16


@pytest.mark.parametrize(
    ("name", "k", "drop"),
    [
        ("P3", 0, 0),
        ("P3", 2, 1),
        ("P5a", 0, 2),
        ("P5a", 2, 4),
        ("P8a", 0, 4),
        ("P8a", 2, 8),
        ("P6a", 1, 2),
        ("P6d", 1, 1),
        ("P9", 1, 0),
        ("P9", 5, 1),
        ("P4a", 2, 0),
        ("P5a", 1, 0),
    ],
)
def test_b_iteration_drop(name: str, k: int, drop: int) -> None:
    assert b_iteration_drop(name, k) == drop


def test_b_iteration_drop_rejects_negative_k() -> None:
    with pytest.raises(DimensionOutOfRangeError):
        b_iteration_drop("P3", -1)


_NONZERO_DROPS = {
    ("P5a", 0): 2,
    ("P8a", 0): 4,
    ("P6a", 1): 2,
    ("P6d", 1): 1,
    ("P3", 2): 1,
    ("P5a", 2): 4,
    ("P8a", 2): 8,
}


@pytest.mark.parametrize("name", list(POLYGON_POINTS))
@pytest.mark.parametrize("k", [0, 1, 2])
def test_b_iteration_drop_table(name: str, k: int) -> None:
    assert b_iteration_drop(name, k) == _NONZERO_DROPS.get((name, k), 0)


@pytest.mark.slow
@pytest.mark.parametrize("name", list(POLYGON_POINTS))
@pytest.mark.parametrize("k", [0, 1, 2])
def test_b_iteration_drop_matches_solver(name: str, k: int) -> None:
    polytope = iterate("B", k, reflexive_polygon(name))
    report = ml_degree(design_matrix(polytope), cfg=make_tracker_config(seeds=1))
    assert report["degree"] - report["ml_degree"] == b_iteration_drop(name, k)

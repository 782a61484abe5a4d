"""Tests for exact lattice polytope geometry."""

from __future__ import annotations

import numpy as np
import pytest
from sympy import Matrix

from reflexive_mldeg.builders import (
    POLYGON_POINTS,
    cross,
    cube,
    reflexive_polygon,
    resolve_builtin,
)
from reflexive_mldeg.exceptions import (
    DimensionMismatchError,
    NotFullDimensionalError,
    NotReflexiveError,
)
from reflexive_mldeg.lattice import (
    Polytope,
    affine_face_coordinates,
    dual,
    f_vector,
    is_reflexive,
    lattice_index,
    lattice_points,
    normalized_volume,
    translate_nonnegative,
)

# ---------------------------------------------------------------------------
# Hull and counts
# ---------------------------------------------------------------------------


def test_cube_3_counts() -> None:
    c3 = cube(3)
    assert len(c3.vertices) == 8
    assert len(lattice_points(c3)) == 27
    assert f_vector(c3) == [8, 12, 6]
    assert normalized_volume(c3) == 48


def test_interior_points_are_not_vertices() -> None:
    square = Polytope([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)])
    assert square.vertices == ((0, 0), (0, 2), (2, 0), (2, 2))
    assert len(square.lattice_points) == 9
    assert square.normalized_volume == 8


def test_p5a_counts(p5a: Polytope) -> None:
    assert len(p5a.lattice_points) == 6
    assert f_vector(p5a) == [5, 5]
    assert p5a.normalized_volume == 5


def test_standard_simplex_volume_is_one() -> None:
    simplex = Polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert simplex.normalized_volume == 1
    assert f_vector(simplex) == [4, 6, 4]


def test_faces_sorted_by_dimension() -> None:
    dims = [face.dim for face in cube(2).faces]
    assert dims == sorted(dims)
    assert dims.count(0) == 4
    assert dims.count(1) == 4
    assert dims[-1] == 2


def test_lower_dimensional_points_rejected() -> None:
    with pytest.raises(NotFullDimensionalError):
        Polytope([(0, 0), (1, 1), (2, 2)])


def test_mixed_dimensions_rejected() -> None:
    with pytest.raises(DimensionMismatchError):
        Polytope([(0, 0), (1, 0, 0)])


# ---------------------------------------------------------------------------
# Reflexivity and duality
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["P3", "P4a", "P6d", "P9"])
def test_polygons_are_reflexive(name: str) -> None:
    assert is_reflexive(reflexive_polygon(name))


def test_unit_simplex_is_not_reflexive() -> None:
    simplex = Polytope([(0, 0), (1, 0), (0, 1)], name="unit")
    assert not is_reflexive(simplex)
    with pytest.raises(NotReflexiveError):
        dual(simplex)


def test_dual_of_cross_is_cube() -> None:
    assert dual(cross(3)).vertices == cube(3).vertices


def test_dual_of_p3_has_nine_boundary_points() -> None:
    d = dual(reflexive_polygon("P3"))
    assert d.normalized_volume == 9
    assert len(d.lattice_points) == 10


# ---------------------------------------------------------------------------
# Lattice helpers
# ---------------------------------------------------------------------------


def test_translate_nonnegative() -> None:
    moved, shift = translate_nonnegative(cube(2))
    assert shift == (1, 1)
    assert min(min(v) for v in moved.vertices) == 0


def test_lattice_index() -> None:
    assert lattice_index([(0, 0), (1, 0), (0, 1)]) == 1
    assert lattice_index([(0, 0), (2, 0), (0, 2)]) == 4
    assert lattice_index([(0, 0), (1, 1)]) == 0


def test_affine_face_coordinates_of_an_edge() -> None:
    edge = next(f for f in cube(2).faces if f.dim == 1)
    coords = affine_face_coordinates(edge)
    assert coords.shape == (1, 3)
    assert coords[0, 0] == 0
    assert sorted(abs(int(x)) for x in coords) == [0, 1, 2]


# ---------------------------------------------------------------------------
# Invariants across builtins
# ---------------------------------------------------------------------------

REFLEXIVE_BUILTINS = [
    *POLYGON_POINTS,
    "cube-2", "cube-3", "cross-3", "cross-4",
    "Q-2", "Q-3", "R-2", "R-3", "S-2", "S-3", "T-3",
    "KS0", "KS132", "KS418", "sym-K3", "sym-star-4", "bg-star-3",
]


def _unimodular(d: int, rng: np.random.Generator) -> list[list[int]]:
    """A product of random elementary integer row operations."""
    matrix = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(4):
        i, j = rng.choice(d, size=2, replace=False)
        k = int(rng.integers(-2, 3))
        matrix[i] = [a + k * b for a, b in zip(matrix[i], matrix[j])]
        if rng.random() < 0.5:
            matrix[i], matrix[j] = matrix[j], matrix[i]
    return matrix


@pytest.mark.parametrize("name", ["P5a", "P8a", "P9", "cube-3", "KS132", "T-3"])
@pytest.mark.parametrize("seed", range(4))
def test_counts_survive_unimodular_maps(name: str, seed: int) -> None:
    polytope = resolve_builtin(name)
    matrix = _unimodular(polytope.dim, np.random.default_rng(seed))
    assert abs(Matrix(matrix).det()) == 1
    image = polytope.transform(matrix)
    assert normalized_volume(image) == normalized_volume(polytope)
    assert len(lattice_points(image)) == len(lattice_points(polytope))
    assert f_vector(image) == f_vector(polytope)
    assert is_reflexive(image)


@pytest.mark.parametrize("name", REFLEXIVE_BUILTINS)
def test_dual_is_an_involution(name: str) -> None:
    polytope = resolve_builtin(name)
    assert is_reflexive(dual(polytope))
    assert dual(dual(polytope)) == polytope


@pytest.mark.parametrize("name", REFLEXIVE_BUILTINS)
def test_euler_relation(name: str) -> None:
    polytope = resolve_builtin(name)
    alternating = sum((-1) ** i * f for i, f in enumerate(f_vector(polytope)))
    assert alternating == 1 - (-1) ** polytope.dim


@pytest.mark.parametrize("name", ["Q-2", "Q-3", "Q-4", "R-2", "R-3", "S-2", "S-3", "T-3", "T-4"])
def test_simplex_volume_is_absolute_determinant(name: str) -> None:
    simplex = resolve_builtin(name)
    assert len(simplex.vertices) == simplex.dim + 1
    base, *rest = simplex.vertices
    edges = Matrix([[a - b for a, b in zip(v, base)] for v in rest])
    assert normalized_volume(simplex) == abs(edges.det())

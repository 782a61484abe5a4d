"""Exact integer geometry of lattice polytopes.

Facets, faces, lattice points, normalized volumes, reflexivity and duality are
computed in exact integer arithmetic. Determinants, ranks and the Smith/Hermite
normal forms go through :mod:`sympy`'s ``DomainMatrix`` over ``ZZ``.
"""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from sympy import Matrix
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, invariant_factors

from reflexive_mldeg.exceptions import (
    DimensionMismatchError,
    NotFullDimensionalError,
    NotReflexiveError,
)
from reflexive_mldeg.types import Vector

log = logging.getLogger("reflexive_mldeg")


@dataclass(frozen=True)
class Facet:
    """A facet inequality ``normal · x <= offset`` with a primitive normal."""

    normal: Vector
    offset: int
    vertex_set: frozenset[int]


@dataclass(frozen=True)
class Face:
    """A nonempty face, identified by the indices of the vertices it contains."""

    vertex_set: frozenset[int]
    dim: int
    lattice_points: tuple[Vector, ...]

    @property
    def label(self) -> str:
        return f"dim {self.dim} face on vertices {sorted(self.vertex_set)}"


# ---------------------------------------------------------------------------
# Integer linear algebra helpers
# ---------------------------------------------------------------------------


def _sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _domain_matrix(rows: Sequence[Sequence[int]]) -> DomainMatrix:
    return DomainMatrix([[ZZ(x) for x in row] for row in rows], (len(rows), len(rows[0])), ZZ)


def _det(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 1
    return int(_domain_matrix(rows).det())


def _rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    return int(_domain_matrix(rows).to_field().rank())


def affine_rank(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine span of *points*."""
    if len(points) <= 1:
        return 0
    return _rank([_sub(p, points[0]) for p in points[1:]])


def primitive(vector: Sequence[int]) -> Vector:
    """Divide an integer vector by the gcd of its entries."""
    g = math.gcd(*vector)
    if g == 0:
        return tuple(vector)
    return tuple(x // g for x in vector)


def _hyperplane_normal(rows: Sequence[Vector], d: int) -> Vector | None:
    """Primitive normal of the span of ``d - 1`` difference vectors, or None if degenerate.

    The normal is the vector of signed maximal minors (generalized cross product).
    """
    if d == 1:
        return (1,)
    normal = tuple(
        (-1) ** k * _det([row[:k] + row[k + 1:] for row in rows]) for k in range(d)
    )
    if not any(normal):
        return None
    return primitive(normal)


def _hull(points: list[Vector]) -> tuple[tuple[Vector, ...], tuple[Facet, ...]]:
    """Brute-force facet enumeration over all d-subsets of *points*.

    Returns the extreme points (lex-sorted) and the irredundant facets.
    """
    d = len(points[0])
    rank = affine_rank(points)
    if rank < d:
        raise NotFullDimensionalError(d, rank)

    inequalities: dict[tuple[Vector, int], None] = {}
    for combo in itertools.combinations(range(len(points)), d):
        base = points[combo[0]]
        normal = _hyperplane_normal([_sub(points[j], base) for j in combo[1:]], d)
        if normal is None:
            continue
        offset = _dot(normal, base)
        values = [_dot(normal, p) for p in points]
        if max(values) == offset:
            inequalities.setdefault((normal, offset))
        elif min(values) == offset:
            inequalities.setdefault((tuple(-x for x in normal), -offset))

    # a point is a vertex iff the normals of its tight facets span R^d
    vertices = tuple(
        p for p in points
        if _rank([n for n, b in inequalities if _dot(n, p) == b]) == d
    )
    facets = tuple(
        Facet(
            normal=normal,
            offset=offset,
            vertex_set=frozenset(i for i, v in enumerate(vertices) if _dot(normal, v) == offset),
        )
        for normal, offset in sorted(inequalities)
    )
    return vertices, facets


# ---------------------------------------------------------------------------
# Polytope
# ---------------------------------------------------------------------------


class Polytope:
    """A full-dimensional lattice polytope.

    The constructor accepts any finite point set; only its extreme points are
    kept as vertices. Facets are computed on construction, everything else is
    cached on first use.
    """

    def __init__(self, points: Iterable[Sequence[int]], name: str = "") -> None:
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise DimensionMismatchError(1, 0, "Polytope point set")
        dims = {len(p) for p in pts}
        if len(dims) != 1:
            raise DimensionMismatchError(len(pts[0]), max(dims), "Polytope point coordinates")
        self.name = name
        self.dim = len(pts[0])
        self.vertices, self.facets = _hull(pts)

    def __repr__(self) -> str:
        label = self.name or "Polytope"
        return f"<{label} dim={self.dim} vertices={len(self.vertices)}>"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def renamed(self, name: str) -> Polytope:
        return Polytope(self.vertices, name=name)

    def translate(self, shift: Sequence[int]) -> Polytope:
        return Polytope(
            (tuple(x + s for x, s in zip(v, shift)) for v in self.vertices), name=self.name
        )

    def transform(self, matrix: Sequence[Sequence[int]]) -> Polytope:
        """Image under the linear map x -> matrix · x."""
        return Polytope(
            (tuple(_dot(row, v) for row in matrix) for v in self.vertices), name=self.name
        )

    @cached_property
    def lattice_points(self) -> tuple[Vector, ...]:
        lo = [min(v[k] for v in self.vertices) for k in range(self.dim)]
        hi = [max(v[k] for v in self.vertices) for k in range(self.dim)]
        axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, self.dim)
        normals = np.array([f.normal for f in self.facets], dtype=np.int64)
        offsets = np.array([f.offset for f in self.facets], dtype=np.int64)
        inside = np.all(grid @ normals.T <= offsets, axis=1)
        return tuple(tuple(int(x) for x in row) for row in grid[inside])

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        full = frozenset(range(len(self.vertices)))
        facet_sets = {f.vertex_set for f in self.facets}
        seen: set[frozenset[int]] = set(facet_sets)
        frontier = list(facet_sets)
        while frontier:
            found: list[frozenset[int]] = []
            for s in frontier:
                for t in facet_sets:
                    meet = s & t
                    if meet and meet not in seen:
                        seen.add(meet)
                        found.append(meet)
            frontier = found
        seen.add(full)

        faces: list[Face] = []
        for vertex_set in seen:
            tight = [f for f in self.facets if vertex_set <= f.vertex_set]
            points = tuple(
                p for p in self.lattice_points
                if all(_dot(f.normal, p) == f.offset for f in tight)
            )
            dim = affine_rank([self.vertices[i] for i in sorted(vertex_set)])
            faces.append(Face(vertex_set=vertex_set, dim=dim, lattice_points=points))
        faces.sort(key=lambda f: (f.dim, sorted(f.vertex_set)))
        return tuple(faces)

    @cached_property
    def normalized_volume(self) -> int:
        return _pulling_volume(self)


def _pulling_volume(polytope: Polytope) -> int:
    """Sum of |det| over the pulling triangulation.

    Every face is coned from its lowest-lex vertex over the triangulations of its
    own facets that miss that vertex, recursing down the face lattice.
    """
    faces = polytope.faces
    children: dict[frozenset[int], list[frozenset[int]]] = {f.vertex_set: [] for f in faces}
    dims = {f.vertex_set: f.dim for f in faces}
    for f in faces:
        for g in faces:
            if g.dim == f.dim - 1 and g.vertex_set < f.vertex_set:
                children[f.vertex_set].append(g.vertex_set)

    memo: dict[frozenset[int], list[tuple[int, ...]]] = {}

    def simplices(vertex_set: frozenset[int]) -> list[tuple[int, ...]]:
        if vertex_set in memo:
            return memo[vertex_set]
        if dims[vertex_set] == 0:
            result = [tuple(vertex_set)]
        else:
            # vertices are lex-sorted, so the smallest index is the lowest-lex vertex
            apex = min(vertex_set)
            result = [
                (apex, *simplex)
                for child in children[vertex_set]
                if apex not in child
                for simplex in simplices(child)
            ]
        memo[vertex_set] = result
        return result

    total = 0
    for simplex in simplices(frozenset(range(len(polytope.vertices)))):
        origin = polytope.vertices[simplex[0]]
        total += abs(_det([_sub(polytope.vertices[i], origin) for i in simplex[1:]]))
    return total


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def facets(polytope: Polytope) -> list[Facet]:
    return list(polytope.facets)


def is_reflexive(polytope: Polytope) -> bool:
    """True iff every primitive facet inequality reads ``a · x <= 1``.

    All offsets equal to 1 also puts the origin strictly inside.
    """
    return all(f.offset == 1 for f in polytope.facets)


def dual(polytope: Polytope) -> Polytope:
    if not is_reflexive(polytope):
        raise NotReflexiveError(polytope.name or repr(polytope))
    name = f"dual({polytope.name})" if polytope.name else ""
    return Polytope((f.normal for f in polytope.facets), name=name)


def lattice_points(polytope: Polytope) -> list[Vector]:
    return list(polytope.lattice_points)


def normalized_volume(polytope: Polytope) -> int:
    return polytope.normalized_volume


def faces(polytope: Polytope) -> list[Face]:
    return list(polytope.faces)


def f_vector(polytope: Polytope) -> list[int]:
    counts = [0] * polytope.dim
    for face in polytope.faces:
        if face.dim < polytope.dim:
            counts[face.dim] += 1
    return counts


def translate_nonnegative(polytope: Polytope) -> tuple[Polytope, Vector]:
    """Translate so every lattice point is nonnegative with a zero in each coordinate."""
    shift = tuple(-min(v[k] for v in polytope.vertices) for k in range(polytope.dim))
    return polytope.translate(shift), shift


def lattice_index(columns: Sequence[Sequence[int]]) -> int:
    """Index in Z^d of the lattice generated by the differences ``a_i - a_1``.

    Returns 0 when the differences do not span R^d.
    """
    if not columns:
        return 0
    d = len(columns[0])
    diffs = [_sub(c, columns[0]) for c in columns[1:]]
    if len(diffs) < d:
        return 0
    matrix = _domain_matrix([[diffs[j][i] for j in range(len(diffs))] for i in range(d)])
    invariants = [int(x) for x in invariant_factors(matrix) if x != 0]
    if len(invariants) < d:
        return 0
    return abs(math.prod(invariants))


def affine_face_coordinates(face: Face) -> Matrix:
    """Lattice points of *face* written in a basis of its own affine lattice.

    Returns a ``k x m`` integer matrix whose columns correspond to
    ``face.lattice_points`` and whose first column is zero.
    """
    points = face.lattice_points
    m = len(points)
    if face.dim == 0 or m == 1:
        return Matrix.zeros(0, m)
    base = points[0]
    d = len(base)
    diffs = [_sub(p, base) for p in points]
    columns = _domain_matrix([[diffs[j][i] for j in range(m)] for i in range(d)])
    basis = Matrix(hermite_normal_form(columns).to_Matrix())
    # solve on an invertible k x k block of rows of the basis
    _, pivots = basis.T.rref()
    block = basis.extract(list(pivots), list(range(basis.cols)))
    rhs = Matrix([[diffs[j][i] for j in range(m)] for i in pivots])
    coords = block.LUsolve(rhs)
    return coords.applyfunc(int)

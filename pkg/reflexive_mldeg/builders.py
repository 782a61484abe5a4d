"""Polytope families, constructions, reflexive polygons and graph polytopes."""

from __future__ import annotations

import itertools
import logging
import math
import re
from collections import deque
from collections.abc import Callable
from dataclasses import dataclass
from typing import Final

from reflexive_mldeg.exceptions import (
    DimensionOutOfRangeError,
    InvalidGraphError,
    NotReflexiveError,
    UnknownNameError,
)
from reflexive_mldeg.lattice import Polytope, is_reflexive
from reflexive_mldeg.types import POLYGON_NAMES, Construction, Vector

log = logging.getLogger("reflexive_mldeg")

#: Boundary lattice points of the 16 reflexive polygons, interior point at the origin.
POLYGON_POINTS: Final[dict[str, tuple[Vector, ...]]] = {
    "P3": ((-1, -1), (0, 1), (1, 0)),
    "P4a": ((0, -1), (0, 1), (1, 0), (-1, 0)),
    "P4b": ((0, -1), (0, 1), (1, 0), (-1, 1)),
    "P4c": ((0, -1), (0, 1), (1, 1), (-1, 1)),
    "P5a": ((0, -1), (0, 1), (1, 0), (-1, 1), (-1, 0)),
    "P5b": ((0, -1), (0, 1), (1, 1), (-1, 1), (-1, 0)),
    "P6a": ((0, -1), (0, 1), (1, 0), (-1, 1), (-1, 0), (1, -1)),
    "P6b": ((0, -1), (0, 1), (1, 0), (-1, 1), (-1, 0), (1, 1)),
    "P6c": ((0, -1), (0, 1), (-1, -1), (-1, 1), (-1, 0), (1, 1)),
    "P6d": ((-1, -2), (0, 1), (-1, -1), (-1, 1), (-1, 0), (1, 1)),
    "P7a": ((0, -1), (0, 1), (-1, -1), (-1, 1), (-1, 0), (1, 1), (1, 0)),
    "P7b": ((0, -1), (0, 1), (-1, -1), (-1, 1), (-1, 0), (1, 1), (-1, -2)),
    "P8a": ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)),
    "P8b": ((0, -1), (0, 1), (-1, -1), (-1, 1), (-1, 0), (1, 1), (-1, -2), (1, 0)),
    "P8c": ((0, -1), (0, 1), (-1, -1), (-1, 1), (-1, 0), (1, 1), (-1, -2), (-1, -3)),
    "P9": ((0, -1), (0, 1), (-1, -1), (-1, 1), (-1, 0), (1, 1), (-1, -2), (2, 1), (1, 0)),
}

#: Three-dimensional examples in the coordinates of their worked design matrices.
KS_EXAMPLES: Final[dict[str, tuple[Vector, ...]]] = {
    "KS0": ((1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (0, 0, 0)),
    "KS132": ((1, 1, 1), (2, 1, 1), (1, 1, 2), (0, 1, 0), (0, 0, 1), (1, 2, 1)),
}

_MAX_SYLVESTER: Final = 6
_MAX_SIMPLEX_DIM: Final = 5


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def cube(d: int) -> Polytope:
    """The hypercube [-1, 1]^d."""
    if not 1 <= d <= 8:
        raise DimensionOutOfRangeError("cube", d, 1, 8)
    return Polytope(itertools.product((-1, 1), repeat=d), name=f"cube-{d}")


def cross(d: int) -> Polytope:
    """The cross polytope conv(±e_1, ..., ±e_d)."""
    if not 1 <= d <= 8:
        raise DimensionOutOfRangeError("cross", d, 1, 8)
    points = []
    for i in range(d):
        for sign in (1, -1):
            points.append(tuple(sign if k == i else 0 for k in range(d)))
    return Polytope(points, name=f"cross-{d}")


def sylvester(i: int) -> int:
    """t_1 = 2, t_{i+1} = t_i^2 - t_i + 1."""
    if not 1 <= i <= _MAX_SYLVESTER:
        raise DimensionOutOfRangeError("sylvester", i, 1, _MAX_SYLVESTER)
    t = 2
    for _ in range(i - 1):
        t = t * t - t + 1
    return t


def _unit(d: int, i: int, scale: int = 1) -> Vector:
    return tuple(scale if k == i else 0 for k in range(d))


def _check_simplex_dim(family: str, d: int, lo: int = 2) -> None:
    if not lo <= d <= _MAX_SIMPLEX_DIM:
        raise DimensionOutOfRangeError(family, d, lo, _MAX_SIMPLEX_DIM)


def simplex_Q(d: int) -> Polytope:
    """Self-dual reflexive simplex with normalized volume (d+1)!."""
    _check_simplex_dim("simplex_Q", d)
    vertices = [tuple(1 for _ in range(d))]
    for j in range(1, d + 1):
        vertices.append(
            tuple(0 if i < j else (j - 1 - d if i == j else 1) for i in range(1, d + 1))
        )
    return Polytope(vertices, name=f"Q-{d}")


def simplex_R(d: int) -> Polytope:
    """conv(0, t_1 e_1, ..., t_d e_d); its interior lattice point is (1, ..., 1)."""
    _check_simplex_dim("simplex_R", d)
    vertices = [_unit(d, 0, 0)] + [_unit(d, i, sylvester(i + 1)) for i in range(d)]
    return Polytope(vertices, name=f"R-{d}")


def simplex_S(d: int) -> Polytope:
    """R_d with the last vertex replaced by 2(t_d - 1) e_d."""
    _check_simplex_dim("simplex_S", d)
    vertices = [_unit(d, 0, 0)] + [_unit(d, i, sylvester(i + 1)) for i in range(d - 1)]
    vertices.append(_unit(d, d - 1, 2 * (sylvester(d) - 1)))
    return Polytope(vertices, name=f"S-{d}")


def simplex_T(d: int) -> Polytope:
    """Simplex with vertices -3e_1 - 2(e_2 + ... + e_d), e_1, e_1 + 2e_2, e_1 + 2e_3
    and e_1 + 2 t_{i-3} e_i for i >= 4."""
    _check_simplex_dim("simplex_T", d, lo=3)
    e1 = _unit(d, 0)
    vertices = [tuple(-3 if k == 0 else -2 for k in range(d)), e1]
    for i in range(2, d + 1):
        scale = 2 if i <= 3 else 2 * sylvester(i - 3)
        vertices.append(tuple(a + b for a, b in zip(e1, _unit(d, i - 1, scale))))
    return Polytope(vertices, name=f"T-{d}")


def interior_points(polytope: Polytope) -> list[Vector]:
    return [
        p for p in polytope.lattice_points
        if all(sum(a * b for a, b in zip(f.normal, p)) < f.offset for f in polytope.facets)
    ]


def center(polytope: Polytope) -> Polytope:
    """Translate a polytope with a unique interior lattice point so that point is the origin."""
    inner = interior_points(polytope)
    if len(inner) != 1:
        raise NotReflexiveError(polytope.name or repr(polytope))
    return polytope.translate(tuple(-x for x in inner[0]))


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def _warn_if_not_reflexive(polytope: Polytope, construction: str) -> None:
    if not is_reflexive(polytope):
        log.warning(
            "construction %s applied to non-reflexive %s; the result is not reflexive",
            construction,
            polytope.name or repr(polytope),
        )


def construct_A(polytope: Polytope) -> Polytope:
    """A(P) = P x [-1, 1]."""
    _warn_if_not_reflexive(polytope, "A")
    vertices = [(*v, h) for v in polytope.vertices for h in (-1, 1)]
    return Polytope(vertices, name=f"A({polytope.name})")


def construct_B(polytope: Polytope) -> Polytope:
    """B(P) = conv(P x {0}, ±e_{d+1}), the bipyramid over P."""
    _warn_if_not_reflexive(polytope, "B")
    d = polytope.dim
    vertices = [(*v, 0) for v in polytope.vertices]
    vertices += [_unit(d + 1, d, 1), _unit(d + 1, d, -1)]
    return Polytope(vertices, name=f"B({polytope.name})")


def construct_C(polytope: Polytope) -> Polytope:
    """C(P) = conv(P x [-1, 0], e_{d+1})."""
    _warn_if_not_reflexive(polytope, "C")
    d = polytope.dim
    vertices = [(*v, h) for v in polytope.vertices for h in (-1, 0)]
    vertices.append(_unit(d + 1, d, 1))
    return Polytope(vertices, name=f"C({polytope.name})")


CONSTRUCTIONS: Final[dict[str, Callable[[Polytope], Polytope]]] = {
    "A": construct_A,
    "B": construct_B,
    "C": construct_C,
}


def product(first: Polytope, second: Polytope) -> Polytope:
    vertices = [(*v, *w) for v in first.vertices for w in second.vertices]
    return Polytope(vertices, name=f"{first.name}x{second.name}")


def iterate(construction: Construction, k: int, polytope: Polytope) -> Polytope:
    """Apply construction A, B or C exactly *k* times."""
    if k < 0:
        raise DimensionOutOfRangeError("iterate", k, 0, 8)
    if construction not in CONSTRUCTIONS:
        raise UnknownNameError("construction", construction, CONSTRUCTIONS)
    result = polytope
    for _ in range(k):
        result = CONSTRUCTIONS[construction](result)
    if k > 1:
        result = result.renamed(f"{construction}^{k}({polytope.name})")
    return result


def construction_degree(construction: Construction, d: int, degree: int, k: int) -> int:
    """Closed-form degree of the k-th iterate of a construction on a d-dimensional polytope."""
    rising = math.factorial(d + k) // math.factorial(d)
    if construction == "A":
        return 2**k * rising * degree
    if construction == "B":
        return 2**k * degree
    return (1 + rising) * degree


def reflexive_polygon(name: str) -> Polytope:
    if name not in POLYGON_POINTS:
        raise UnknownNameError("polygon", name, POLYGON_NAMES)
    return Polytope(POLYGON_POINTS[name], name=name)


# ---------------------------------------------------------------------------
# Graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on the vertex set {1, ..., vertex_count}."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if u == v:
                raise InvalidGraphError(f"loop at vertex {u}")
            if not (1 <= u <= self.vertex_count and 1 <= v <= self.vertex_count):
                raise InvalidGraphError(f"edge ({u}, {v}) outside 1..{self.vertex_count}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InvalidGraphError(f"repeated edge ({u}, {v})")
            seen.add(key)

    def neighbours(self, vertex: int) -> list[int]:
        out = [v for u, v in self.edges if u == vertex]
        return out + [u for u, v in self.edges if v == vertex]

    def is_connected(self) -> bool:
        return len(_component(self, 1)) == self.vertex_count


def _component(graph: Graph, start: int) -> set[int]:
    reached = {start}
    queue = deque([start])
    while queue:
        vertex = queue.popleft()
        for nxt in graph.neighbours(vertex):
            if nxt not in reached:
                reached.add(nxt)
                queue.append(nxt)
    return reached


def star_graph(d: int) -> Graph:
    """K_{1,d-1}: center 1 joined to leaves 2..d."""
    if d < 2:
        raise DimensionOutOfRangeError("star_graph", d, 2, 64)
    return Graph(vertex_count=d, edges=tuple((1, j) for j in range(2, d + 1)))


def complete_graph(n: int) -> Graph:
    return Graph(vertex_count=n, edges=tuple(itertools.combinations(range(1, n + 1), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DimensionOutOfRangeError("cycle_graph", n, 3, 64)
    return Graph(vertex_count=n, edges=tuple((i, i % n + 1) for i in range(1, n + 1)))


def path_graph(n: int) -> Graph:
    return Graph(vertex_count=n, edges=tuple((i, i + 1) for i in range(1, n)))


def is_bipartite(graph: Graph) -> bool:
    """Two-colour every component by breadth-first search."""
    colour: dict[int, int] = {}
    for start in range(1, graph.vertex_count + 1):
        if start in colour:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            vertex = queue.popleft()
            for nxt in graph.neighbours(vertex):
                if nxt not in colour:
                    colour[nxt] = 1 - colour[vertex]
                    queue.append(nxt)
                elif colour[nxt] == colour[vertex]:
                    return False
    return True


def sym_edge_polytope(graph: Graph, name: str = "") -> Polytope:
    """conv(0, ±(e_i - e_j)) over edges, with the last coordinate dropped.

    The points lie in the hyperplane sum(x) = 0, which projects isomorphically
    onto Z^{n-1}.
    """
    if not graph.is_connected():
        log.warning("graph is disconnected; its symmetric edge polytope is not full-dimensional")
    n = graph.vertex_count
    points: list[Vector] = [tuple(0 for _ in range(n - 1))]
    for u, v in graph.edges:
        diff = tuple((k == u - 1) - (k == v - 1) for k in range(n))
        points.append(diff[:-1])
        points.append(tuple(-x for x in diff[:-1]))
    return Polytope(points, name=name or "sym_edge")


def bg_polytope(graph: Graph, name: str = "") -> tuple[Polytope, bool]:
    """conv(0, ±e_i, ±e_i ± e_j over edges); the flag is True iff the graph is bipartite."""
    bipartite = is_bipartite(graph)
    if not bipartite:
        log.warning("graph has an odd cycle; B_G is not reflexive")
    n = graph.vertex_count
    points: list[Vector] = [tuple(0 for _ in range(n))]
    for i in range(n):
        points += [_unit(n, i), _unit(n, i, -1)]
    for u, v in graph.edges:
        for su, sv in itertools.product((1, -1), repeat=2):
            points.append(tuple(su * (k == u - 1) + sv * (k == v - 1) for k in range(n)))
    return Polytope(points, name=name or "bg"), bipartite


# ---------------------------------------------------------------------------
# Builtin registry
# ---------------------------------------------------------------------------

_FAMILY_RE = re.compile(r"^(cube|cross|Q|R|S|T)-(\d+)$")
_GRAPH_RE = re.compile(r"^(sym|bg)-(star|cycle|complete|path)-(\d+)$")
_COMPLETE_RE = re.compile(r"^(sym|bg)-K(\d+)$")

_FAMILIES: Final[dict[str, Callable[[int], Polytope]]] = {
    "cube": cube,
    "cross": cross,
    "Q": simplex_Q,
    "R": simplex_R,
    "S": simplex_S,
    "T": simplex_T,
}

_GRAPHS: Final[dict[str, Callable[[int], Graph]]] = {
    "star": star_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "path": path_graph,
}

#: Name patterns accepted by :func:`resolve_builtin`, with a short description each.
BUILTIN_PATTERNS: Final[dict[str, str]] = {
    "P3 ... P9": "the 16 reflexive polygons",
    "cube-d": "hypercube [-1,1]^d",
    "cross-d": "cross polytope conv(±e_i)",
    "Q-d, R-d, S-d": "reflexive simplices, 2 <= d <= 5",
    "T-d": "reflexive simplex, 3 <= d <= 5",
    "KS0, KS132": "three-dimensional simplex and polytope 132 in design coordinates",
    "KS418": "the cube C_3",
    "sym-GRAPH-n": "symmetric edge polytope of star/cycle/complete/path graph on n vertices",
    "bg-GRAPH-n": "B_G polytope of star/cycle/complete/path graph on n vertices",
    "sym-Kn, bg-Kn": "shorthand for sym-complete-n and bg-complete-n",
}


def resolve_builtin(name: str) -> Polytope:
    """Build a polytope from its registry name, centered at its interior point where it has one."""
    if name in POLYGON_POINTS:
        return reflexive_polygon(name)
    if name in KS_EXAMPLES:
        return center(Polytope(KS_EXAMPLES[name], name=name))
    if name == "KS418":
        return cube(3).renamed(name)
    match = _FAMILY_RE.match(name)
    if match:
        polytope = _FAMILIES[match.group(1)](int(match.group(2)))
        if match.group(1) in ("cube", "cross", "Q"):
            return polytope
        return center(polytope).renamed(name)
    short = _COMPLETE_RE.match(name)
    if short:
        return resolve_builtin(f"{short.group(1)}-complete-{short.group(2)}").renamed(name)
    match = _GRAPH_RE.match(name)
    if match:
        graph = _GRAPHS[match.group(2)](int(match.group(3)))
        if match.group(1) == "sym":
            return sym_edge_polytope(graph, name=name)
        polytope, _ = bg_polytope(graph, name=name)
        return polytope
    raise UnknownNameError("builtin", name, BUILTIN_PATTERNS)

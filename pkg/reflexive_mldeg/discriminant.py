"""Face polynomials, torus singularities and the principal A-determinant."""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from typing import Final

import numpy as np
import sympy

from reflexive_mldeg.exceptions import DimensionMismatchError, UnknownNameError
from reflexive_mldeg.lattice import Face, Polytope, affine_face_coordinates
from reflexive_mldeg.score import (
    DesignMatrix,
    Polynomial,
    PolynomialSystem,
    Scaling,
    design_matrix,
)
from reflexive_mldeg.solver import default_tracker_config, solve_total_degree
from reflexive_mldeg.types import TrackerConfig, Vector

log = logging.getLogger("reflexive_mldeg")

#: Closed-form discriminants, keyed by name, with their variables in argument order.
DISCRIMINANTS: Final[dict[str, tuple[tuple[str, ...], str]]] = {
    "P0": (
        ("c111", "c211", "c121", "c112", "c000"),
        "c111**4 - 256*c211*c121*c112*c000",
    ),
    "P132-full": (
        ("c111", "c211", "c112", "c010", "c001", "c121"),
        "c111**6 + 54*c111**3*c211*(c112*c010 + c001*c121)"
        " + 729*c211**2*(c112*c010 - c001*c121)**2",
    ),
    "P132-gamma0": (
        ("c112", "c010", "c001", "c121"),
        "c112*c010 - c001*c121",
    ),
    "cross2": (
        ("c11", "c21", "c12", "c01", "c10"),
        "c11**4*c01*c10 - 8*c11**2*c21*c01**2*c10 + 16*c21**2*c01**3*c10"
        " - 8*c11**2*c12*c01*c10**2 - 32*c21*c12*c01**2*c10**2 + 16*c12**2*c01*c10**3",
    ),
}

_SYMBOLS: Final[dict[str, tuple[sympy.Symbol, ...]]] = {
    name: tuple(sympy.symbols(variables)) for name, (variables, _) in DISCRIMINANTS.items()
}
_EXPRESSIONS: Final[dict[str, sympy.Expr]] = {
    name: sympy.expand(sympy.sympify(text)) for name, (_, text) in DISCRIMINANTS.items()
}


def variable_exponent(variable: str) -> Vector:
    """``c211`` -> ``(2, 1, 1)``."""
    return tuple(int(ch) for ch in variable[1:])


def _values(
    name: str, weights: Mapping[str, complex] | Sequence[complex]
) -> dict[sympy.Symbol, sympy.Expr]:
    if name not in DISCRIMINANTS:
        raise UnknownNameError("discriminant", name, DISCRIMINANTS)
    variables = DISCRIMINANTS[name][0]
    if isinstance(weights, Mapping):
        ordered = [weights[v] for v in variables]
    else:
        ordered = list(weights)
    if len(ordered) != len(variables):
        raise DimensionMismatchError(len(variables), len(ordered), f"{name} discriminant")
    return {sym: sympy.sympify(v) for sym, v in zip(_SYMBOLS[name], ordered)}


def closed_form_discriminant(
    name: str, weights: Mapping[str, complex] | Sequence[complex]
) -> complex:
    """Evaluate a known discriminant at the given coefficients.

    Integer and rational inputs are evaluated exactly.
    """
    values = _values(name, weights)
    return complex(sympy.N(_EXPRESSIONS[name].subs(values)))


def discriminant_scale(name: str, weights: Mapping[str, complex] | Sequence[complex]) -> float:
    """Sum of the moduli of the discriminant's terms; a natural yardstick for |Δ|."""
    values = _values(name, weights)
    return float(sum(abs(complex(sympy.N(term.subs(values))))
                     for term in sympy.Add.make_args(_EXPRESSIONS[name])))


def vanishing_root(
    name: str, weights: Mapping[str, complex], variable: str
) -> list[complex]:
    """Values of *variable* making the discriminant vanish with the other weights fixed."""
    if name not in DISCRIMINANTS:
        raise UnknownNameError("discriminant", name, DISCRIMINANTS)
    variables = DISCRIMINANTS[name][0]
    if variable not in variables:
        raise UnknownNameError("variable", variable, variables)
    target = _SYMBOLS[name][variables.index(variable)]
    fixed = {sym: sympy.sympify(complex(weights[v]))
             for sym, v in zip(_SYMBOLS[name], variables) if v != variable}
    poly = sympy.Poly(sympy.expand(_EXPRESSIONS[name].subs(fixed)), target)
    coefficients = [complex(sympy.N(c)) for c in poly.all_coeffs()]
    return [complex(z) for z in np.roots(coefficients) if z != 0]


# ---------------------------------------------------------------------------
# Face polynomials
# ---------------------------------------------------------------------------


def face_polynomial(face: Face, weights: Sequence[complex]) -> Polynomial:
    """f_c restricted to *face*, written in the face's own affine lattice coordinates.

    *weights* follow ``face.lattice_points``. Exponents are shifted to be nonnegative.
    """
    if len(weights) != len(face.lattice_points):
        raise DimensionMismatchError(len(face.lattice_points), len(weights), "face weights")
    coords = affine_face_coordinates(face)
    k, m = coords.shape
    rows = [[int(coords[i, j]) for j in range(m)] for i in range(k)]
    lows = [min(row) for row in rows]
    return tuple(
        (tuple(rows[i][j] - lows[i] for i in range(k)), complex(weights[j])) for j in range(m)
    )


def _relative_value(poly: Polynomial, point: np.ndarray) -> float:
    """|p(x)| divided by the sum of the moduli of its terms at x."""
    terms = np.array([c * np.prod(point ** np.array(e)) for e, c in poly])
    total = float(np.sum(np.abs(terms)))
    return float(abs(terms.sum())) / total if total > 0 else 0.0


def _derivative(poly: Polynomial, j: int) -> Polynomial:
    return tuple(
        (tuple(x - (i == j) for i, x in enumerate(e)), c * e[j]) for e, c in poly if e[j] > 0
    )


def _edge_witness(poly: Polynomial, cfg: TrackerConfig) -> np.ndarray | None:
    top = max(e[0] for e, _ in poly)
    if top <= 1:
        return None
    coefficients = np.zeros(top + 1, dtype=complex)
    for (e,), c in poly:
        coefficients[e] += c
    derivative = np.polynomial.polynomial.polyder(coefficients)
    for root in np.polynomial.polynomial.polyroots(derivative):
        if abs(root) <= cfg["torus_tol"]:
            continue
        point = np.array([root])
        if _relative_value(poly, point) <= cfg["witness_tol"]:
            return point
    return None


def _witness(poly: Polynomial, k: int, cfg: TrackerConfig) -> np.ndarray | None:
    if k == 1:
        return _edge_witness(poly, cfg)
    derivatives = tuple(_derivative(poly, j) for j in range(k))
    # a nonzero constant partial derivative leaves no critical points
    if any(all(sum(e) == 0 for e, _ in d) for d in derivatives):
        return None
    solved = solve_total_degree(PolynomialSystem(num_vars=k, equations=derivatives), cfg)
    for sol in solved.solutions:
        if sol["status"] in ("failed", "at-infinity"):
            continue
        point = np.asarray(sol["point"])
        if np.min(np.abs(point)) <= cfg["torus_tol"]:
            continue
        if _relative_value(poly, point) > cfg["witness_tol"]:
            continue
        if all(_relative_value(d, point) <= cfg["witness_tol"] for d in derivatives):
            return point
    return None


def has_toric_singularity(
    face: Face, weights: Sequence[complex], cfg: TrackerConfig | None = None
) -> bool:
    """Whether the face polynomial has a singular point on the torus."""
    if face.dim == 0 or len(face.lattice_points) < 3:
        return False
    cfg = cfg or default_tracker_config()
    return _witness(face_polynomial(face, weights), face.dim, cfg) is not None


def principal_A_determinant_vanishes(
    polytope: Polytope | DesignMatrix,
    scaling: Scaling | None = None,
    cfg: TrackerConfig | None = None,
) -> tuple[bool, Face | None]:
    """Check faces by increasing dimension and return the first singular one.

    *scaling* follows the columns of the polytope's design matrix; ``None`` means all ones.
    """
    design = polytope if isinstance(polytope, DesignMatrix) else design_matrix(polytope)
    scaling = scaling or Scaling.standard(design.n)
    cfg = cfg or default_tracker_config()
    for face in design.polytope.faces:
        if has_toric_singularity(face, scaling.restrict(design, face.lattice_points), cfg):
            log.info("face polynomial is singular on %s", face.label)
            return True, face
    return False, None

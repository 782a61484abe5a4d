"""Design matrices, scalings, data vectors and score-equation systems."""

from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from reflexive_mldeg.exceptions import (
    DegenerateDataError,
    DimensionMismatchError,
    LatticeIndexNotOneError,
    ZeroParameterError,
    ZeroSampleSizeError,
)
from reflexive_mldeg.lattice import Polytope, lattice_index, translate_nonnegative
from reflexive_mldeg.types import Vector

log = logging.getLogger("reflexive_mldeg")

Term = tuple[Vector, complex]
Polynomial = tuple[Term, ...]

_VALIDITY_TOL = 1e-8


@dataclass(frozen=True)
class DesignMatrix:
    """Lattice points of a translated polytope as lex-ordered integer columns."""

    columns: tuple[Vector, ...]
    shift: Vector
    polytope: Polytope

    @property
    def d(self) -> int:
        return len(self.shift)

    @property
    def n(self) -> int:
        return len(self.columns)

    def matrix(self, homogenized: bool = False) -> np.ndarray:
        """The d x n matrix A, or the (d+1) x n matrix A' with the all-ones top row."""
        a = np.array(self.columns, dtype=np.int64).T.reshape(self.d, self.n)
        if homogenized:
            return np.vstack([np.ones((1, self.n), dtype=np.int64), a])
        return a

    def centered_columns(self) -> list[Vector]:
        """Columns in the polytope's original coordinates."""
        return [tuple(a - s for a, s in zip(col, self.shift)) for col in self.columns]

    def index_of(self, exponent: Sequence[int]) -> int:
        return self.columns.index(tuple(exponent))


@dataclass(frozen=True)
class Scaling:
    """Nonzero complex weight c_i for every column of a design matrix."""

    weights: tuple[complex, ...]

    def __post_init__(self) -> None:
        for i, c in enumerate(self.weights):
            if c == 0:
                raise ZeroParameterError(f"c_{i + 1}")

    @classmethod
    def standard(cls, n: int) -> Scaling:
        return cls(tuple(1 + 0j for _ in range(n)))

    @classmethod
    def from_exponents(
        cls, design: DesignMatrix, weights: Mapping[Vector, complex]
    ) -> Scaling:
        """Weights keyed by column exponent; columns not mentioned get weight 1."""
        for exponent in weights:
            design.index_of(exponent)
        return cls(tuple(complex(weights.get(col, 1)) for col in design.columns))

    def restrict(self, design: DesignMatrix, points: Sequence[Vector]) -> list[complex]:
        """Weights of the given translated lattice points."""
        return [self.weights[design.index_of(p)] for p in points]


@dataclass(frozen=True)
class DataVector:
    """Nonnegative integer counts u, one per column."""

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(u < 0 for u in self.counts):
            raise DegenerateDataError("counts must be nonnegative")
        if sum(self.counts) == 0:
            raise ZeroSampleSizeError()

    @property
    def total(self) -> int:
        return sum(self.counts)

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> DataVector:
        """Generic data: every count drawn uniformly from 1..1000."""
        return cls(tuple(int(x) for x in rng.integers(1, 1001, size=n)))

    def sufficient_statistics(self, design: DesignMatrix) -> list[int]:
        """The integer vector A·u."""
        _check_length(design, len(self.counts), "data vector")
        return [
            sum(col[k] * u for col, u in zip(design.columns, self.counts))
            for k in range(design.d)
        ]

    def mean(self, design: DesignMatrix, centered: bool = False) -> list[Fraction]:
        """b = A·u / u_+, optionally in the polytope's original coordinates."""
        b = [Fraction(x, self.total) for x in self.sufficient_statistics(design)]
        if centered:
            b = [x - s for x, s in zip(b, design.shift)]
        return b


@dataclass(frozen=True)
class PolynomialSystem:
    """Square system of sparse complex polynomials with nonnegative exponents."""

    num_vars: int
    equations: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if len(self.equations) != self.num_vars:
            raise DimensionMismatchError(self.num_vars, len(self.equations), "square system")

    @property
    def degrees(self) -> list[int]:
        return [max((sum(exp) for exp, _ in eq), default=0) for eq in self.equations]

    @property
    def bezout(self) -> int:
        return math.prod(self.degrees)


def _check_length(design: DesignMatrix, got: int, where: str) -> None:
    if got != design.n:
        raise DimensionMismatchError(design.n, got, where)


def design_matrix(polytope: Polytope) -> DesignMatrix:
    translated, shift = translate_nonnegative(polytope)
    columns = translated.lattice_points
    index = lattice_index(columns)
    if index != 1:
        raise LatticeIndexNotOneError(index)
    return DesignMatrix(columns=columns, shift=shift, polytope=translated)


def score_system(design: DesignMatrix, scaling: Scaling, data: DataVector) -> PolynomialSystem:
    """Birch's equations A'·p(s, θ) = A'u / u_+ in the variables (s, θ_1, ..., θ_d).

    Every row is multiplied by u_+ so the right-hand sides are integers.
    """
    _check_length(design, len(scaling.weights), "scaling")
    total = data.total
    stats = data.sufficient_statistics(design)
    zero = tuple(0 for _ in range(design.d + 1))
    mass = tuple(((1, *col), total * c) for col, c in zip(design.columns, scaling.weights))
    equations: list[Polynomial] = [mass + ((zero, complex(-total)),)]
    for k in range(design.d):
        terms = tuple(
            ((1, *col), total * col[k] * c)
            for col, c in zip(design.columns, scaling.weights)
            if col[k] != 0
        )
        equations.append(terms + ((zero, complex(-stats[k])),))
    return PolynomialSystem(num_vars=design.d + 1, equations=tuple(equations))


def theta_system(design: DesignMatrix, scaling: Scaling, data: DataVector) -> PolynomialSystem:
    """The score equations with s eliminated: Σ_i (u_+ a_ki - (A u)_k) c_i θ^{a_i} = 0.

    On the torus with f_c(θ) != 0 its solutions correspond one-to-one to those of
    :func:`score_system` through s = 1 / f_c(θ).
    """
    _check_length(design, len(scaling.weights), "scaling")
    total = data.total
    stats = data.sufficient_statistics(design)
    equations = []
    for k in range(design.d):
        terms = tuple(
            (col, (total * col[k] - stats[k]) * c)
            for col, c in zip(design.columns, scaling.weights)
            if total * col[k] != stats[k]
        )
        equations.append(terms)
    return PolynomialSystem(num_vars=design.d, equations=tuple(equations))


def scaled_polynomial(design: DesignMatrix, scaling: Scaling, theta: np.ndarray) -> complex:
    """f_c(θ) = Σ c_i θ^{a_i}."""
    monomials = np.prod(np.power(theta[None, :], design.matrix().T), axis=1)
    return complex(np.dot(np.asarray(scaling.weights), monomials))


def complete_solution(design: DesignMatrix, scaling: Scaling, theta: np.ndarray) -> np.ndarray:
    """Prepend s = 1 / f_c(θ) to a θ vector."""
    theta = np.asarray(theta, dtype=complex)
    return np.concatenate([[1.0 / scaled_polynomial(design, scaling, theta)], theta])


# ---------------------------------------------------------------------------
# Distributions and Birch residuals
# ---------------------------------------------------------------------------


def solution_to_distribution(
    design: DesignMatrix, scaling: Scaling, solution: np.ndarray
) -> tuple[np.ndarray, bool]:
    """p_i = c_i s θ^{a_i}; the flag is True when p is a real positive vector."""
    solution = np.asarray(solution, dtype=complex)
    s, theta = solution[0], solution[1:]
    monomials = np.prod(np.power(theta[None, :], design.matrix().T), axis=1)
    p = np.asarray(scaling.weights) * s * monomials
    scale = max(1.0, float(np.max(np.abs(p))))
    valid = bool(np.all(np.abs(p.imag) <= _VALIDITY_TOL * scale) and np.all(p.real > 0))
    return p, valid


def birch_residual(
    design: DesignMatrix, scaling: Scaling, solution: np.ndarray, data: DataVector
) -> tuple[float, float]:
    """Max-norm of A'p - A'u/u_+ and the mass defect |Σ p_i - 1|."""
    p, _ = solution_to_distribution(design, scaling, solution)
    homogenized = design.matrix(homogenized=True)
    target = homogenized @ np.asarray(data.counts, dtype=float) / data.total
    residual = float(np.max(np.abs(homogenized @ p - target)))
    return residual, float(abs(p.sum() - 1))


# ---------------------------------------------------------------------------
# Cube closed forms
# ---------------------------------------------------------------------------


def cube_mle_closed_form(b: Sequence[Fraction | float]) -> list[np.ndarray]:
    """All 2^d critical points θ_k = (±√(4 - 3b_k²) - b_k) / (2(b_k - 1)) of the cube model.

    *b* is the data mean in the cube's centered coordinates.
    """
    per_axis = []
    for k, bk in enumerate(b):
        bk = float(bk)
        if bk == 1:
            raise DegenerateDataError(f"b_{k + 1} = 1")
        disc = 4 - 3 * bk * bk
        if disc == 0:
            raise DegenerateDataError(f"4 - 3 b_{k + 1}^2 = 0")
        root = np.sqrt(complex(disc))
        per_axis.append([(sign * root - bk) / (2 * (bk - 1)) for sign in (1, -1)])
    return [np.array(choice, dtype=complex) for choice in itertools.product(*per_axis)]


def _ml1_factors(params: Sequence[tuple[complex, complex]]) -> list[dict[int, complex]]:
    factors = []
    for k, (c0, c1) in enumerate(params):
        if c0 == 0:
            raise ZeroParameterError(f"c_{k + 1},0")
        if c1 == 0:
            raise ZeroParameterError(f"c_{k + 1},1")
        factors.append({-1: c0 * c0 / (4 * c1), 0: complex(c0), 1: complex(c1)})
    return factors


def cube_ml1_scaling(params: Sequence[tuple[complex, complex]]) -> Scaling:
    """Product scaling c_i = Π_k c_{k, a_ki} with c_{k,-1} = c_{k,0}² / (4 c_{k,1}).

    Weights follow the lex order of the lattice points of [-1, 1]^d.
    """
    factors = _ml1_factors(params)
    weights = [
        math.prod((factors[k][a] for k, a in enumerate(point)), start=1 + 0j)
        for point in itertools.product((-1, 0, 1), repeat=len(params))
    ]
    return Scaling(tuple(weights))


def cube_ml1_mle(
    b: Sequence[Fraction | float], params: Sequence[tuple[complex, complex]]
) -> np.ndarray:
    """The unique critical point θ_k = (b_k + 1) c_{k,0} / (2 c_{k,1} (1 - b_k))."""
    _ml1_factors(params)
    theta = []
    for k, (bk, (c0, c1)) in enumerate(zip(b, params)):
        if bk == 1:
            raise DegenerateDataError(f"b_{k + 1} = 1")
        theta.append((float(bk) + 1) * c0 / (2 * c1 * (1 - float(bk))))
    return np.array(theta, dtype=complex)

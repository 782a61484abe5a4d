"""Custom exceptions for reflexive-mldeg."""

from __future__ import annotations

from collections.abc import Iterable


class MLDegreeError(Exception):
    """Base exception for all reflexive-mldeg errors."""


class NotFullDimensionalError(MLDegreeError):
    """Raised when a point set does not span its ambient space affinely."""

    def __init__(self, dim: int, rank: int) -> None:
        self.dim = dim
        self.rank = rank
        super().__init__(f"Points span an affine space of dimension {rank}, expected {dim}")


class NotReflexiveError(MLDegreeError):
    """Raised when an operation needs a reflexive polytope."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Polytope '{name}' is not reflexive")


class DimensionOutOfRangeError(MLDegreeError):
    """Raised when a family is asked for a dimension it does not support."""

    def __init__(self, family: str, d: int, lo: int, hi: int) -> None:
        self.family = family
        self.d = d
        self.lo = lo
        self.hi = hi
        super().__init__(f"{family} is defined for {lo} <= d <= {hi}, got d={d}")


class UnknownNameError(MLDegreeError):
    """Raised for an unknown builtin, polygon, suite or discriminant name."""

    def __init__(self, kind: str, name: str, available: Iterable[str]) -> None:
        self.kind = kind
        self.name = name
        self.available = sorted(available)
        super().__init__(
            f"Unknown {kind} '{name}'. Available: {', '.join(self.available)}"
        )


class LatticeIndexNotOneError(MLDegreeError):
    """Raised when the lattice points generate a proper sublattice."""

    def __init__(self, index: int) -> None:
        self.index = index
        super().__init__(
            f"Lattice points generate a sublattice of index {index}; "
            "solution counts would not equal the model degree"
        )


class ZeroSampleSizeError(MLDegreeError):
    """Raised when a data vector has total count zero."""

    def __init__(self) -> None:
        super().__init__("Data vector has sample size u_+ = 0")


class DegenerateDataError(MLDegreeError):
    """Raised when a closed form is evaluated at non-generic data."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Degenerate data: {reason}")


class ZeroParameterError(MLDegreeError):
    """Raised when a scaling parameter that must be nonzero is zero."""

    def __init__(self, name: str) -> None:
        self.name = name
        super().__init__(f"Scaling parameter {name} must be nonzero")


class TooManyPathsError(MLDegreeError):
    """Raised when the Bezout bound of a system exceeds the path cap."""

    def __init__(self, bezout: int, cap: int) -> None:
        self.bezout = bezout
        self.cap = cap
        super().__init__(f"Bezout bound {bezout} exceeds the path cap {cap} (use --force)")


class NoConvergenceError(MLDegreeError):
    """Raised by strict Newton refinement when the iteration does not converge."""

    def __init__(self, residual: float, iterations: int) -> None:
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"Newton refinement did not converge after {iterations} iterations "
            f"(residual {residual:.3e})"
        )


class MalformedBlockError(MLDegreeError):
    """Raised when an input file contains a block that cannot be parsed."""

    def __init__(self, path: str, line: int, reason: str) -> None:
        self.path = path
        self.line = line
        self.reason = reason
        super().__init__(f"{path}:{line}: {reason}")


class DimensionMismatchError(MLDegreeError):
    """Raised when vector or matrix sizes disagree."""

    def __init__(self, expected: int, got: int, where: str) -> None:
        self.expected = expected
        self.got = got
        self.where = where
        super().__init__(f"{where}: expected {expected} entries, got {got}")


class SuiteError(MLDegreeError):
    """Raised when a verification suite fails to execute, as opposed to reporting a FAIL row."""

    def __init__(self, suite_name: str, reason: str) -> None:
        self.suite_name = suite_name
        self.reason = reason
        super().__init__(f"Suite '{suite_name}' failed to execute: {reason}")


class ConfigError(MLDegreeError):
    """Raised for invalid CLI or tracker configuration."""

    def __init__(self, message: str) -> None:
        super().__init__(f"Configuration error: {message}")


class InvalidGraphError(MLDegreeError):
    """Raised when a graph has loops, repeated edges or out-of-range labels."""

    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Invalid graph: {reason}")

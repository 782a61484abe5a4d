"""Total-degree homotopy continuation for square polynomial systems.

All paths of a batch are tracked together: evaluation, Jacobians and linear
solves are vectorized over the path axis with numpy, and every path keeps its
own step size.
"""

from __future__ import annotations

import functools
import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from reflexive_mldeg.exceptions import (
    ConfigError,
    DegenerateDataError,
    NoConvergenceError,
    TooManyPathsError,
)
from reflexive_mldeg.score import PolynomialSystem
from reflexive_mldeg.types import SolutionStatus, TrackedSolution, TrackerConfig

log = logging.getLogger("reflexive_mldeg")

_BATCH_SIZE = 4096
_MAX_LOOPS = 20_000
_GROW_AFTER = 3
_GROW_FACTOR = 1.5
_LINEAR_WINDOW = 3
_LINEAR_RATIO = (0.2, 0.95)

# path states inside the tracker
_ACTIVE, _FINISHED, _DIVERGED, _STALLED = 0, 1, 2, 3


def default_tracker_config(**overrides: object) -> TrackerConfig:
    """Tracker defaults with *overrides* applied and validated."""
    config = TrackerConfig(
        initial_step=0.02,
        min_step=1e-12,
        max_step=0.1,
        newton_tol=1e-10,
        max_newton_iters=12,
        corrector_iters=3,
        corrector_tol=1e-8,
        dedup_tol=1e-6,
        torus_tol=1e-8,
        infinity_threshold=1e8,
        singular_svd_tol=1e-8,
        witness_tol=1e-6,
        endgame_t=0.98,
        path_cap=50_000,
        seeds=3,
        seed=0,
    )
    unknown = set(overrides) - set(config)
    if unknown:
        raise ConfigError(f"unknown tracker option(s): {', '.join(sorted(unknown))}")
    config.update(overrides)  # type: ignore[typeddict-item]
    validate_tracker_config(config)
    return config


def validate_tracker_config(config: TrackerConfig) -> None:
    for key in ("initial_step", "min_step", "max_step", "newton_tol", "corrector_tol",
                "dedup_tol", "torus_tol", "infinity_threshold", "singular_svd_tol",
                "witness_tol"):
        if not config[key] > 0:  # type: ignore[literal-required]
            raise ConfigError(f"{key} must be positive")
    if not config["min_step"] < config["initial_step"] <= config["max_step"]:
        raise ConfigError("step sizes must satisfy min_step < initial_step <= max_step")
    if config["seeds"] < 1 or config["max_newton_iters"] < 1 or config["corrector_iters"] < 1:
        raise ConfigError("seeds and iteration counts must be at least 1")
    if not 0 < config["endgame_t"] < 1:
        raise ConfigError("endgame_t must lie in (0, 1)")


# ---------------------------------------------------------------------------
# Compiled evaluation
# ---------------------------------------------------------------------------


class CompiledSystem:
    """Dense monomial tables for fast batched evaluation of a system and its Jacobian.

    Each equation is divided by its largest coefficient modulus.
    """

    def __init__(self, system: PolynomialSystem) -> None:
        n = system.num_vars
        monomials = sorted({exp for eq in system.equations for exp, _ in eq})
        index = {exp: i for i, exp in enumerate(monomials)}
        coefficients = np.zeros((len(system.equations), len(monomials)), dtype=complex)
        for row, equation in enumerate(system.equations):
            for exp, c in equation:
                coefficients[row, index[exp]] += c
        scale = np.max(np.abs(coefficients), axis=1, initial=0.0)
        scale[scale == 0] = 1.0
        self.num_vars = n
        self.exponents = np.array(monomials, dtype=np.int64).reshape(len(monomials), n)
        self.coefficients = coefficients / scale[:, None]
        self.max_degree = int(self.exponents.max(initial=0))
        self.degrees = np.array(system.degrees, dtype=np.int64)

    def _factors(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Per-variable power tables ``(n, P, D+1)`` and gathered factors ``(n, P, M)``."""
        n, paths = self.num_vars, x.shape[0]
        powers = np.ones((n, paths, self.max_degree + 1), dtype=complex)
        for p in range(1, self.max_degree + 1):
            powers[:, :, p] = powers[:, :, p - 1] * x.T
        factors = np.stack([powers[j][:, self.exponents[:, j]] for j in range(n)])
        return powers, factors

    def evaluate(self, x: np.ndarray) -> np.ndarray:
        _, factors = self._factors(x)
        return np.prod(factors, axis=0) @ self.coefficients.T

    def evaluate_with_jacobian(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Values ``(P, n)`` and Jacobians ``(P, n, n)`` at the rows of *x*."""
        powers, factors = self._factors(x)
        values = np.prod(factors, axis=0) @ self.coefficients.T
        jacobian = np.empty((x.shape[0], self.coefficients.shape[0], self.num_vars), dtype=complex)
        for j in range(self.num_vars):
            e = self.exponents[:, j]
            derivative = e * powers[j][:, np.maximum(e - 1, 0)]
            others = np.prod(np.delete(factors, j, axis=0), axis=0)
            jacobian[:, :, j] = (derivative * others) @ self.coefficients.T
        return values, jacobian

    def conditioned_jacobian(self, x: np.ndarray, jacobian: np.ndarray) -> np.ndarray:
        """Jacobians with columns scaled by max(1, |x_j|) and rows by the equation's magnitude.

        The magnitude of row i is the sum of |c_k| * prod_j max(1, |x_j|)^{a_kj}.
        """
        lifted = np.maximum(np.abs(x), 1.0)
        weights = np.prod(lifted[:, None, :] ** self.exponents[None, :, :], axis=2)
        rows = weights @ np.abs(self.coefficients).T
        rows[rows == 0] = 1.0
        return jacobian * lifted[:, None, :] / rows[:, :, None]


@functools.lru_cache(maxsize=64)
def compile_system(system: PolynomialSystem) -> CompiledSystem:
    return CompiledSystem(system)


def _batched_solve(matrices: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve each ``matrices[i] @ y = rhs[i]``; rows that cannot be solved come back as nan."""
    out = np.full(rhs.shape, np.nan, dtype=complex)
    ok = np.flatnonzero(
        np.all(np.isfinite(matrices), axis=(1, 2)) & np.all(np.isfinite(rhs), axis=1)
    )
    if ok.size == 0:
        return out
    try:
        out[ok] = np.linalg.solve(matrices[ok], rhs[ok][..., None])[..., 0]
    except np.linalg.LinAlgError:
        for i in ok:
            try:
                out[i] = np.linalg.solve(matrices[i], rhs[i])
            except np.linalg.LinAlgError:
                continue
    return out


def _norm(x: np.ndarray) -> np.ndarray:
    return np.max(np.abs(x), axis=-1)


# ---------------------------------------------------------------------------
# Homotopy H(x, t) = (1 - t) γ G(x) + t F(x),  G_i = x_i^{d_i} - r_i
# ---------------------------------------------------------------------------


@dataclass
class _Homotopy:
    target: CompiledSystem
    gamma: complex
    roots: np.ndarray

    def start_points(self) -> np.ndarray:
        """All Π d_i solutions of the start system."""
        degrees = self.target.degrees
        grid = np.indices(tuple(int(d) for d in degrees)).reshape(len(degrees), -1).T
        points = np.empty(grid.shape, dtype=complex)
        for j, d in enumerate(degrees):
            base = self.roots[j] ** (1.0 / d)
            points[:, j] = base * np.exp(2j * np.pi * grid[:, j] / d)
        return points

    def _start(self, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        d = self.target.degrees
        return x**d - self.roots, d * x ** (d - 1)

    def value_and_jacobian(self, x: np.ndarray, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        f, jf = self.target.evaluate_with_jacobian(x)
        g, dg = self._start(x)
        s = (1.0 - t)[:, None] * self.gamma
        h = s * g + t[:, None] * f
        hx = jf * t[:, None, None]
        diag = np.arange(self.target.num_vars)
        hx[:, diag, diag] += s * dg
        return h, hx

    def velocity(self, x: np.ndarray, t: np.ndarray) -> np.ndarray:
        f, jf = self.target.evaluate_with_jacobian(x)
        g, dg = self._start(x)
        s = (1.0 - t)[:, None] * self.gamma
        hx = jf * t[:, None, None]
        diag = np.arange(self.target.num_vars)
        hx[:, diag, diag] += s * dg
        return -_batched_solve(hx, f - self.gamma * g)


def _predict(homotopy: _Homotopy, x: np.ndarray, t: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Classical Runge-Kutta step along dx/dt = -H_x^{-1} H_t."""
    hh = h[:, None]
    k1 = homotopy.velocity(x, t)
    k2 = homotopy.velocity(x + 0.5 * hh * k1, t + 0.5 * h)
    k3 = homotopy.velocity(x + 0.5 * hh * k2, t + 0.5 * h)
    k4 = homotopy.velocity(x + hh * k3, t + h)
    return x + hh / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)


def _correct(
    homotopy: _Homotopy, x: np.ndarray, t: np.ndarray, cfg: TrackerConfig
) -> tuple[np.ndarray, np.ndarray]:
    last = np.full(x.shape[0], np.inf)
    for _ in range(cfg["corrector_iters"]):
        h, hx = homotopy.value_and_jacobian(x, t)
        delta = _batched_solve(hx, h)
        x = x - delta
        last = _norm(delta)
    ok = np.isfinite(last) & np.all(np.isfinite(x), axis=1)
    ok &= last <= cfg["corrector_tol"] * (1.0 + _norm(x))
    return x, ok


def _track_batch(
    homotopy: _Homotopy, x0: np.ndarray, cfg: TrackerConfig
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Track a batch of start points from t = 0 towards t = 1."""
    paths = x0.shape[0]
    x = x0.copy()
    t = np.zeros(paths)
    h = np.full(paths, cfg["initial_step"])
    streak = np.zeros(paths, dtype=np.int64)
    state = np.full(paths, _ACTIVE, dtype=np.int8)

    for _ in range(_MAX_LOOPS):
        active = np.flatnonzero(state == _ACTIVE)
        if active.size == 0:
            break
        ta = t[active]
        lands = h[active] >= 1.0 - ta
        step = np.where(lands, 1.0 - ta, h[active])
        t_next = np.where(lands, 1.0, ta + step)

        predicted = _predict(homotopy, x[active], ta, step)
        corrected, ok = _correct(homotopy, predicted, t_next, cfg)

        accepted, rejected = active[ok], active[~ok]
        x[accepted] = corrected[ok]
        t[accepted] = t_next[ok]
        streak[accepted] += 1
        grow = accepted[streak[accepted] >= _GROW_AFTER]
        h[grow] = np.minimum(h[grow] * _GROW_FACTOR, cfg["max_step"])
        streak[grow] = 0

        h[rejected] /= 2.0
        streak[rejected] = 0
        state[rejected[h[rejected] < cfg["min_step"]]] = _STALLED

        state[accepted[t[accepted] >= 1.0]] = _FINISHED
        diverged = accepted[_norm(x[accepted]) > cfg["infinity_threshold"]]
        state[diverged] = _DIVERGED
    else:
        state[state == _ACTIVE] = _STALLED
    return x, t, state


# ---------------------------------------------------------------------------
# Refinement and classification
# ---------------------------------------------------------------------------


def _classify(
    x: np.ndarray, residual: float, sigma: float, linear: bool, cfg: TrackerConfig
) -> SolutionStatus:
    if not (np.all(np.isfinite(x)) and np.isfinite(residual)):
        return "failed"
    magnitudes = np.abs(x)
    if magnitudes.max(initial=0.0) >= cfg["infinity_threshold"]:
        return "at-infinity"
    if (sigma <= cfg["singular_svd_tol"] or linear) and residual <= cfg["witness_tol"]:
        return "singular"
    if residual > cfg["newton_tol"]:
        return "failed"
    if magnitudes.min(initial=np.inf) <= cfg["torus_tol"]:
        return "off-torus"
    return "nonsingular-torus"


def _linear_contraction(steps: np.ndarray, x: np.ndarray, cfg: TrackerConfig) -> np.ndarray:
    """Points whose last Newton steps shrink by a steady factor instead of quadratically.

    *steps* holds the step norms ``(iterations, P)``. Newton contracts by (m - 1) / m near a
    root of multiplicity m, so three steady ratios with a step still above tolerance
    mean the root is not simple.
    """
    if steps.shape[0] < _LINEAR_WINDOW + 1:
        return np.zeros(x.shape[0], dtype=bool)
    tail = steps[-(_LINEAR_WINDOW + 1):]
    with np.errstate(all="ignore"):
        ratios = tail[1:] / tail[:-1]
    steady = np.all((ratios >= _LINEAR_RATIO[0]) & (ratios <= _LINEAR_RATIO[1]), axis=0)
    unconverged = tail[-1] > cfg["newton_tol"] * (1.0 + _norm(x))
    return steady & unconverged


def _refine_batch(
    compiled: CompiledSystem, points: np.ndarray, cfg: TrackerConfig
) -> list[TrackedSolution]:
    x = np.array(points, dtype=complex, copy=True)
    history: list[np.ndarray] = []
    for _ in range(cfg["max_newton_iters"]):
        values, jacobian = compiled.evaluate_with_jacobian(x)
        delta = _batched_solve(jacobian, values)
        movable = np.all(np.isfinite(delta), axis=1)
        x[movable] -= delta[movable]
        step = np.full(x.shape[0], np.inf)
        step[movable] = _norm(delta[movable])
        history.append(step)
        small = step <= cfg["newton_tol"] * (1.0 + _norm(x))
        if small.all():
            break

    with np.errstate(all="ignore"):
        values, jacobian = compiled.evaluate_with_jacobian(x)
        conditioned = compiled.conditioned_jacobian(x, jacobian)
        linear = _linear_contraction(np.array(history), x, cfg)
    solutions: list[TrackedSolution] = []
    for i in range(x.shape[0]):
        residual = float(_norm(values[i])) if np.all(np.isfinite(values[i])) else np.inf
        sigma = np.inf
        if np.all(np.isfinite(conditioned[i])):
            sigma = float(np.linalg.svd(conditioned[i], compute_uv=False).min())
        solutions.append(
            TrackedSolution(
                point=[complex(z) for z in x[i]],
                residual=residual,
                min_singular_value=sigma,
                status=_classify(x[i], residual, sigma, bool(linear[i]), cfg),
            )
        )
    return solutions


def newton_refine(
    system: PolynomialSystem,
    point: Sequence[complex],
    cfg: TrackerConfig,
    *,
    strict: bool = False,
) -> TrackedSolution:
    """Polish *point* by Newton's method on the row-normalized system.

    ``min_singular_value`` is taken from the Jacobian rescaled by
    :meth:`CompiledSystem.conditioned_jacobian`. A point is singular when it is small
    or when Newton only converges linearly.
    """
    solution = _refine_batch(compile_system(system), np.asarray([point], dtype=complex), cfg)[0]
    if strict and (solution["status"] == "failed" or solution["residual"] > cfg["newton_tol"]):
        raise NoConvergenceError(solution["residual"], cfg["max_newton_iters"])
    return solution


def deduplicate(solutions: Sequence[TrackedSolution], tol: float) -> list[TrackedSolution]:
    """Drop solutions within relative max-norm distance *tol* of an earlier one."""
    kept: list[TrackedSolution] = []
    points: list[np.ndarray] = []
    for sol in solutions:
        x = np.asarray(sol["point"])
        scale = 1.0 + float(_norm(x))
        if any(float(_norm(x - y)) <= tol * scale for y in points):
            continue
        kept.append(sol)
        points.append(x)
    return kept


@dataclass
class SolutionSet:
    """Endpoints of a homotopy solve together with path statistics."""

    solutions: list[TrackedSolution]
    paths: int
    failed_paths: int
    statuses: dict[str, int] = field(default_factory=dict)

    def with_status(self, status: SolutionStatus) -> list[TrackedSolution]:
        return [s for s in self.solutions if s["status"] == status]

    @property
    def failure_rate(self) -> float:
        return self.failed_paths / self.paths if self.paths else 0.0


def solve_total_degree(
    system: PolynomialSystem,
    cfg: TrackerConfig,
    *,
    seed: int | None = None,
    force: bool = False,
) -> SolutionSet:
    """Track all Bezout-many paths from x_i^{d_i} = r_i with a random γ.

    Paths abandoned before ``endgame_t`` count as failures; later endpoints are
    refined and classified.
    """
    if any(d < 1 for d in system.degrees):
        raise DegenerateDataError("every equation needs degree at least 1")
    bezout = system.bezout
    if bezout > cfg["path_cap"] and not force:
        raise TooManyPathsError(bezout, cfg["path_cap"])

    rng = np.random.default_rng(cfg["seed"] if seed is None else seed)
    compiled = compile_system(system)
    homotopy = _Homotopy(
        target=compiled,
        gamma=complex(np.exp(2j * np.pi * rng.random())),
        roots=np.exp(2j * np.pi * rng.random(system.num_vars)),
    )
    starts = homotopy.start_points()
    log.info("tracking %d paths in %d variables", bezout, system.num_vars)

    endpoints: list[np.ndarray] = []
    infinite: list[np.ndarray] = []
    failed = 0
    with np.errstate(all="ignore"):
        for lo in range(0, starts.shape[0], _BATCH_SIZE):
            x, t, state = _track_batch(homotopy, starts[lo:lo + _BATCH_SIZE], cfg)
            late = t >= cfg["endgame_t"]
            endpoints.append(x[(state == _FINISHED) | ((state == _STALLED) & late)])
            infinite.append(x[state == _DIVERGED])
            failed += int(np.count_nonzero((state == _STALLED) & ~late))

    finite_points = np.concatenate(endpoints) if endpoints else np.empty((0, system.num_vars))
    with np.errstate(all="ignore"):
        refined = _refine_batch(compiled, finite_points, cfg) if finite_points.size else []
    refined += [
        TrackedSolution(
            point=[complex(z) for z in x],
            residual=float("inf"),
            min_singular_value=0.0,
            status="at-infinity",
        )
        for batch in infinite
        for x in batch
    ]
    kept = [s for s in refined if s["status"] in ("failed", "at-infinity")]
    kept += deduplicate(
        [s for s in refined if s["status"] not in ("failed", "at-infinity")], cfg["dedup_tol"]
    )
    statuses: dict[str, int] = {}
    for sol in kept:
        statuses[sol["status"]] = statuses.get(sol["status"], 0) + 1
    log.info("endpoint statuses %s, %d failed paths", statuses, failed)
    return SolutionSet(solutions=kept, paths=bezout, failed_paths=failed, statuses=statuses)

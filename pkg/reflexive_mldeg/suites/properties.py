"""Structural properties every run must satisfy."""

from __future__ import annotations

import numpy as np

from reflexive_mldeg.builders import cube, product, reflexive_polygon, resolve_builtin
from reflexive_mldeg.lattice import Polytope, is_reflexive
from reflexive_mldeg.likelihood import critical_points
from reflexive_mldeg.score import DataVector, Scaling, birch_residual, design_matrix
from reflexive_mldeg.suites.base import BaseSuite, row
from reflexive_mldeg.types import SuiteRow

_TOL = 1e-8

ODD_DIMENSIONAL = [
    "cube-1", "cube-3", "cross-1", "cross-3", "Q-3", "R-3", "S-3", "T-3",
    "KS0", "KS132", "KS418", "bg-star-3",
]
BIRCH_CASES = ["P5a", "cube-2", "KS132"]


def _factors() -> list[Polytope]:
    return [cube(1), reflexive_polygon("P3"), reflexive_polygon("P4a")]


class PropertySuite(BaseSuite):
    suite_key = "properties"
    name = "Properties"
    description = (
        "Monotonicity, multiplicativity on products, even degree in odd dimension, "
        "Birch residuals and deterministic reruns."
    )

    def check(self) -> list[SuiteRow]:
        return (
            self._monotone_and_multiplicative()
            + self._even_degrees()
            + self._birch()
            + self._determinism()
        )

    def _monotone_and_multiplicative(self) -> list[SuiteRow]:
        rows = []
        factors = _factors()
        ml = {p.name: self.ml(p) for p in factors}
        for p in factors:
            rows.append(row(f"{p.name} ml <= deg", True, ml[p.name]["drop"] >= 0))
        for i, first in enumerate(factors):
            for second in factors[i + 1:]:
                report = self.ml(product(first, second))
                expected = ml[first.name]["ml_degree"] * ml[second.name]["ml_degree"]
                rows.append(row(f"{first.name} x {second.name}", expected, report["ml_degree"]))
                label = f"{first.name} x {second.name}"
                rows.append(row(f"{label} ml <= deg", True, report["drop"] >= 0))
        return rows

    def _even_degrees(self) -> list[SuiteRow]:
        rows = []
        for name in ODD_DIMENSIONAL:
            polytope = resolve_builtin(name)
            if is_reflexive(polytope):
                rows.append(row(f"{name} degree is even", 0, polytope.normalized_volume % 2))
        return rows

    def _birch(self) -> list[SuiteRow]:
        rows = []
        for name in BIRCH_CASES:
            design = design_matrix(resolve_builtin(name))
            scaling = Scaling.standard(design.n)
            seed = self.tracker["seed"]
            data = DataVector.random(design.n, np.random.default_rng(seed))
            found = critical_points(design, scaling, data, self.tracker, seed=seed)
            worst = 0.0
            for sol in found.solutions:
                residual, mass = birch_residual(design, scaling, np.asarray(sol["point"]), data)
                worst = max(worst, residual, mass)
            rows.append(row(f"{name} Birch residual <= {_TOL}", True, worst <= _TOL))
            rows.append(row(f"{name} positive critical points", 1, found.positive))
        return rows

    def _determinism(self) -> list[SuiteRow]:
        polytope = reflexive_polygon("P5a")
        return [row("P5a rerun is identical", True, self.ml(polytope) == self.ml(polytope))]

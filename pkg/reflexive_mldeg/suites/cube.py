"""The hypercube: degree, ML degree and the closed-form critical points."""

from __future__ import annotations

import numpy as np

from reflexive_mldeg.builders import cube
from reflexive_mldeg.likelihood import critical_points, cube_degree, cube_ml_degree
from reflexive_mldeg.score import (
    DataVector,
    DesignMatrix,
    Scaling,
    cube_mle_closed_form,
    design_matrix,
)
from reflexive_mldeg.suites.base import BaseSuite, pair, row
from reflexive_mldeg.types import SuiteRow, TrackerConfig

_MATCH_TOL = 1e-8


def matched_closed_form(
    design: DesignMatrix, data: DataVector, cfg: TrackerConfig, seed: int
) -> int:
    """How many closed-form θ vectors coincide with a tracked critical point."""
    found = critical_points(design, Scaling.standard(design.n), data, cfg, seed=seed)
    tracked = [np.asarray(sol["point"])[1:] for sol in found.solutions]
    count = 0
    for theta in cube_mle_closed_form(data.mean(design, centered=True)):
        scale = 1.0 + float(np.max(np.abs(theta)))
        if any(float(np.max(np.abs(theta - t))) <= _MATCH_TOL * scale for t in tracked):
            count += 1
    return count


class CubeSuite(BaseSuite):
    suite_key = "cube"
    name = "Hypercube"
    description = "C_d for d = 1, 2, 3: degree, ML degree and closed-form critical points."

    def check(self) -> list[SuiteRow]:
        rows = []
        for d in (1, 2, 3):
            polytope = cube(d)
            report = self.ml(polytope)
            rows.append(row(polytope.name, f"{cube_ml_degree(d)}/{cube_degree(d)}", pair(report)))
            design = design_matrix(polytope)
            for i in range(3):
                seed = self.tracker["seed"] + 100 + i
                data = DataVector.random(design.n, np.random.default_rng(seed))
                rows.append(
                    row(
                        f"{polytope.name} closed form, data seed {seed}",
                        2**d,
                        matched_closed_form(design, data, self.tracker, seed),
                    )
                )
        return rows

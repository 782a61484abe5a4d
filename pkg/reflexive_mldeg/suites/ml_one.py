"""Scalings of the cube with ML degree one."""

from __future__ import annotations

import numpy as np

from reflexive_mldeg.builders import cube
from reflexive_mldeg.likelihood import critical_points
from reflexive_mldeg.score import (
    DataVector,
    birch_residual,
    cube_ml1_mle,
    cube_ml1_scaling,
    design_matrix,
)
from reflexive_mldeg.suites.base import BaseSuite, row
from reflexive_mldeg.types import SuiteRow

#: The 27 weights of the cube C_3 with c_{k,0} = 2 and c_{k,1} = 1.
EXAMPLE_WEIGHTS: tuple[int, ...] = (
    1, 2, 1, 2, 4, 2, 1, 2, 1,
    2, 4, 2, 4, 8, 4, 2, 4, 2,
    1, 2, 1, 2, 4, 2, 1, 2, 1,
)
_PARAMS = [(2, 1), (2, 1), (2, 1)]
_TOL = 1e-8


class MLOneSuite(BaseSuite):
    suite_key = "ml-one"
    name = "ML degree one"
    description = "C_3 with product weights c_{k,-1} = c_{k,0}^2 / (4 c_{k,1}) has ML degree 1."

    def check(self) -> list[SuiteRow]:
        scaling = cube_ml1_scaling(_PARAMS)
        observed = tuple(int(w.real) for w in scaling.weights)
        rows = [row("C_3 product weights", EXAMPLE_WEIGHTS, observed)]

        design = design_matrix(cube(3))
        for i in range(self.tracker["seeds"]):
            seed = self.tracker["seed"] + i
            data = DataVector.random(design.n, np.random.default_rng(seed))
            found = critical_points(design, scaling, data, self.tracker, seed=seed)
            rows.append(row(f"critical points, data seed {seed}", 1, len(found.solutions)))
            if len(found.solutions) != 1:
                continue
            point = np.asarray(found.solutions[0]["point"])
            expected = cube_ml1_mle(data.mean(design, centered=True), _PARAMS)
            gap = float(np.max(np.abs(point[1:] - expected)))
            residual, _ = birch_residual(design, scaling, point, data)
            rows.append(row(f"closed-form MLE, data seed {seed}", True, gap <= _TOL))
            rows.append(row(f"Birch residual, data seed {seed}", True, residual <= _TOL))
        return rows

"""Worked examples where a special scaling lowers the ML degree."""

from __future__ import annotations

from fractions import Fraction

from reflexive_mldeg.builders import cross, resolve_builtin
from reflexive_mldeg.lattice import Polytope
from reflexive_mldeg.score import Scaling, design_matrix
from reflexive_mldeg.suites.base import BaseSuite, pair, row
from reflexive_mldeg.types import SuiteRow, Vector

#: (label, builtin, weights keyed by design exponent, expected ML degree/degree)
SCALED_EXAMPLES: list[tuple[str, str, dict[Vector, complex], str]] = [
    ("KS0 standard", "KS0", {}, "4/4"),
    ("KS0 with c111 = 4", "KS0", {(1, 1, 1): 4}, "3/4"),
    ("KS132 standard", "KS132", {}, "5/6"),
    ("KS132 with c211 = -1/108", "KS132", {(2, 1, 1): complex(Fraction(-1, 108))}, "4/6"),
    (
        "cross-2 with (c11, c21, c12, c01, c10) = (2, 4, 25, 4, 1)",
        "cross-2",
        {(1, 1): 2, (2, 1): 4, (1, 2): 25, (0, 1): 4, (1, 0): 1},
        "3/4",
    ),
]


def _polytope(name: str) -> Polytope:
    return cross(2) if name == "cross-2" else resolve_builtin(name)


class ScaledDropSuite(BaseSuite):
    suite_key = "scaled-drops"
    name = "Scaled drops"
    description = "ML degree of KS0, KS132 and the square cross polytope under special scalings."

    def check(self) -> list[SuiteRow]:
        rows = []
        for label, builtin, weights, expected in SCALED_EXAMPLES:
            polytope = _polytope(builtin)
            scaling = Scaling.from_exponents(design_matrix(polytope), weights)
            rows.append(row(label, expected, pair(self.ml(polytope, scaling))))
        return rows

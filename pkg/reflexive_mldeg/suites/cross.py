"""The cross polytope has no ML degree drop."""

from __future__ import annotations

from reflexive_mldeg.builders import cross
from reflexive_mldeg.suites.base import BaseSuite, pair, row
from reflexive_mldeg.types import SuiteRow


class CrossSuite(BaseSuite):
    suite_key = "cross"
    name = "Cross polytope"
    description = "ML degree = degree = 2^d for the cross polytope, d = 1..4."

    def check(self) -> list[SuiteRow]:
        return [
            row(f"cross-{d}", f"{2**d}/{2**d}", pair(self.ml(cross(d)))) for d in (1, 2, 3, 4)
        ]

"""Iterating construction B: ML degree drops against the binomial formula."""

from __future__ import annotations

from reflexive_mldeg.builders import iterate, reflexive_polygon
from reflexive_mldeg.likelihood import b_iteration_drop
from reflexive_mldeg.suites.base import BaseSuite, pair, row
from reflexive_mldeg.types import SuiteRow

#: (polygon, k, ML degree, degree) for B^k(P).
B_ITERATES: list[tuple[str, int, int, int]] = [
    ("P3", 2, 11, 12),
    ("P5a", 2, 16, 20),
    ("P8a", 2, 24, 32),
]
EXTENDED_ITERATES: list[tuple[str, int]] = [("P6a", 3), ("P6d", 3)]


class BIterationSuite(BaseSuite):
    suite_key = "b-iteration"
    name = "B iteration"
    description = "B^k(P) for polygons with a drop; the drop matches the binomial formula."

    def check(self) -> list[SuiteRow]:
        rows = []
        for base, k, mldeg, deg in B_ITERATES:
            report = self.ml(iterate("B", k, reflexive_polygon(base)))
            rows.append(row(f"B^{k}({base})", f"{mldeg}/{deg}", pair(report)))
            rows.append(
                row(f"B^{k}({base}) drop formula", b_iteration_drop(base, k), report["drop"])
            )
        if self.extended:
            for base, k in EXTENDED_ITERATES:
                report = self.ml(iterate("B", k, reflexive_polygon(base)))
                rows.append(
                    row(f"B^{k}({base}) drop formula", b_iteration_drop(base, k), report["drop"])
                )
        return rows

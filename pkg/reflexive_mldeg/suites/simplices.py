"""Reflexive simplices from the Sylvester families have no ML degree drop."""

from __future__ import annotations

from reflexive_mldeg.builders import resolve_builtin
from reflexive_mldeg.suites.base import BaseSuite, pair, row
from reflexive_mldeg.types import SuiteRow

SIMPLEX_DEGREES: dict[str, int] = {"Q-2": 6, "Q-3": 24, "R-2": 6, "S-2": 8, "T-3": 16}
EXTENDED_DEGREES: dict[str, int] = {"Q-4": 120, "R-3": 42, "S-3": 72, "T-4": 64}


class SimplexSuite(BaseSuite):
    suite_key = "simplices"
    name = "Reflexive simplices"
    description = "Q_d, R_d, S_d and T_d have ML degree equal to degree; --extended adds d + 1."

    def check(self) -> list[SuiteRow]:
        table = dict(SIMPLEX_DEGREES)
        if self.extended:
            table.update(EXTENDED_DEGREES)
        return [
            row(label, f"{deg}/{deg}", pair(self.ml(resolve_builtin(label))))
            for label, deg in table.items()
        ]

"""ML degrees and degrees of the 16 reflexive polygons."""

from __future__ import annotations

from reflexive_mldeg.builders import reflexive_polygon
from reflexive_mldeg.suites.base import BaseSuite, pair, row
from reflexive_mldeg.types import SuiteRow

#: (ML degree, degree) at the standard scaling.
POLYGON_TABLE: dict[str, tuple[int, int]] = {
    "P3": (3, 3),
    "P4a": (4, 4),
    "P4b": (4, 4),
    "P4c": (4, 4),
    "P5a": (3, 5),
    "P5b": (5, 5),
    "P6a": (6, 6),
    "P6b": (6, 6),
    "P6c": (6, 6),
    "P6d": (6, 6),
    "P7a": (7, 7),
    "P7b": (7, 7),
    "P8a": (4, 8),
    "P8b": (8, 8),
    "P8c": (8, 8),
    "P9": (9, 9),
}


class PolygonSuite(BaseSuite):
    suite_key = "polygons"
    name = "Reflexive polygons"
    description = "ML degree and degree of all 16 reflexive polygons at the standard scaling."

    def check(self) -> list[SuiteRow]:
        rows = []
        for label, (mldeg, deg) in POLYGON_TABLE.items():
            report = self.ml(reflexive_polygon(label))
            rows.append(row(label, f"{mldeg}/{deg}", pair(report)))
        return rows

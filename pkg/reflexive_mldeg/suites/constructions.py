"""Constructions A, B and C applied to reflexive polygons."""

from __future__ import annotations

from reflexive_mldeg.builders import CONSTRUCTIONS, construction_degree, reflexive_polygon
from reflexive_mldeg.likelihood import predicted_ml_degree_A
from reflexive_mldeg.suites.base import BaseSuite, pair, row
from reflexive_mldeg.suites.polygons import POLYGON_TABLE
from reflexive_mldeg.types import Construction, SuiteRow

#: (construction, polygon, ML degree, degree)
CONSTRUCTION_TABLE: list[tuple[Construction, str, int, int]] = [
    ("A", "P3", 6, 18),
    ("B", "P3", 6, 6),
    ("C", "P3", 8, 12),
    ("B", "P5a", 10, 10),
    ("B", "P6a", 10, 12),
    ("B", "P6d", 11, 12),
    ("C", "P5a", 11, 20),
    ("A", "P8a", 8, 48),
]
EXTENDED_TABLE: list[tuple[Construction, str, int, int]] = [
    ("A", "P5a", 6, 30),
    ("C", "P8a", 16, 32),
    ("A", "P4a", 8, 24),
    ("C", "P4a", 12, 16),
]


class ConstructionSuite(BaseSuite):
    suite_key = "constructions"
    name = "Constructions"
    description = "ML degree and degree of A(P), B(P), C(P) and the closed degree formulas."

    def check(self) -> list[SuiteRow]:
        table = CONSTRUCTION_TABLE + (EXTENDED_TABLE if self.extended else [])
        rows = []
        for kind, base, mldeg, deg in table:
            polygon = reflexive_polygon(base)
            built = CONSTRUCTIONS[kind](polygon)
            label = f"{kind}({base})"
            rows.append(
                row(
                    f"{label} degree formula",
                    construction_degree(kind, 2, POLYGON_TABLE[base][1], 1),
                    built.normalized_volume,
                )
            )
            if kind == "A":
                rows.append(
                    row(
                        f"{label} doubles the ML degree",
                        mldeg,
                        predicted_ml_degree_A(POLYGON_TABLE[base][0], 1),
                    )
                )
            rows.append(row(label, f"{mldeg}/{deg}", pair(self.ml(built))))
        return rows

"""Symmetric edge polytopes and B_G polytopes of small graphs."""

from __future__ import annotations

from reflexive_mldeg.builders import bg_polytope, cycle_graph, resolve_builtin
from reflexive_mldeg.suites.base import BaseSuite, pair, row
from reflexive_mldeg.types import SuiteRow


class GraphSuite(BaseSuite):
    suite_key = "graphs"
    name = "Graph polytopes"
    description = "sym-K3 is P6a; B_G of the star K_{1,d-1} has degree d 2^d and ML degree 2^d."

    def check(self) -> list[SuiteRow]:
        rows = [row("sym-K3", "6/6", pair(self.ml(resolve_builtin("sym-K3"))))]
        for d in (2, 3):
            report = self.ml(resolve_builtin(f"bg-star-{d}"))
            rows.append(row(f"bg-star-{d}", f"{2**d}/{d * 2**d}", pair(report)))
        _, bipartite = bg_polytope(cycle_graph(3))
        rows.append(row("odd cycle is not bipartite", False, bipartite))
        return rows

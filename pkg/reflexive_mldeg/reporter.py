"""Rich-based terminal reporter and JSON exporter for reflexive-mldeg."""

from __future__ import annotations

import json
import sys
from collections.abc import Mapping
from typing import TextIO

from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from reflexive_mldeg.types import (
    CatalogRecord,
    DropVerdict,
    MLReport,
    PolytopeInfo,
    SuiteResult,
    VerifyReport,
)

console = Console()
err_console = Console(stderr=True)

_PASS = "[bold green]✔ PASS[/bold green]"
_FAIL = "[bold red]✘ FAIL[/bold red]"


def render_json(payload: Mapping[str, object], *, output: TextIO | None = None) -> None:
    """Dump any report as pretty-printed JSON."""
    stream = output or sys.stdout
    json.dump(payload, stream, indent=2, default=str)
    stream.write("\n")


def render_error(message: str) -> None:
    """Print a formatted error panel to stderr."""
    err_console.print(
        Panel(
            Text(message, style="bold red"),
            title="[bold red]Error[/bold red]",
            border_style="red",
            expand=False,
        )
    )


# ---------------------------------------------------------------------------
# Single-polytope commands
# ---------------------------------------------------------------------------


def _key_value_table(rows: list[tuple[str, str]]) -> Table:
    table = Table(box=box.ROUNDED, show_header=False)
    table.add_column("Field", style="bold cyan")
    table.add_column("Value")
    for key, value in rows:
        table.add_row(key, value)
    return table


def render_info(info: PolytopeInfo, *, output: TextIO | None = None) -> None:
    out = Console(file=output)
    rows = [
        ("Dimension", str(info["dim"])),
        ("Vertices", str(len(info["vertices"]))),
        ("Lattice points", str(info["n_lattice_points"])),
        ("f-vector", " ".join(str(x) for x in info["f_vector"])),
        ("Reflexive", "yes" if info["reflexive"] else "no"),
        ("Degree", str(info["degree"])),
        ("Lattice index", str(info["lattice_index"])),
    ]
    out.print(
        Panel(
            _key_value_table(rows),
            title=f"[bold white]{info['name']}[/bold white]",
            border_style="cyan",
            expand=False,
        )
    )


def render_ml_report(name: str, report: MLReport, *, output: TextIO | None = None) -> None:
    out = Console(file=output)
    rows = [
        ("Degree", str(report["degree"])),
        ("ML degree", str(report["ml_degree"])),
        ("Drop", str(report["drop"])),
        ("Bezout paths", str(report["bezout"])),
        ("Seeds", ", ".join(str(s) for s in report["seeds"])),
        ("Solutions per seed", ", ".join(str(c) for c in report["per_seed_counts"])),
        ("Positive per seed", ", ".join(str(c) for c in report["positive_counts"])),
        ("Failed paths", ", ".join(str(c) for c in report["failed_paths"])),
    ]
    if report["drop_witness"]:
        rows.append(("Drop witness", report["drop_witness"]))
    consistent = report["consistent"]
    verdict = (
        "[bold green]CONSISTENT[/bold green]"
        if consistent
        else "[bold yellow]INCONSISTENT[/bold yellow]"
    )
    out.print(
        Panel(
            _key_value_table(rows),
            title=f"[bold white]{name}[/bold white]  {verdict}",
            border_style="green" if consistent else "yellow",
            expand=False,
        )
    )


def render_drop(verdicts: list[DropVerdict], *, output: TextIO | None = None) -> None:
    out = Console(file=output)
    table = Table(box=box.ROUNDED, show_header=True, header_style="bold white")
    table.add_column("Polytope", style="bold cyan")
    table.add_column("E_A(c) = 0", justify="center")
    table.add_column("Witness face")
    table.add_column("ML degree", justify="right")
    table.add_column("Degree", justify="right")
    for verdict in verdicts:
        table.add_row(
            verdict["name"],
            "[red]yes[/red]" if verdict["vanishes"] else "[green]no[/green]",
            verdict["witness"] or "[dim]-[/dim]",
            "-" if verdict["ml_degree"] is None else str(verdict["ml_degree"]),
            str(verdict["degree"]),
        )
    out.print(table)


def render_catalog(records: list[CatalogRecord], *, output: TextIO | None = None) -> None:
    out = Console(file=output)
    table = Table(box=box.SIMPLE_HEAVY, show_header=True, header_style="bold white")
    for column in ("id", "dim", "points", "f-vector", "deg", "mldeg", "drop", "refl", "ok"):
        table.add_column(column)
    for r in records:
        table.add_row(
            r["id"],
            str(r["dim"]),
            str(r["n_lattice_points"]),
            " ".join(str(x) for x in r["f_vector"]),
            str(r["degree"]),
            str(r["ml_degree"]),
            str(r["drop"]),
            "yes" if r["reflexive"] else "no",
            "[green]✔[/green]" if r["consistent"] else "[yellow]?[/yellow]",
        )
    out.print(table)


# ---------------------------------------------------------------------------
# Verification report
# ---------------------------------------------------------------------------


def render_report(report: VerifyReport, *, output: TextIO | None = None) -> None:
    """Render a verification report with one PASS/FAIL line per row."""
    out = Console(file=output)
    out.print(
        Panel(
            f"[dim]Timestamp: {report['timestamp']}[/dim]",
            title="[bold white]reflexive-mldeg[/bold white] [dim]verification[/dim]",
            border_style="cyan",
            expand=True,
        )
    )
    out.print()
    for result in report["results"].values():
        _render_suite_panel(out, result)
    _render_summary(out, report)


def _render_suite_panel(out: Console, result: SuiteResult) -> None:
    ok = result["failed"] == 0
    table = Table(box=box.SIMPLE, show_header=True, header_style="bold white")
    table.add_column("Row", style="bold")
    table.add_column("Expected", justify="right")
    table.add_column("Observed", justify="right")
    table.add_column("Status", justify="center")
    for suite_row in result["rows"]:
        table.add_row(
            suite_row["label"],
            suite_row["expected"],
            suite_row["observed"],
            _PASS if suite_row["passed"] else _FAIL,
        )
    title = f"[bold]{result['name']}[/bold]  {result['passed']}/{len(result['rows'])}"
    out.print(Panel(table, title=title, border_style="green" if ok else "red", expand=True))


def _render_summary(out: Console, report: VerifyReport) -> None:
    summary = report["summary"]
    table = Table(box=box.ROUNDED, show_header=True, header_style="bold white")
    table.add_column("Metric", style="bold cyan", justify="left")
    table.add_column("Value", justify="right")
    table.add_row("Total rows", str(summary["total"]))
    table.add_row("[green]Passed[/green]", f"[green]{summary['passed']}[/green]")
    table.add_row("[red]Failed[/red]", f"[red]{summary['failed']}[/red]")

    verdict = _PASS if summary["failed"] == 0 else _FAIL
    out.print()
    out.print(
        Panel(
            table,
            title=f"[bold white]Summary[/bold white]  {verdict}",
            border_style="green" if summary["failed"] == 0 else "red",
            expand=False,
        )
    )

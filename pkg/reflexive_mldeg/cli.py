"""reflexive-mldeg CLI entry point, powered by Typer."""

from __future__ import annotations

import asyncio
import logging
import pathlib
from collections.abc import Callable
from typing import Annotated, TextIO

import typer
from rich import box
from rich.logging import RichHandler
from rich.table import Table

from reflexive_mldeg import __version__
from reflexive_mldeg.builders import (
    BUILTIN_PATTERNS,
    bg_polytope,
    iterate,
    resolve_builtin,
    sym_edge_polytope,
)
from reflexive_mldeg.catalog import run_catalog
from reflexive_mldeg.discriminant import principal_A_determinant_vanishes
from reflexive_mldeg.exceptions import ConfigError, MLDegreeError
from reflexive_mldeg.formats import (
    format_polytope,
    parse_data,
    parse_graph,
    parse_ks,
    parse_scaling,
)
from reflexive_mldeg.lattice import Polytope, f_vector, is_reflexive, lattice_index
from reflexive_mldeg.likelihood import ml_degree
from reflexive_mldeg.reporter import (
    console,
    err_console,
    render_catalog,
    render_drop,
    render_error,
    render_info,
    render_json,
    render_ml_report,
    render_report,
)
from reflexive_mldeg.runner import run_verify
from reflexive_mldeg.score import design_matrix
from reflexive_mldeg.solver import default_tracker_config
from reflexive_mldeg.suites import ALL_SUITES
from reflexive_mldeg.types import (
    SUITE_GROUPS,
    CatalogConfig,
    DropVerdict,
    PolytopeInfo,
    TrackerConfig,
    VerifyConfig,
)

app = typer.Typer(
    name="reflexive-mldeg",
    help="Degrees and ML degrees of log-linear models from lattice polytopes.",
    add_completion=False,
    rich_markup_mode="rich",
)

log = logging.getLogger("reflexive_mldeg")

_SUITE_NAMES = ", ".join(ALL_SUITES.keys())
_GROUP_NAMES = ", ".join(k for k in SUITE_GROUPS if k != "all")
_CONSTRUCTIONS = ("A", "B", "C")
_GRAPH_KINDS = ("sym", "bg")

# ---------------------------------------------------------------------------
# Shared options
# ---------------------------------------------------------------------------

BuiltinOpt = Annotated[
    str | None,
    typer.Option("--builtin", "-b", help="Builtin polytope name (see list-builtins)."),
]
FileOpt = Annotated[
    pathlib.Path | None,
    typer.Option("--file", help="Vertex file in Kreuzer-Skarke format.", show_default=False),
]
IndexOpt = Annotated[
    int, typer.Option("--index", "-i", help="Block of --file to use, counted from 0.", min=0)
]
TransposeOpt = Annotated[
    bool | None,
    typer.Option(
        "--transpose/--no-transpose",
        help="Read matrix rows as points (or force columns). Default: guess from the shape.",
        show_default=False,
    ),
]
GraphOpt = Annotated[
    pathlib.Path | None,
    typer.Option(
        "--graph", help="Edge list 'u v' per line, 1-indexed; see --kind.", show_default=False
    ),
]
KindOpt = Annotated[
    str,
    typer.Option("--kind", help="Polytope of --graph: 'sym' (symmetric edge) or 'bg' (B_G)."),
]
ConstructOpt = Annotated[
    str | None,
    typer.Option("--construct", help="Apply construction A, B or C to the polytope."),
]
IterateOpt = Annotated[
    int, typer.Option("--iterate", "-k", help="How many times to apply --construct.", min=0)
]
SeedsOpt = Annotated[
    int, typer.Option("--seeds", help="Number of random data vectors per ML degree.", min=1)
]
SeedOpt = Annotated[int, typer.Option("--seed", help="Base random seed.")]
FormatOpt = Annotated[
    str, typer.Option("--format", "-f", help="Output format: 'rich' (default) or 'json'.")
]
OutputOpt = Annotated[
    str | None,
    typer.Option("--output", "-o", help="Save the result to a file.", show_default=False),
]
ForceOpt = Annotated[
    bool,
    typer.Option("--force", help="Track systems whose Bezout bound exceeds the path cap."),
]


def _version_callback(value: bool) -> None:
    if value:
        console.print(f"[bold cyan]reflexive-mldeg[/bold cyan] v{__version__}")
        raise typer.Exit()


def _configure_logging(verbose: bool) -> None:
    log.handlers.clear()
    log.addHandler(RichHandler(console=err_console, show_path=False))
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


@app.callback()
def main(
    version: Annotated[
        bool | None,
        typer.Option(
            "--version", "-V",
            help="Show version and exit.",
            callback=_version_callback,
            is_eager=True,
        ),
    ] = None,
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Log path counts and progress to stderr."),
    ] = False,
) -> None:
    """reflexive-mldeg: ML degrees of reflexive polytopes by homotopy continuation."""
    _configure_logging(verbose)


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------


def _fail(message: str, code: int = 2) -> typer.Exit:
    render_error(message)
    return typer.Exit(code=code)


def _check_format(output_format: str, allowed: tuple[str, ...] = ("rich", "json")) -> None:
    if output_format not in allowed:
        choices = ", ".join(f"'{a}'" for a in allowed)
        raise _fail(f"Invalid format '{output_format}'. Choose {choices}.")


def _load_polytope(
    builtin: str | None,
    file: pathlib.Path | None,
    index: int,
    transpose: bool | None,
    construct: str | None,
    k: int,
    graph: pathlib.Path | None = None,
    kind: str = "sym",
) -> Polytope:
    given = [source for source in (builtin, file, graph) if source is not None]
    if len(given) != 1:
        raise ConfigError("give exactly one of --builtin, --file and --graph")
    if builtin is not None:
        polytope = resolve_builtin(builtin)
    elif graph is not None:
        polytope = _graph_polytope(graph, kind)
    else:
        assert file is not None
        polytopes = parse_ks(file, transpose)
        if index >= len(polytopes):
            raise ConfigError(f"--index {index} out of range, {file} has {len(polytopes)} blocks")
        polytope = polytopes[index]
    if construct is None:
        return polytope
    if construct not in _CONSTRUCTIONS:
        raise ConfigError(f"unknown construction '{construct}', choose A, B or C")
    return iterate(construct, k, polytope)  # type: ignore[arg-type]


def _graph_polytope(path: pathlib.Path, kind: str) -> Polytope:
    if kind not in _GRAPH_KINDS:
        raise ConfigError(f"unknown graph polytope '{kind}', choose sym or bg")
    graph = parse_graph(path)
    if kind == "sym":
        return sym_edge_polytope(graph, name=f"sym({path.stem})")
    polytope, _ = bg_polytope(graph, name=f"bg({path.stem})")
    return polytope


def _tracker(seeds: int, seed: int) -> TrackerConfig:
    return default_tracker_config(seeds=seeds, seed=seed)


def _emit(
    payload: object,
    rich_render: Callable[[TextIO | None], None],
    output_format: str,
    output_file: str | None,
) -> None:
    if output_file:
        path = pathlib.Path(output_file)
        with path.open("w", encoding="utf-8") as fh:
            if output_format == "json":
                render_json(payload, output=fh)  # type: ignore[arg-type]
            else:
                rich_render(fh)
        console.print(f"[dim]Saved to[/dim] [bold cyan]{path.resolve()}[/bold cyan]")
    elif output_format == "json":
        render_json(payload)  # type: ignore[arg-type]
    else:
        rich_render(None)


def polytope_info(polytope: Polytope) -> PolytopeInfo:
    return PolytopeInfo(
        name=polytope.name,
        dim=polytope.dim,
        vertices=[list(v) for v in polytope.vertices],
        n_lattice_points=len(polytope.lattice_points),
        f_vector=f_vector(polytope),
        reflexive=is_reflexive(polytope),
        degree=polytope.normalized_volume,
        lattice_index=lattice_index(polytope.lattice_points),
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@app.command()
def info(
    builtin: BuiltinOpt = None,
    file: FileOpt = None,
    graph: GraphOpt = None,
    kind: KindOpt = "sym",
    index: IndexOpt = 0,
    transpose: TransposeOpt = None,
    construct: ConstructOpt = None,
    k: IterateOpt = 1,
    output_format: FormatOpt = "rich",
    output_file: OutputOpt = None,
) -> None:
    """Print dimension, f-vector, lattice points, reflexivity and degree.

    \b
    Examples:
      reflexive-mldeg info --builtin P5a
      reflexive-mldeg info --builtin P3 --construct B -k 2
      reflexive-mldeg info --graph k4.txt --kind bg
    """
    _check_format(output_format)
    try:
        polytope = _load_polytope(builtin, file, index, transpose, construct, k, graph, kind)
        summary = polytope_info(polytope)
    except MLDegreeError as exc:
        raise _fail(str(exc)) from exc
    _emit(summary, lambda out: render_info(summary, output=out), output_format, output_file)


@app.command()
def mldeg(
    builtin: BuiltinOpt = None,
    file: FileOpt = None,
    graph: GraphOpt = None,
    kind: KindOpt = "sym",
    index: IndexOpt = 0,
    transpose: TransposeOpt = None,
    construct: ConstructOpt = None,
    k: IterateOpt = 1,
    scaling_file: Annotated[
        pathlib.Path | None,
        typer.Option("--scaling", help="One weight 're [im]' per design column."),
    ] = None,
    data_file: Annotated[
        pathlib.Path | None,
        typer.Option("--data", help="Fixed data vector instead of random draws."),
    ] = None,
    seeds: SeedsOpt = 3,
    seed: SeedOpt = 0,
    witness: Annotated[
        bool,
        typer.Option("--witness", help="On a drop, report the face where E_A vanishes."),
    ] = False,
    force: ForceOpt = False,
    output_format: FormatOpt = "rich",
    output_file: OutputOpt = None,
) -> None:
    """Compute the ML degree by homotopy continuation.

    Exits 1 when the per-seed solution counts disagree.

    \b
    Examples:
      reflexive-mldeg mldeg --builtin cross-4
      reflexive-mldeg mldeg --builtin KS132 --scaling c.txt --witness
    """
    _check_format(output_format)
    try:
        polytope = _load_polytope(builtin, file, index, transpose, construct, k, graph, kind)
        design = design_matrix(polytope)
        scaling = parse_scaling(scaling_file, design) if scaling_file else None
        data = parse_data(data_file, design) if data_file else None
        report = ml_degree(
            design,
            scaling,
            _tracker(seeds, seed),
            data=data,
            find_witness=witness,
            force=force,
        )
    except MLDegreeError as exc:
        raise _fail(str(exc)) from exc
    except KeyboardInterrupt:
        console.print("\n[yellow]Interrupted by user.[/yellow]")
        raise typer.Exit(code=130)

    _emit(
        report,
        lambda out: render_ml_report(polytope.name, report, output=out),
        output_format,
        output_file,
    )
    raise typer.Exit(code=0 if report["consistent"] else 1)


@app.command("drop-check")
def drop_check(
    builtin: BuiltinOpt = None,
    file: FileOpt = None,
    graph: GraphOpt = None,
    kind: KindOpt = "sym",
    index: IndexOpt = 0,
    transpose: TransposeOpt = None,
    construct: ConstructOpt = None,
    k: IterateOpt = 1,
    scaling_file: Annotated[
        pathlib.Path | None,
        typer.Option("--scaling", help="Weights for the base polytope only."),
    ] = None,
    seeds: SeedsOpt = 3,
    seed: SeedOpt = 0,
    skip_ml: Annotated[
        bool, typer.Option("--no-ml", help="Only evaluate E_A, skip the ML degree.")
    ] = False,
    force: ForceOpt = False,
    output_format: FormatOpt = "rich",
    output_file: OutputOpt = None,
) -> None:
    """Check whether the principal A-determinant vanishes, face by face.

    With --construct X the check runs on every iterate X^0 ... X^k.

    \b
    Examples:
      reflexive-mldeg drop-check --builtin P8a
      reflexive-mldeg drop-check --builtin P6d --construct B
    """
    _check_format(output_format)
    try:
        base = _load_polytope(builtin, file, index, transpose, None, 0, graph, kind)
        if construct is not None and construct not in _CONSTRUCTIONS:
            raise ConfigError(f"unknown construction '{construct}', choose A, B or C")
        tracker = _tracker(seeds, seed)
        steps = range(k + 1) if construct else range(1)
        verdicts: list[DropVerdict] = []
        for step in steps:
            polytope = base
            if construct:
                polytope = iterate(construct, step, base)  # type: ignore[arg-type]
            design = design_matrix(polytope)
            scaling = parse_scaling(scaling_file, design) if scaling_file and step == 0 else None
            vanishes, face = principal_A_determinant_vanishes(design, scaling, tracker)
            mldeg_value = None
            if not skip_ml:
                mldeg_value = ml_degree(design, scaling, tracker, force=force)["ml_degree"]
            verdicts.append(
                DropVerdict(
                    name=f"{construct}^{step}({base.name})" if construct else base.name,
                    construction=construct or "",
                    vanishes=vanishes,
                    witness=face.label if face is not None else None,
                    ml_degree=mldeg_value,
                    degree=polytope.normalized_volume,
                )
            )
    except MLDegreeError as exc:
        raise _fail(str(exc)) from exc

    _emit(
        {"verdicts": verdicts},
        lambda out: render_drop(verdicts, output=out),
        output_format,
        output_file,
    )


@app.command()
def construct(
    builtin: BuiltinOpt = None,
    file: FileOpt = None,
    index: IndexOpt = 0,
    transpose: TransposeOpt = None,
    kind: Annotated[str, typer.Option("--construct", help="Construction A, B or C.")] = "A",
    k: IterateOpt = 1,
    output_file: OutputOpt = None,
) -> None:
    """Write the vertices of a constructed polytope as a 'd n' block.

    \b
    Examples:
      reflexive-mldeg construct --builtin P3 --construct C -o c_p3.txt
    """
    try:
        polytope = _load_polytope(builtin, file, index, transpose, kind, k)
    except MLDegreeError as exc:
        raise _fail(str(exc)) from exc
    text = format_polytope(polytope)
    if output_file:
        path = pathlib.Path(output_file)
        path.write_text(text, encoding="utf-8")
        console.print(f"[dim]Saved to[/dim] [bold cyan]{path.resolve()}[/bold cyan]")
    else:
        typer.echo(text, nl=False)


@app.command()
def catalog(
    file: Annotated[pathlib.Path, typer.Argument(help="Vertex file in Kreuzer-Skarke format.")],
    output_file: Annotated[
        pathlib.Path,
        typer.Option("--output", "-o", help="JSON-lines result file; existing ids are skipped."),
    ],
    limit: Annotated[
        int | None, typer.Option("--limit", "-n", help="Only the first N blocks.", min=1)
    ] = None,
    transpose: TransposeOpt = None,
    seeds: SeedsOpt = 3,
    seed: SeedOpt = 0,
    concurrency: Annotated[
        int,
        typer.Option("--concurrency", "-c", help="Worker threads.", min=1, max=64),
    ] = 2,
    timings: Annotated[
        bool,
        typer.Option("--timings/--no-timings", help="Record runtime_ms for every entry."),
    ] = True,
    output_format: Annotated[
        str,
        typer.Option("--format", "-f", help="'rich', 'json' or 'csv' (CSV next to the output)."),
    ] = "rich",
) -> None:
    """ML degrees for every polytope of a vertex file, resumable.

    \b
    Examples:
      reflexive-mldeg catalog ks3d.txt -o ks3d.jsonl --limit 100
    """
    _check_format(output_format, ("rich", "json", "csv"))
    try:
        config = CatalogConfig(
            input_path=str(file),
            output_path=str(output_file),
            output_format=output_format,  # type: ignore[typeddict-item]
            limit=limit,
            concurrency=concurrency,
            transpose=transpose,
            timings=timings,
            tracker=_tracker(seeds, seed),
        )
        outcome = asyncio.run(run_catalog(config))
    except MLDegreeError as exc:
        raise _fail(str(exc)) from exc
    except KeyboardInterrupt:
        console.print("\n[yellow]Catalog interrupted; rerun the command to resume.[/yellow]")
        raise typer.Exit(code=130)

    if output_format == "json":
        render_json({"records": outcome.records, "skipped": outcome.skipped})
    else:
        render_catalog(outcome.records)
        if outcome.resumed:
            console.print(f"[dim]{outcome.resumed} entries taken from the previous run[/dim]")
        for record_id, reason in outcome.skipped:
            console.print(f"[yellow]skipped[/yellow] {record_id}: {reason}")
    raise typer.Exit(code=1 if outcome.skipped else 0)


@app.command("verify-paper")
def verify_paper(
    suites: Annotated[
        str | None,
        typer.Option(
            "--suite", "-s",
            help=(
                f"Comma-separated suites or groups. Suites: {_SUITE_NAMES}. "
                f"Groups: {_GROUP_NAMES}. Omit to run everything."
            ),
        ),
    ] = None,
    extended: Annotated[
        bool,
        typer.Option("--extended", help="Include the long-running instances."),
    ] = False,
    seeds: SeedsOpt = 3,
    seed: SeedOpt = 0,
    concurrency: Annotated[
        int,
        typer.Option("--concurrency", "-c", help="Suites running in parallel.", min=1, max=16),
    ] = 2,
    output_format: FormatOpt = "rich",
    output_file: OutputOpt = None,
) -> None:
    """Reproduce the published degree tables; one PASS/FAIL line per row.

    \b
    Examples:
      reflexive-mldeg verify-paper --suite polygons
      reflexive-mldeg verify-paper --suite tables,properties --format json
    """
    _check_format(output_format)
    names: list[str] = []
    for token in (suites or "").split(","):
        token = token.strip()
        if token:
            names += SUITE_GROUPS.get(token, [token])

    try:
        config = VerifyConfig(
            suites=list(dict.fromkeys(names)),
            concurrency=concurrency,
            extended=extended,
            output_format=output_format,  # type: ignore[typeddict-item]
            output_file=output_file,
            tracker=_tracker(seeds, seed),
        )
        report = asyncio.run(run_verify(config))
    except MLDegreeError as exc:
        raise _fail(str(exc)) from exc
    except KeyboardInterrupt:
        console.print("\n[yellow]Verification interrupted by user.[/yellow]")
        raise typer.Exit(code=130)

    _emit(report, lambda out: render_report(report, output=out), output_format, output_file)
    raise typer.Exit(code=1 if report["summary"]["failed"] > 0 else 0)


@app.command()
def list_builtins() -> None:
    """List the builtin polytope names accepted by --builtin."""
    table = Table(
        title="[bold cyan]Builtin Polytopes[/bold cyan]",
        box=box.ROUNDED,
        show_header=True,
        header_style="bold white",
    )
    table.add_column("Name", style="bold cyan")
    table.add_column("Description")
    for pattern, description in BUILTIN_PATTERNS.items():
        table.add_row(pattern, description)
    console.print(table)


@app.command()
def list_suites() -> None:
    """List all verification suites with their descriptions."""
    table = Table(
        title="[bold cyan]Verification Suites[/bold cyan]",
        box=box.ROUNDED,
        show_header=True,
        header_style="bold white",
    )
    table.add_column("Key", style="bold cyan")
    table.add_column("Name", style="yellow")
    table.add_column("Description")
    for key, suite_cls in ALL_SUITES.items():
        table.add_row(key, suite_cls.name, suite_cls.description)
    console.print(table)

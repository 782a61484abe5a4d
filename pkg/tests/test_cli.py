"""Tests for the Typer CLI."""

from __future__ import annotations

import json
import pathlib

from rich.console import Console
from typer.testing import CliRunner

from reflexive_mldeg import cli, reporter
from reflexive_mldeg.builders import construct_B, reflexive_polygon
from reflexive_mldeg.cli import app
from reflexive_mldeg.formats import read_polytope

runner = CliRunner()


def test_version_flag() -> None:
    result = runner.invoke(app, ["--version"])
    assert result.exit_code == 0
    assert "reflexive-mldeg" in result.output


def test_cli_prints_through_reporter_console() -> None:
    assert cli.console is reporter.console
    consoles = [name for name, value in vars(cli).items() if isinstance(value, Console)]
    assert sorted(consoles) == ["console", "err_console"]


def test_list_suites() -> None:
    result = runner.invoke(app, ["list-suites"])
    assert result.exit_code == 0
    assert "polygons" in result.output
    assert "b-iteration" in result.output


def test_list_builtins() -> None:
    result = runner.invoke(app, ["list-builtins"])
    assert result.exit_code == 0
    assert "cube-d" in result.output
    assert "KS132" in result.output


# ---------------------------------------------------------------------------
# info / construct
# ---------------------------------------------------------------------------


def test_info_rich() -> None:
    result = runner.invoke(app, ["info", "--builtin", "P8a"])
    assert result.exit_code == 0
    assert "P8a" in result.output
    assert "Degree" in result.output


def test_info_json_file(tmp_path: pathlib.Path) -> None:
    out = tmp_path / "info.json"
    result = runner.invoke(
        app, ["info", "--builtin", "P3", "--construct", "C", "--format", "json", "-o", str(out)]
    )
    assert result.exit_code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["dim"] == 3
    assert data["degree"] == 12
    assert data["reflexive"] is True
    assert data["lattice_index"] == 1


def test_info_from_vertex_file(polygon_file: pathlib.Path, tmp_path: pathlib.Path) -> None:
    out = tmp_path / "info.json"
    result = runner.invoke(
        app,
        ["info", "--file", str(polygon_file), "--index", "2", "-f", "json", "-o", str(out)],
    )
    assert result.exit_code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["name"] == "polygons:2"
    assert data["f_vector"] == [5, 5]


def test_info_index_out_of_range(polygon_file: pathlib.Path) -> None:
    result = runner.invoke(app, ["info", "--file", str(polygon_file), "--index", "7"])
    assert result.exit_code == 2
    assert "out of range" in result.output


def test_info_needs_exactly_one_source() -> None:
    result = runner.invoke(app, ["info"])
    assert result.exit_code == 2
    assert "exactly one" in result.output


def test_unknown_builtin_exits_2() -> None:
    result = runner.invoke(app, ["info", "--builtin", "P10"])
    assert result.exit_code == 2
    assert "Unknown builtin" in result.output


def test_invalid_format_exits_2() -> None:
    result = runner.invoke(app, ["info", "--builtin", "P3", "--format", "xml"])
    assert result.exit_code == 2
    assert "Invalid format" in result.output


def test_construct_writes_vertex_block(tmp_path: pathlib.Path) -> None:
    out = tmp_path / "b_p3.txt"
    result = runner.invoke(
        app, ["construct", "--builtin", "P3", "--construct", "B", "-o", str(out)]
    )
    assert result.exit_code == 0
    assert read_polytope(out).vertices == construct_B(reflexive_polygon("P3")).vertices


def test_construct_to_stdout() -> None:
    result = runner.invoke(app, ["construct", "--builtin", "P3", "--construct", "A"])
    assert result.exit_code == 0
    assert result.output.splitlines()[0] == "3 6"


def test_construct_unknown_kind() -> None:
    result = runner.invoke(app, ["construct", "--builtin", "P3", "--construct", "Z"])
    assert result.exit_code == 2


# ---------------------------------------------------------------------------
# mldeg / drop-check
# ---------------------------------------------------------------------------


def test_mldeg_json(tmp_path: pathlib.Path) -> None:
    out = tmp_path / "p5a.json"
    result = runner.invoke(
        app, ["mldeg", "--builtin", "P5a", "--seeds", "2", "-f", "json", "-o", str(out)]
    )
    assert result.exit_code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert (data["ml_degree"], data["degree"], data["drop"]) == (3, 5, 2)
    assert data["seeds"] == [0, 1]


def test_mldeg_with_scaling_file(tmp_path: pathlib.Path) -> None:
    # weights (1, 2, 1) on the segment make 1 + 2x + x^2 a square
    scaling = tmp_path / "c.txt"
    scaling.write_text("1\n2\n1\n", encoding="utf-8")
    out = tmp_path / "seg.json"
    result = runner.invoke(
        app,
        ["mldeg", "--builtin", "cube-1", "--scaling", str(scaling), "--witness",
         "-f", "json", "-o", str(out)],
    )
    assert result.exit_code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert (data["ml_degree"], data["degree"]) == (1, 2)
    assert data["drop_witness"] is not None


def test_mldeg_bad_data_length(tmp_path: pathlib.Path) -> None:
    data = tmp_path / "u.txt"
    data.write_text("1 2\n", encoding="utf-8")
    result = runner.invoke(app, ["mldeg", "--builtin", "P3", "--data", str(data)])
    assert result.exit_code == 2
    assert "data file" in result.output


def test_drop_check_iterates_construction(tmp_path: pathlib.Path) -> None:
    out = tmp_path / "drop.json"
    result = runner.invoke(
        app,
        ["drop-check", "--builtin", "P3", "--construct", "B", "-k", "1",
         "-f", "json", "-o", str(out)],
    )
    assert result.exit_code == 0
    verdicts = json.loads(out.read_text(encoding="utf-8"))["verdicts"]
    assert [v["name"] for v in verdicts] == ["B^0(P3)", "B^1(P3)"]
    assert [(v["ml_degree"], v["degree"]) for v in verdicts] == [(3, 3), (6, 6)]
    assert not any(v["vanishes"] for v in verdicts)


def test_drop_check_without_ml(tmp_path: pathlib.Path) -> None:
    out = tmp_path / "drop.json"
    result = runner.invoke(
        app, ["drop-check", "--builtin", "P8a", "--no-ml", "-f", "json", "-o", str(out)]
    )
    assert result.exit_code == 0
    (verdict,) = json.loads(out.read_text(encoding="utf-8"))["verdicts"]
    assert verdict["vanishes"] is True
    assert verdict["ml_degree"] is None
    assert verdict["witness"].startswith("dim 2")


# ---------------------------------------------------------------------------
# --graph sources
# ---------------------------------------------------------------------------


def _edge_list(tmp_path: pathlib.Path, name: str, text: str) -> pathlib.Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_info_sym_edge_polytope_of_triangle(tmp_path: pathlib.Path) -> None:
    graph = _edge_list(tmp_path, "k3.txt", "1 2\n1 3\n2 3\n")
    out = tmp_path / "info.json"
    result = runner.invoke(app, ["info", "--graph", str(graph), "-f", "json", "-o", str(out)])
    assert result.exit_code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["name"] == "sym(k3)"
    assert (data["dim"], data["degree"]) == (2, 6)
    assert data["reflexive"] is True


def test_info_bg_polytope_of_star(tmp_path: pathlib.Path) -> None:
    graph = _edge_list(tmp_path, "star.txt", "3\n1 2\n1 3\n")
    out = tmp_path / "info.json"
    result = runner.invoke(
        app, ["info", "--graph", str(graph), "--kind", "bg", "-f", "json", "-o", str(out)]
    )
    assert result.exit_code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert data["name"] == "bg(star)"
    assert (data["dim"], data["degree"]) == (3, 24)
    assert data["n_lattice_points"] == 15
    assert data["reflexive"] is True


def test_mldeg_from_graph(tmp_path: pathlib.Path) -> None:
    # one edge gives the segment [-1, 1]
    graph = _edge_list(tmp_path, "edge.txt", "1 2\n")
    out = tmp_path / "edge.json"
    result = runner.invoke(
        app, ["mldeg", "--graph", str(graph), "--seeds", "2", "-f", "json", "-o", str(out)]
    )
    assert result.exit_code == 0
    data = json.loads(out.read_text(encoding="utf-8"))
    assert (data["ml_degree"], data["degree"]) == (2, 2)


def test_drop_check_from_graph(tmp_path: pathlib.Path) -> None:
    graph = _edge_list(tmp_path, "star.txt", "1 2\n1 3\n")
    out = tmp_path / "drop.json"
    result = runner.invoke(
        app,
        ["drop-check", "--graph", str(graph), "--kind", "bg", "--no-ml",
         "-f", "json", "-o", str(out)],
    )
    assert result.exit_code == 0
    (verdict,) = json.loads(out.read_text(encoding="utf-8"))["verdicts"]
    assert verdict["name"] == "bg(star)"
    assert verdict["degree"] == 24


def test_graph_unknown_kind_exits_2(tmp_path: pathlib.Path) -> None:
    graph = _edge_list(tmp_path, "edge.txt", "1 2\n")
    result = runner.invoke(app, ["info", "--graph", str(graph), "--kind", "cut"])
    assert result.exit_code == 2
    assert "unknown graph polytope" in result.output


def test_graph_and_builtin_conflict(tmp_path: pathlib.Path) -> None:
    graph = _edge_list(tmp_path, "edge.txt", "1 2\n")
    result = runner.invoke(app, ["info", "--graph", str(graph), "--builtin", "P3"])
    assert result.exit_code == 2
    assert "exactly one" in result.output


# ---------------------------------------------------------------------------
# catalog / verify-paper
# ---------------------------------------------------------------------------


def test_catalog_command(polygon_file: pathlib.Path, tmp_path: pathlib.Path) -> None:
    out = tmp_path / "cat.jsonl"
    result = runner.invoke(
        app,
        ["catalog", str(polygon_file), "-o", str(out), "--limit", "2", "--no-timings"],
    )
    assert result.exit_code == 0
    assert "polygons:1" in result.output
    assert len(out.read_text(encoding="utf-8").splitlines()) == 2


def test_catalog_requires_output(polygon_file: pathlib.Path) -> None:
    result = runner.invoke(app, ["catalog", str(polygon_file)])
    assert result.exit_code != 0


def test_verify_unknown_suite_exits_2() -> None:
    result = runner.invoke(app, ["verify-paper", "--suite", "nope"])
    assert result.exit_code == 2
    assert "Unknown suite" in result.output

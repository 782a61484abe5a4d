"""Tests for vertex, graph, scaling and data file handling."""

from __future__ import annotations

import io
import pathlib
from fractions import Fraction

import pytest

from reflexive_mldeg.builders import construct_C, cube, reflexive_polygon
from reflexive_mldeg.exceptions import DimensionMismatchError, MalformedBlockError
from reflexive_mldeg.formats import (
    format_polytope,
    iter_ks_blocks,
    parse_data,
    parse_graph,
    parse_ks,
    parse_scaling,
    read_polytope,
    write_polytope,
)
from reflexive_mldeg.score import design_matrix
from tests.conftest import ks_block


def _write(tmp_path: pathlib.Path, text: str, name: str = "input.txt") -> pathlib.Path:
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# Vertex files
# ---------------------------------------------------------------------------


def test_parse_ks_blocks_in_file_order(polygon_file: pathlib.Path) -> None:
    polytopes = parse_ks(polygon_file)
    assert [p.name for p in polytopes] == ["polygons:0", "polygons:1", "polygons:2"]
    assert [p.normalized_volume for p in polytopes] == [3, 4, 5]


def test_parse_ks_cube_block(tmp_path: pathlib.Path) -> None:
    path = _write(tmp_path, "3 8  M:27 8 N:27 8 H:3,3 [0]\n" + ks_block(cube(3)).split("\n", 1)[1])
    (polytope,) = parse_ks(path)
    assert polytope.normalized_volume == 48


def test_tall_block_is_transposed(tmp_path: pathlib.Path) -> None:
    rows = "4 3\n1 0 0\n0 1 0\n0 0 1\n-1 -1 -1\n"
    path = _write(tmp_path, rows)
    (polytope,) = parse_ks(path)
    assert polytope.dim == 3
    assert len(polytope.vertices) == 4
    assert polytope.normalized_volume == 4


def test_transpose_override(tmp_path: pathlib.Path) -> None:
    path = _write(tmp_path, "2 2\n1 0\n0 1\n")
    (columns,) = iter_ks_blocks(path)
    (rows,) = iter_ks_blocks(path, transpose=True)
    assert columns.points == ((1, 0), (0, 1))
    assert rows.points == ((1, 0), (0, 1))
    path = _write(tmp_path, "2 2\n1 2\n3 4\n")
    (columns,) = iter_ks_blocks(path)
    (rows,) = iter_ks_blocks(path, transpose=True)
    assert columns.points == ((1, 3), (2, 4))
    assert rows.points == ((1, 2), (3, 4))


def test_malformed_header(tmp_path: pathlib.Path) -> None:
    path = _write(tmp_path, "# header\n3\n")
    with pytest.raises(MalformedBlockError) as info:
        parse_ks(path)
    assert info.value.line == 2


def test_short_row(tmp_path: pathlib.Path) -> None:
    path = _write(tmp_path, "2 3\n1 0 -1\n0 1\n")
    with pytest.raises(DimensionMismatchError):
        parse_ks(path)


def test_truncated_block(tmp_path: pathlib.Path) -> None:
    path = _write(tmp_path, "2 3\n1 0 -1\n")
    with pytest.raises(MalformedBlockError, match="block ends"):
        parse_ks(path)


def test_non_integer_entry(tmp_path: pathlib.Path) -> None:
    path = _write(tmp_path, "2 3\n1 0 x\n0 1 -1\n")
    with pytest.raises(MalformedBlockError, match="expected integers"):
        parse_ks(path)


def test_written_polytope_reads_back(tmp_path: pathlib.Path) -> None:
    polytope = construct_C(reflexive_polygon("P3"))
    buffer = io.StringIO()
    write_polytope(polytope, buffer)
    assert buffer.getvalue() == format_polytope(polytope)
    assert buffer.getvalue().startswith("3 7\n")
    path = _write(tmp_path, buffer.getvalue(), "c_p3.txt")
    assert read_polytope(path).vertices == polytope.vertices


# ---------------------------------------------------------------------------
# Graphs, scalings and data
# ---------------------------------------------------------------------------


def test_parse_graph(tmp_path: pathlib.Path) -> None:
    path = _write(tmp_path, "# a path plus an isolated vertex\n4\n1 2\n2 3\n")
    graph = parse_graph(path)
    assert graph.vertex_count == 4
    assert graph.edges == ((1, 2), (2, 3))


def test_parse_graph_rejects_triples(tmp_path: pathlib.Path) -> None:
    path = _write(tmp_path, "1 2 3\n")
    with pytest.raises(MalformedBlockError):
        parse_graph(path)


def test_parse_scaling_accepts_fractions(tmp_path: pathlib.Path) -> None:
    design = design_matrix(cube(1))
    path = _write(tmp_path, "1\n-1/108\n2 0.5\n")
    scaling = parse_scaling(path, design)
    assert scaling.weights == (1, float(Fraction(-1, 108)), complex(2, 0.5))


def test_parse_scaling_length_mismatch(tmp_path: pathlib.Path) -> None:
    design = design_matrix(cube(1))
    path = _write(tmp_path, "1\n1\n")
    with pytest.raises(DimensionMismatchError):
        parse_scaling(path, design)


def test_parse_data(tmp_path: pathlib.Path) -> None:
    design = design_matrix(reflexive_polygon("P3"))
    path = _write(tmp_path, "3 1\n4 1\n")
    assert parse_data(path, design).counts == (3, 1, 4, 1)

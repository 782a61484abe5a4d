"""Readers and writers for vertex-matrix, graph, scaling and data files."""

from __future__ import annotations

import pathlib
from collections.abc import Iterator
from dataclasses import dataclass
from fractions import Fraction
from typing import TextIO

from reflexive_mldeg.builders import Graph
from reflexive_mldeg.exceptions import DimensionMismatchError, MalformedBlockError
from reflexive_mldeg.lattice import Polytope
from reflexive_mldeg.score import DataVector, DesignMatrix, Scaling
from reflexive_mldeg.types import Vector


@dataclass(frozen=True)
class VertexBlock:
    """One matrix block of a vertex file, already oriented as a list of points."""

    index: int
    line: int
    points: tuple[Vector, ...]


def _content_lines(path: pathlib.Path) -> Iterator[tuple[int, list[str]]]:
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if text:
                yield lineno, text.split()


def _ints(path: pathlib.Path, lineno: int, tokens: list[str]) -> list[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError as exc:
        raise MalformedBlockError(str(path), lineno, f"expected integers, got {tokens!r}") from exc


def iter_ks_blocks(
    path: str | pathlib.Path, transpose: bool | None = None
) -> Iterator[VertexBlock]:
    """Yield the blocks of a file in the Kreuzer-Skarke vertex format.

    Each block is a header line ``r k [annotation...]`` followed by ``r`` rows of
    ``k`` integers. By default the matrix is read with vertices as columns unless
    it has more rows than columns. *transpose* forces rows (True) or columns (False).
    """
    path = pathlib.Path(path)
    lines = _content_lines(path)
    index = 0
    for lineno, tokens in lines:
        if len(tokens) < 2:
            raise MalformedBlockError(str(path), lineno, "header needs two integers 'r k'")
        r, k = _ints(path, lineno, tokens[:2])
        if r < 1 or k < 1:
            raise MalformedBlockError(str(path), lineno, f"bad block shape {r} x {k}")
        rows: list[list[int]] = []
        for _ in range(r):
            try:
                row_line, row_tokens = next(lines)
            except StopIteration:
                raise MalformedBlockError(
                    str(path), lineno, f"block ends after {len(rows)} of {r} rows"
                ) from None
            row = _ints(path, row_line, row_tokens)
            if len(row) != k:
                raise DimensionMismatchError(k, len(row), f"{path}:{row_line}")
            rows.append(row)
        as_rows = transpose if transpose is not None else r > k
        if as_rows:
            points = tuple(tuple(row) for row in rows)
        else:
            points = tuple(tuple(rows[i][j] for i in range(r)) for j in range(k))
        yield VertexBlock(index=index, line=lineno, points=points)
        index += 1


def parse_ks(path: str | pathlib.Path, transpose: bool | None = None) -> list[Polytope]:
    """All polytopes of a vertex file, named ``<stem>:<index>`` with indices from 0."""
    stem = pathlib.Path(path).stem
    return [
        Polytope(block.points, name=f"{stem}:{block.index}")
        for block in iter_ks_blocks(path, transpose)
    ]


def format_polytope(polytope: Polytope) -> str:
    """Header ``d n`` then ``d`` rows of ``n`` integers, one vertex per column."""
    d, n = polytope.dim, len(polytope.vertices)
    lines = [f"{d} {n}"]
    for k in range(d):
        lines.append(" ".join(str(v[k]) for v in polytope.vertices))
    return "\n".join(lines) + "\n"


def write_polytope(polytope: Polytope, output: TextIO) -> None:
    output.write(format_polytope(polytope))


def read_polytope(path: str | pathlib.Path) -> Polytope:
    """Read the single polytope written by :func:`write_polytope`."""
    blocks = list(iter_ks_blocks(path, transpose=False))
    if len(blocks) != 1:
        raise MalformedBlockError(str(path), 1, f"expected one block, found {len(blocks)}")
    return Polytope(blocks[0].points, name=pathlib.Path(path).stem)


def parse_graph(path: str | pathlib.Path) -> Graph:
    """Edge list ``u v`` per line with 1-indexed vertices.

    A line holding a single integer sets the vertex count, so isolated vertices
    can be declared.
    """
    path = pathlib.Path(path)
    edges: list[tuple[int, int]] = []
    declared = 0
    for lineno, tokens in _content_lines(path):
        values = _ints(path, lineno, tokens)
        if len(values) == 1:
            declared = values[0]
        elif len(values) == 2:
            edges.append((values[0], values[1]))
        else:
            raise MalformedBlockError(str(path), lineno, "expected 'u v' or a vertex count")
    count = max([declared, *(max(e) for e in edges)], default=0)
    return Graph(vertex_count=count, edges=tuple(edges))


def _number(path: pathlib.Path, lineno: int, token: str) -> float:
    try:
        return float(Fraction(token))
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedBlockError(str(path), lineno, f"not a number: {token!r}") from exc


def parse_scaling(path: str | pathlib.Path, design: DesignMatrix) -> Scaling:
    """One weight per line as ``re [im]``; fractions like ``-1/108`` are accepted."""
    path = pathlib.Path(path)
    weights: list[complex] = []
    for lineno, tokens in _content_lines(path):
        if len(tokens) > 2:
            raise MalformedBlockError(str(path), lineno, "expected 're [im]'")
        re_part = _number(path, lineno, tokens[0])
        im_part = _number(path, lineno, tokens[1]) if len(tokens) == 2 else 0.0
        weights.append(complex(re_part, im_part))
    if len(weights) != design.n:
        raise DimensionMismatchError(design.n, len(weights), f"scaling file {path}")
    return Scaling(tuple(weights))


def parse_data(path: str | pathlib.Path, design: DesignMatrix) -> DataVector:
    """``n`` whitespace-separated nonnegative integers."""
    path = pathlib.Path(path)
    counts: list[int] = []
    for lineno, tokens in _content_lines(path):
        counts += _ints(path, lineno, tokens)
    if len(counts) != design.n:
        raise DimensionMismatchError(design.n, len(counts), f"data file {path}")
    return DataVector(tuple(counts))

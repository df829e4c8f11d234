"""Plain-text edge lists: a header line ``n m`` followed by ``m`` lines
``u v c``.  Color labels on input are arbitrary unsigned integers; the
writer emits normalized color ids."""

from __future__ import annotations

import io
from pathlib import Path
from typing import TextIO

from .colored_graph import ColoredGraph, build_graph


class EdgeListError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def parse_edge_list(text: str) -> ColoredGraph:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            rows.append((lineno, stripped.split()))
    if not rows:
        raise EdgeListError("empty edge list")
    lineno, header = rows[0]
    if len(header) != 2:
        raise EdgeListError(f"expected header 'n m', got {' '.join(header)!r}", lineno)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise EdgeListError(f"non-integer header {' '.join(header)!r}", lineno) from None
    if n < 0 or m < 0:
        raise EdgeListError("n and m must be nonnegative", lineno)
    body = rows[1:]
    if len(body) != m:
        raise EdgeListError(f"header declares {m} edges but {len(body)} edge lines follow", lineno)
    edges = []
    for lineno, parts in body:
        if len(parts) != 3:
            raise EdgeListError(f"expected 'u v c', got {' '.join(parts)!r}", lineno)
        try:
            u, v, c = (int(p) for p in parts)
        except ValueError:
            raise EdgeListError(f"non-integer field in {' '.join(parts)!r}", lineno) from None
        if c < 0:
            raise EdgeListError(f"color label must be unsigned, got {c}", lineno)
        edges.append((u, v, c))
    return build_graph(n, edges)


def read_edge_list(source: str | Path | TextIO) -> ColoredGraph:
    if hasattr(source, "read"):
        return parse_edge_list(source.read())
    return parse_edge_list(Path(source).read_text())


def format_edge_list(g: ColoredGraph) -> str:
    buf = io.StringIO()
    buf.write(f"{g.n} {g.m}\n")
    for u, v, c in g.edges:
        buf.write(f"{u} {v} {c}\n")
    return buf.getvalue()


def write_edge_list(g: ColoredGraph, dest: str | Path | TextIO) -> None:
    text = format_edge_list(g)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        Path(dest).write_text(text)

from pathlib import Path
from typing import IO, Iterable

import numpy as np
from bfs1d.core.config import VERTEX_DTYPE
from bfs1d.core.errors import GraphFormatError
from bfs1d.core.graph import EdgeList
from loguru import logger

COMMENT_PREFIX = "#"


def _write_edges(edges: EdgeList, stream: IO[str]) -> None:
    stream.write(f"{edges.vertex_count} {edges.edge_count}\n")
    if edges.edge_count:
        lo = edges.edges.min(axis=1)
        hi = edges.edges.max(axis=1)
        np.savetxt(stream, np.column_stack([lo, hi]), fmt="%d")


def write_edge_list(edges: EdgeList, destination: Path | str | IO[str]) -> None:
    """Writes the edge-list text format.

    First line `<vertex_count> <edge_count>`, then one `<u> <v>` line (u < v)
    per edge.
    """
    if hasattr(destination, "write"):
        _write_edges(edges, destination)
        return

    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="ascii", newline="\n") as f:
        _write_edges(edges, f)

    logger.debug(f"Edge list written: '{path}' ({edges.edge_count} edges)")


def _parse_ints(line: str, line_no: int, expected: int, what: str) -> list[int]:
    parts = line.split()
    if len(parts) != expected:
        raise GraphFormatError(
            f"expected {what} of {expected} integers, got: '{line.strip()}'", line_no
        )
    try:
        return [int(part) for part in parts]
    except ValueError:
        raise GraphFormatError(f"non-integer value in: '{line.strip()}'", line_no) from None


def _parse_edges(lines: Iterable[str]) -> EdgeList:
    header: tuple[int, int] | None = None
    header_line = 1
    rows: list[tuple[int, int]] = []
    first_line: dict[tuple[int, int], int] = {}

    for line_no, line in enumerate(lines, start=1):
        if not line.strip() or line.lstrip().startswith(COMMENT_PREFIX):
            continue

        if header is None:
            n, m = _parse_ints(line, line_no, 2, "header")
            if n < 0 or m < 0:
                raise GraphFormatError(f"negative header value: '{line.strip()}'", line_no)
            header, header_line = (n, m), line_no
            continue

        u, v = _parse_ints(line, line_no, 2, "edge")
        n = header[0]
        for vertex in (u, v):
            if not 0 <= vertex < n:
                raise GraphFormatError(
                    f"vertex id {vertex} out of range [0, {n})", line_no
                )
        if u == v:
            raise GraphFormatError(f"self-loop edge ({u}, {v})", line_no)

        edge = (min(u, v), max(u, v))
        if edge in first_line:
            raise GraphFormatError(
                f"duplicate edge {edge}, first seen on line {first_line[edge]}",
                line_no,
            )
        first_line[edge] = line_no
        rows.append(edge)

    if header is None:
        raise GraphFormatError("missing '<vertex_count> <edge_count>' header", 1)

    n, m = header
    if len(rows) != m:
        raise GraphFormatError(
            f"header declares {m} edges, found {len(rows)}", header_line
        )

    return EdgeList(n, np.asarray(rows, dtype=VERTEX_DTYPE).reshape(-1, 2))


def read_edge_list(source: Path | str | IO[str]) -> EdgeList:
    """Parses the edge-list text format written by `write_edge_list`."""
    if hasattr(source, "read"):
        return _parse_edges(source)

    path = Path(source)
    with path.open("r", encoding="ascii") as f:
        edges = _parse_edges(f)

    logger.debug(f"Edge list read: '{path}' ({edges.edge_count} edges)")
    return edges

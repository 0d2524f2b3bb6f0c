"""Canonical edge-list text format.

    n m
    u v        (m lines, 0-based vertex ids, one space)

Lines starting with ``#`` are ignored.  Output always uses LF endings.
"""
from __future__ import annotations

from typing import Iterable, List, TextIO, Tuple

from .graph import Graph, GraphError, build_graph


class FormatError(ValueError):
    """Edge-list text that cannot be parsed."""


def parse_edge_list(text: str) -> Graph:
    rows: List[Tuple[int, str]] = [
        (lineno, line.strip())
        for lineno, line in enumerate(text.splitlines(), 1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise FormatError("empty input: expected header line 'n m'")
    lineno, header = rows[0]
    try:
        n, m = (int(tok) for tok in header.split())
    except ValueError:
        raise FormatError(f"line {lineno}: bad header {header!r}, expected 'n m'") from None
    if n < 0 or m < 0:
        raise FormatError(f"line {lineno}: negative count in header")
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header declares {m} edges but {len(body)} edge lines follow")
    pairs = []
    for lineno, line in body:
        toks = line.split()
        if len(toks) != 2:
            raise FormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            pairs.append((int(toks[0]), int(toks[1])))
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex id in {line!r}") from None
    try:
        return build_graph(n, pairs)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def read_edge_list(stream: TextIO) -> Graph:
    return parse_edge_list(stream.read())


def format_edge_list(g: Graph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in zip(g.tail.tolist(), g.head.tolist()))
    return "\n".join(lines) + "\n"


def write_edge_list(g: Graph, stream: TextIO, comments: Iterable[str] = ()) -> None:
    stream.write(format_edge_list(g, comments))

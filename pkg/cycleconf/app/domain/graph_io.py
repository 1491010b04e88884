"""
Readers and writers: graph6, plain edge list, and DOT.
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, Literal, Optional

import networkx as nx

from cycleconf.app.domain.errors import GraphFormatError
from cycleconf.app.domain.graph import Graph, bipartition

Format = Literal["graph6", "edges", "dot"]

GRAPH6_HEADER = ">>graph6<<"
_DOT_NODE = re.compile(r"^\s*(\d+)\s*(\[.*\])?\s*;?\s*$")
_DOT_EDGE = re.compile(r"^\s*(\d+)\s*--\s*(\d+)\s*(\[.*\])?\s*;?\s*$")


def to_graph6(g: Graph) -> str:
    return nx.to_graph6_bytes(g.to_networkx(), header=False).decode("ascii").strip()


def from_graph6(text: str, name: Optional[str] = None) -> Graph:
    data = text.strip()
    offset = 0
    if data.startswith(GRAPH6_HEADER):
        data = data[len(GRAPH6_HEADER):]
        offset = len(GRAPH6_HEADER)
    if not data:
        raise GraphFormatError("empty graph6 string", position=offset)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"invalid graph6 byte {ch!r} at position {offset + i}", position=offset + i)
    try:
        nx_graph = nx.from_graph6_bytes(data.encode("ascii"))
    except (nx.NetworkXError, ValueError) as e:
        raise GraphFormatError(f"malformed graph6 string: {e}", position=offset + len(data)) from e
    return Graph.from_networkx(nx_graph, name=name)


def read_graph6_stream(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if line:
            yield from_graph6(line)


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list(text: str, name: Optional[str] = None) -> Graph:
    rows = [
        (lineno, line.split("#", 1)[0].split())
        for lineno, line in enumerate(text.splitlines(), 1)
    ]
    rows = [(lineno, parts) for lineno, parts in rows if parts]
    if not rows:
        raise GraphFormatError("edge list is empty", position=0)
    header_line, header = rows[0]
    n, m = _int_pair(header, header_line)
    edges = [_int_pair(parts, lineno) for lineno, parts in rows[1:]]
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}", position=header_line)
    g = Graph.from_edges(n, edges, name=name)
    if g.m != m:
        raise GraphFormatError("edge list repeats an edge", position=header_line)
    return g


def _int_pair(parts: list[str], lineno: int) -> tuple[int, int]:
    if len(parts) != 2:
        raise GraphFormatError(f"edge list line {lineno}: expected two integers", position=lineno)
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as e:
        raise GraphFormatError(f"edge list line {lineno}: {e}", position=lineno) from e


def to_dot(g: Graph) -> str:
    """DOT with colour classes as filled (black) and unfilled (white) nodes."""
    parts = bipartition(g)
    title = g.name or "G"
    lines = [f'graph "{title}" {{', '  node [shape=circle, label=""];']
    for v in range(g.n):
        if parts is None:
            lines.append(f"  {v} [xlabel={v}];")
        elif v in parts.black:
            lines.append(f"  {v} [xlabel={v}, style=filled, fillcolor=black];")
        else:
            lines.append(f"  {v} [xlabel={v}, style=filled, fillcolor=white];")
    lines.extend(f"  {u} -- {v};" for u, v in g.edges())
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_dot(text: str, name: Optional[str] = None) -> Graph:
    """Reads the subset of DOT written by `to_dot`."""
    body = text.strip()
    if not re.match(r"^(strict\s+)?graph\b", body):
        raise GraphFormatError("DOT input must start with 'graph'", position=0)
    start, end = body.find("{"), body.rfind("}")
    if start < 0 or end < start:
        raise GraphFormatError("DOT input has no body", position=len(body))
    if name is None:
        found = re.match(r'^(?:strict\s+)?graph\s+"?([^"{]*)"?\s*\{', body)
        name = found.group(1).strip() if found and found.group(1).strip() else None
    nodes: set[int] = set()
    edges = []
    for lineno, line in enumerate(body[start + 1:end].splitlines(), 1):
        line = line.strip()
        if not line or line.startswith(("node", "edge", "graph", "//")):
            continue
        if found_edge := _DOT_EDGE.match(line):
            u, v = int(found_edge.group(1)), int(found_edge.group(2))
            edges.append((u, v))
            nodes.update((u, v))
        elif found_node := _DOT_NODE.match(line):
            nodes.add(int(found_node.group(1)))
        else:
            raise GraphFormatError(f"unsupported DOT statement on line {lineno}: {line}", position=lineno)
    n = max(nodes) + 1 if nodes else 0
    return Graph.from_edges(n, edges, name=name)


def detect_format(text: str) -> Format:
    body = text.lstrip()
    if re.match(r"^(strict\s+)?graph\b", body):
        return "dot"
    first = body.splitlines()[0].strip() if body else ""
    if re.fullmatch(r"\d+\s+\d+", first):
        return "edges"
    return "graph6"


def read_graph(text: str, fmt: Optional[Format] = None, name: Optional[str] = None) -> Graph:
    fmt = fmt or detect_format(text)
    if fmt == "dot":
        return from_dot(text, name=name)
    if fmt == "edges":
        return from_edge_list(text, name=name)
    first = text.strip().splitlines()[0] if text.strip() else ""
    return from_graph6(first, name=name)


def write_graph(g: Graph, fmt: Format) -> str:
    if fmt == "dot":
        return to_dot(g)
    if fmt == "edges":
        return to_edge_list(g)
    return to_graph6(g) + "\n"

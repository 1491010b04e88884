"""
Canonical forms for isomorphism rejection.

Individualisation-refinement: the vertex partition is refined to an equitable
ordered partition, the first smallest non-singleton cell is branched on, and the
lexicographically least adjacency string over all discrete leaves is the
certificate. Twins (vertices whose transposition is an automorphism) generate
identical subtrees, so only one representative per twin class is explored.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from cycleconf.app.domain.graph import Graph, iter_bits


@dataclass(frozen=True, order=True)
class CanonicalForm:
    certificate: bytes

    def hex(self) -> str:
        return self.certificate.hex()


def canonical_form(g: Graph, colours: Optional[Sequence[int]] = None) -> CanonicalForm:
    return CanonicalForm(certificate=_search(g, colours)[0])


def canonical_labelling(g: Graph, colours: Optional[Sequence[int]] = None) -> list[int]:
    """Vertex order realising the canonical form: position i holds an old vertex id."""
    return _search(g, colours)[1]


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labelling(g))


def _search(g: Graph, colours: Optional[Sequence[int]]) -> tuple[bytes, list[int]]:
    n = g.n
    if n == 0:
        return b"\x00", []
    colour = list(colours) if colours is not None else [0] * n
    keys = sorted({(colour[v], g.degree(v)) for v in range(n)})
    cells = [[v for v in range(n) if (colour[v], g.degree(v)) == key] for key in keys]
    best: list = [None, None]

    def visit(partition: list[list[int]]) -> None:
        partition = _refine(g, partition)
        target = None
        for cell in partition:
            if len(cell) > 1 and (target is None or len(cell) < len(target)):
                target = cell
        if target is None:
            order = [cell[0] for cell in partition]
            cert = _certificate(g, order, colour)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, order
            return
        idx = partition.index(target)
        explored: list[int] = []
        for v in target:
            if any(_twins(g, u, v) for u in explored):
                continue
            explored.append(v)
            rest = [w for w in target if w != v]
            visit(partition[:idx] + [[v], rest] + partition[idx + 1:])

    visit(cells)
    return best[0], best[1]


def _twins(g: Graph, u: int, v: int) -> bool:
    return g.adj[u] & ~(1 << v) == g.adj[v] & ~(1 << u)


def _refine(g: Graph, partition: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbour counts into every cell until the ordered partition is equitable."""
    cells = [list(c) for c in partition]
    changed = True
    while changed:
        changed = False
        for splitter in range(len(cells)):
            smask = 0
            for v in cells[splitter]:
                smask |= 1 << v
            out: list[list[int]] = []
            for cell in cells:
                if len(cell) == 1:
                    out.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((g.adj[v] & smask).bit_count(), []).append(v)
                if len(groups) > 1:
                    changed = True
                out.extend(groups[k] for k in sorted(groups))
            cells = out
            if changed:
                break
    return cells


def _certificate(g: Graph, order: list[int], colour: list[int]) -> bytes:
    position = [0] * g.n
    for i, v in enumerate(order):
        position[v] = i
    rows = bytearray()
    rows.append(g.n)
    rows.extend(colour[v] for v in order)
    for v in order:
        bits = 0
        for w in iter_bits(g.adj[v]):
            bits |= 1 << position[w]
        rows.extend(bits.to_bytes((g.n + 7) // 8, "big"))
    return bytes(rows)

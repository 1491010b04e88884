"""
Pfaffian orientations: verification and exhaustive search at desk scale.

An orientation is Pfaffian when every conformal even cycle has an odd number
of edges oriented along either traversal direction. Reversing every edge at a
vertex changes each cycle through it in exactly two edges, so the search fixes
a spanning forest and enumerates only the co-tree directions.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from cycleconf.app.domain.errors import PfaffianError
from cycleconf.app.domain.graph import Cycle, Edge, Graph, bipartition, enumerate_cycles, iter_bits, normalize_edge
from cycleconf.app.domain.matching import MatchabilityOracle

logger = logging.getLogger(__name__)

DEFAULT_MAX_DIMENSION = 22


@dataclass(frozen=True)
class Orientation:
    """One arc per edge of `base`, aligned with `base.edges()`."""

    base: Graph
    arcs: tuple[Edge, ...]

    @classmethod
    def from_arcs(cls, g: Graph, arcs: Iterable[Sequence[int]]) -> Orientation:
        given: dict[Edge, Edge] = {}
        for tail, head in arcs:
            if not g.has_edge(tail, head):
                raise PfaffianError(f"arc {tail}->{head} is not an edge of the graph", reason="invalid orientation")
            key = normalize_edge(tail, head)
            if key in given:
                raise PfaffianError(f"edge {key[0]}-{key[1]} is oriented twice", reason="invalid orientation")
            given[key] = (tail, head)
        missing = [e for e in g.edges() if e not in given]
        if missing:
            raise PfaffianError(f"{len(missing)} edges are not oriented, first {missing[0]}", reason="invalid orientation")
        return cls(base=g, arcs=tuple(given[e] for e in g.edges()))

    @classmethod
    def from_bits(cls, g: Graph, upward: int) -> Orientation:
        """Bit i of `upward` set means edge i (in edge order) runs from its smaller to its larger end."""
        return cls(base=g, arcs=tuple((u, v) if (upward >> i) & 1 else (v, u) for i, (u, v) in enumerate(g.edges())))

    def flip(self, v: int) -> Orientation:
        return Orientation(base=self.base, arcs=tuple((b, a) if v in (a, b) else (a, b) for a, b in self.arcs))

    def agreement(self, c: Cycle) -> int:
        """Edges of c oriented along its stored traversal direction."""
        arcs = set(self.arcs)
        return sum(1 for step in c.traversal() if step in arcs)


@dataclass(frozen=True)
class PfaffianCheck:
    valid: bool
    violating: Optional[Cycle] = None
    conformal_cycles: int = 0
    nonconformal_cycles: int = 0


@dataclass(frozen=True)
class PfaffianSearch:
    pfaffian: bool
    orientation: Optional[Orientation] = None
    dimension: int = 0
    classes_searched: int = 0


def _require_matchable(g: Graph) -> MatchabilityOracle:
    oracle = MatchabilityOracle(g)
    if not oracle.is_matchable(g.vertex_mask):
        raise PfaffianError("Pfaffian orientations need a graph with a perfect matching", reason="no perfect matching")
    return oracle


def verify_pfaffian_orientation(o: Orientation) -> PfaffianCheck:
    oracle = _require_matchable(o.base)
    arcs = set(o.arcs)
    conformal = nonconformal = 0
    violating = None
    for cycle in enumerate_cycles(o.base, "even"):
        if not oracle.without(cycle.vertex_mask):
            nonconformal += 1
            continue
        conformal += 1
        forward = sum(1 for step in cycle.traversal() if step in arcs)
        backward = len(cycle) - forward
        if forward % 2 != backward % 2:
            raise PfaffianError(f"traversal parity differs on even cycle {list(cycle.vertices)}", reason="internal")
        if forward % 2 == 0 and violating is None:
            violating = cycle
    return PfaffianCheck(
        valid=violating is None, violating=violating, conformal_cycles=conformal, nonconformal_cycles=nonconformal
    )


def cycle_space_dimension(g: Graph) -> int:
    return g.m - g.n + len(g.components())


def _spanning_forest(g: Graph) -> set[Edge]:
    tree: set[Edge] = set()
    seen = 0
    for root in range(g.n):
        if (seen >> root) & 1:
            continue
        seen |= 1 << root
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for w in iter_bits(g.adj[v] & ~seen):
                    seen |= 1 << w
                    tree.add(normalize_edge(v, w))
                    nxt.append(w)
            frontier = nxt
    return tree


def is_pfaffian_bruteforce(g: Graph, max_dimension: int = DEFAULT_MAX_DIMENSION) -> PfaffianSearch:
    """
    Tree edges point from smaller to larger id; the 2^d co-tree assignments are
    tried in increasing bit order and the first Pfaffian one is returned.
    """
    oracle = _require_matchable(g)
    dimension = cycle_space_dimension(g)
    if dimension > max_dimension:
        raise PfaffianError(
            f"cycle space dimension {dimension} exceeds the search limit {max_dimension}", reason="scale"
        )
    edges = g.edges()
    position = {e: i for i, e in enumerate(edges)}
    tree = _spanning_forest(g)
    fixed = sum(1 << position[e] for e in tree)
    free = [position[e] for e in edges if e not in tree]

    # each conformal even cycle: (edge mask, parity of its downward traversal steps)
    constraints = []
    for cycle in enumerate_cycles(g, "even"):
        if not oracle.without(cycle.vertex_mask):
            continue
        mask = downward = 0
        for a, b in cycle.traversal():
            mask |= 1 << position[normalize_edge(a, b)]
            downward += a > b
        constraints.append((mask, downward % 2))

    for searched, assignment in enumerate(range(1 << dimension), 1):
        upward = fixed
        for j, i in enumerate(free):
            if (assignment >> j) & 1:
                upward |= 1 << i
        if all(((upward & mask).bit_count() + downward) % 2 == 1 for mask, downward in constraints):
            logger.debug(f"Pfaffian orientation found after {searched} of {1 << dimension} classes")
            return PfaffianSearch(
                pfaffian=True, orientation=Orientation.from_bits(g, upward), dimension=dimension, classes_searched=searched
            )
    return PfaffianSearch(pfaffian=False, dimension=dimension, classes_searched=1 << dimension)


def signed_biadjacency(o: Orientation) -> np.ndarray:
    """Rows white, columns black: +1 for an arc white -> black, -1 for black -> white."""
    parts = bipartition(o.base)
    if parts is None:
        raise PfaffianError("signed biadjacency needs a bipartite graph", reason="not bipartite")
    whites, blacks = sorted(parts.white), sorted(parts.black)
    row = {w: i for i, w in enumerate(whites)}
    col = {b: j for j, b in enumerate(blacks)}
    matrix = np.zeros((len(whites), len(blacks)), dtype=np.int64)
    for tail, head in o.arcs:
        if tail in row:
            matrix[row[tail], col[head]] = 1
        else:
            matrix[row[head], col[tail]] = -1
    return matrix


def signed_biadjacency_determinant(o: Orientation) -> int:
    matrix = signed_biadjacency(o)
    if matrix.shape[0] != matrix.shape[1]:
        return 0
    if matrix.shape[0] == 0:
        return 1
    return int(round(float(np.linalg.det(matrix.astype(np.float64)))))


def count_perfect_matchings_pfaffian(g: Graph, max_dimension: int = DEFAULT_MAX_DIMENSION) -> int:
    """|det| of the signed biadjacency matrix under a Pfaffian orientation."""
    search = is_pfaffian_bruteforce(g, max_dimension=max_dimension)
    if not search.pfaffian or search.orientation is None:
        raise PfaffianError("graph has no Pfaffian orientation", reason="not pfaffian")
    return abs(signed_biadjacency_determinant(search.orientation))


"""
Conformal cycles and cycle-conformality.

A cycle C of G is conformal when G - V(C) has a perfect matching; G is
cycle-conformal when it has a perfect matching and every even cycle is
conformal.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from cycleconf.app.domain.errors import ConformalityError
from cycleconf.app.domain.graph import (
    Cycle,
    Graph,
    Parity,
    Path,
    bipartition,
    enumerate_cycles,
    iter_bits,
    normalize_edge,
)
from cycleconf.app.domain.matching import MatchabilityOracle, cover_graph

logger = logging.getLogger(__name__)

ComponentChecker = Callable[[Graph], bool]


@dataclass(frozen=True)
class ConformalityReport:
    verdict: bool
    witness: Optional[Cycle] = None
    checked_cycles: int = 0
    reason: Optional[str] = None


def is_conformal(g: Graph, c: Cycle) -> bool:
    if not g.is_cycle(c):
        raise ConformalityError(f"{list(c.vertices)} is not a cycle of the graph")
    return MatchabilityOracle(g).without(c.vertex_mask)


def _require_edge(g: Graph, e: Sequence[int]) -> tuple[int, int]:
    u, v = e
    if not g.has_edge(u, v):
        raise ConformalityError(f"edge {u}-{v} is not in the graph", reason="edge absent")
    return normalize_edge(u, v)


def find_even_path(g: Graph, source: int, target: int) -> Optional[Path]:
    """
    A simple source-target path with an even number of edges, or None.

    In a bipartite graph every source-target path has the same parity, so one
    reachability test decides it; otherwise a depth-first search over simple
    paths, cut off whenever the target is unreachable through unused vertices.
    """
    if source == target:
        return Path(vertices=(source,))
    parts = bipartition(g)
    if parts is not None:
        if parts.colour(source) != parts.colour(target):
            return None
        return _any_path(g, source, target)

    trail = [source]

    def reachable(v: int, free: int) -> bool:
        return any((comp >> target) & 1 and (comp >> v) & 1 for comp in g.components(free | (1 << v)))

    def walk(v: int, used: int) -> Optional[Path]:
        for w in iter_bits(g.adj[v] & ~used):
            if w == target:
                if len(trail) % 2 == 0:
                    return Path(vertices=tuple(trail) + (w,))
                continue
            if not reachable(w, g.vertex_mask & ~used & ~(1 << w)):
                continue
            trail.append(w)
            found = walk(w, used | (1 << w))
            if found is not None:
                return found
            trail.pop()
        return None

    return walk(source, 1 << source)


def _any_path(g: Graph, source: int, target: int) -> Optional[Path]:
    parent = {source: source}
    frontier = [source]
    while frontier:
        nxt = []
        for v in frontier:
            for w in iter_bits(g.adj[v]):
                if w not in parent:
                    parent[w] = v
                    nxt.append(w)
        frontier = nxt
    if target not in parent:
        return None
    seq = [target]
    while seq[-1] != source:
        seq.append(parent[seq[-1]])
    return Path(vertices=tuple(reversed(seq)))


def edge_in_even_cycle(g: Graph, e: Sequence[int]) -> bool:
    """
    Subdivide e = uv by a new vertex x, delete ux, and look for an even u-x
    path. Such a path ends with vx, so it closes into an even cycle through e.
    """
    u, v = _require_edge(g, e)
    x = g.n
    h = g.add_vertices(1).with_edges(add=[(v, x)], remove=[(u, v)])
    return find_even_path(h, u, x) is not None


def _first_failure(g: Graph, parity: Parity) -> ConformalityReport:
    oracle = MatchabilityOracle(g)
    checked = 0
    for cycle in enumerate_cycles(g, parity):
        checked += 1
        if not oracle.without(cycle.vertex_mask):
            logger.debug(f"Non-conformal {parity} cycle {list(cycle.vertices)} after {checked} cycles")
            return ConformalityReport(verdict=False, witness=cycle, checked_cycles=checked, reason="non-conformal cycle")
    return ConformalityReport(verdict=True, checked_cycles=checked)


def brute_is_cycle_conformal(g: Graph) -> ConformalityReport:
    """Tests every even cycle; the witness is the first failure in enumeration order."""
    if not MatchabilityOracle(g).is_matchable(g.vertex_mask):
        return ConformalityReport(verdict=False, reason="no perfect matching")
    return _first_failure(g, "even")


def _brute_checker(h: Graph) -> bool:
    return brute_is_cycle_conformal(h).verdict


def is_cycle_conformal_reduced(g: Graph, component_checker: Optional[ComponentChecker] = None) -> bool:
    """
    Cycle-conformal iff every component of the cover graph passes
    `component_checker` and no edge outside the cover graph lies on an even
    cycle of g.
    """
    if not MatchabilityOracle(g).is_matchable(g.vertex_mask):
        return False
    checker = component_checker or _brute_checker
    cover = cover_graph(g)
    for component, _ in cover.component_graphs():
        if not checker(component):
            return False
    return not any(edge_in_even_cycle(g, e) for e in cover.excluded)


def is_odd_cycle_conformal(g: Graph) -> ConformalityReport:
    return _first_failure(g, "odd")


def subset_is_cycle_conformal(g: Graph) -> ConformalityReport:
    """
    Independent oracle: every even vertex set S whose complement has no
    perfect matching must not carry a spanning cycle of G[S].
    """
    oracle = MatchabilityOracle(g)
    if not oracle.is_matchable(g.vertex_mask):
        return ConformalityReport(verdict=False, reason="no perfect matching")
    checked = 0
    for size in range(4, g.n + 1, 2):
        for chosen in itertools.combinations(range(g.n), size):
            mask = sum(1 << v for v in chosen)
            if oracle.without(mask):
                continue
            if any((g.adj[v] & mask).bit_count() < 2 for v in chosen):
                continue
            checked += 1
            order = _spanning_cycle(g, mask)
            if order is not None:
                return ConformalityReport(
                    verdict=False, witness=Cycle.of(order), checked_cycles=checked, reason="non-conformal cycle"
                )
    return ConformalityReport(verdict=True, checked_cycles=checked)


def _spanning_cycle(g: Graph, mask: int) -> Optional[list[int]]:
    """Held-Karp over subsets of `mask`: a cycle through every vertex of mask, or None."""
    members = list(iter_bits(mask))
    start = members[0]
    # ends[sub] = vertices v such that some path from start visits exactly sub and stops at v
    ends: dict[int, int] = {1 << start: 1 << start}
    for sub in _submasks_by_size(mask, start):
        tails = ends.get(sub, 0)
        if not tails:
            continue
        for v in iter_bits(tails):
            for w in iter_bits(g.adj[v] & mask & ~sub):
                grown = sub | (1 << w)
                ends[grown] = ends.get(grown, 0) | (1 << w)
    closing = ends.get(mask, 0) & g.adj[start]
    if not closing:
        return None
    v = (closing & -closing).bit_length() - 1
    sub = mask
    order = [v]
    while v != start:
        prev_sub = sub & ~(1 << v)
        candidates = ends.get(prev_sub, 0) & g.adj[v]
        v = (candidates & -candidates).bit_length() - 1
        sub = prev_sub
        order.append(v)
    return list(reversed(order))


def _submasks_by_size(mask: int, start: int) -> Iterator[int]:
    rest = [v for v in iter_bits(mask) if v != start]
    for size in range(len(rest)):
        for chosen in itertools.combinations(rest, size):
            yield (1 << start) | sum(1 << v for v in chosen)

"""
Perfect-matching engine: existence, enumeration, counting, cover graph,
extendability and factor-criticality.

Witness matchings come from networkx (Hopcroft-Karp on bipartite inputs, the
blossom algorithm otherwise). Repeated existence queries on vertex subsets go
through `MatchabilityOracle`, an exact memoised branching search on bit masks.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import networkx as nx
import numpy as np

from cycleconf.app.domain.errors import GraphError, MatchingError
from cycleconf.app.domain.graph import Edge, Graph, Matching, bipartition, iter_bits, normalize_edge


class MatchabilityOracle:
    """Answers "does G[mask] have a perfect matching" with memoisation per graph."""

    def __init__(self, g: Graph):
        self.g = g
        self._memo: dict[int, bool] = {0: True}

    def is_matchable(self, mask: int) -> bool:
        if mask.bit_count() % 2:
            return False
        return self._solve(mask)

    def without(self, removed: int) -> bool:
        return self.is_matchable(self.g.vertex_mask & ~removed)

    def _solve(self, mask: int) -> bool:
        known = self._memo.get(mask)
        if known is not None:
            return known
        adj = self.g.adj
        pivot, options = -1, 0
        for v in iter_bits(mask):
            nb = adj[v] & mask
            if not nb:
                self._memo[mask] = False
                return False
            if pivot < 0 or nb.bit_count() < options.bit_count():
                pivot, options = v, nb
                if nb.bit_count() == 1:
                    break
        rest = mask & ~(1 << pivot)
        result = any(self._solve(rest & ~(1 << w)) for w in iter_bits(options))
        self._memo[mask] = result
        return result


@dataclass(frozen=True)
class CoverGraph:
    base: Graph
    allowed: tuple[Edge, ...]
    components: tuple[frozenset[int], ...]

    @property
    def excluded(self) -> tuple[Edge, ...]:
        allowed = set(self.allowed)
        return tuple(e for e in self.base.edges() if e not in allowed)

    def as_graph(self) -> Graph:
        return Graph.from_edges(self.base.n, self.allowed)

    def component_graphs(self) -> list[tuple[Graph, list[int]]]:
        cover = self.as_graph()
        return [(cover.induced(sorted(comp)), sorted(comp)) for comp in self.components]


@dataclass(frozen=True)
class Extendability:
    extendable: bool
    counterexample: Optional[Matching] = None
    reason: Optional[str] = None


def find_perfect_matching(g: Graph) -> Optional[Matching]:
    if g.n % 2:
        return None
    if g.n == 0:
        return Matching(edges=())
    nx_graph = g.to_networkx()
    parts = bipartition(g)
    if parts is not None:
        if not parts.is_balanced():
            return None
        mate = nx.bipartite.hopcroft_karp_matching(nx_graph, top_nodes=parts.white)
        pairs = {normalize_edge(u, v) for u, v in mate.items()}
    else:
        pairs = {normalize_edge(u, v) for u, v in nx.max_weight_matching(nx_graph, maxcardinality=True)}
    if 2 * len(pairs) != g.n:
        return None
    return Matching.of(pairs)


def has_perfect_matching(g: Graph) -> bool:
    return find_perfect_matching(g) is not None


def force_edge(g: Graph, e: Sequence[int]) -> Optional[Matching]:
    """A perfect matching containing e: delete both ends, solve, put e back."""
    u, v = g.require_edge(e)
    rest, kept = g.without_vertices((u, v))
    inner = find_perfect_matching(rest)
    if inner is None:
        return None
    return Matching.of([(kept[a], kept[b]) for a, b in inner.edges] + [(u, v)])


def enumerate_perfect_matchings(g: Graph) -> Iterator[Matching]:
    """Each perfect matching once, in lexicographic order of sorted edge lists."""
    if g.n % 2:
        return
    oracle = MatchabilityOracle(g)
    chosen: list[Edge] = []

    def extend(mask: int) -> Iterator[Matching]:
        if not mask:
            yield Matching(edges=tuple(sorted(chosen)))
            return
        v = (mask & -mask).bit_length() - 1
        for w in iter_bits(g.adj[v] & mask):
            rest = mask & ~(1 << v) & ~(1 << w)
            if oracle.is_matchable(rest):
                chosen.append((v, w))
                yield from extend(rest)
                chosen.pop()

    yield from extend(g.vertex_mask)


def count_perfect_matchings(g: Graph) -> int:
    if g.n % 2:
        return 0

    @lru_cache(maxsize=None)
    def count(mask: int) -> int:
        if not mask:
            return 1
        v = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << v)
        return sum(count(rest & ~(1 << w)) for w in iter_bits(g.adj[v] & rest))

    return count(g.vertex_mask)


def cover_graph(g: Graph) -> CoverGraph:
    oracle = MatchabilityOracle(g)
    if not oracle.is_matchable(g.vertex_mask):
        raise MatchingError("graph has no perfect matching", reason="not matchable")
    allowed = tuple(e for e in g.edges() if oracle.without((1 << e[0]) | (1 << e[1])))
    cover = Graph.from_edges(g.n, allowed)
    components = tuple(frozenset(iter_bits(c)) for c in cover.components())
    return CoverGraph(base=g, allowed=allowed, components=components)


def is_matching_covered(g: Graph) -> bool:
    if g.n < 4 or not g.is_connected():
        return False
    oracle = MatchabilityOracle(g)
    if not oracle.is_matchable(g.vertex_mask):
        return False
    return all(oracle.without((1 << u) | (1 << v)) for u, v in g.edges())


def k_matchings(g: Graph, k: int) -> Iterator[Matching]:
    """All matchings with exactly k edges, in lexicographic order of edge lists."""
    edges = g.edges()
    chosen: list[Edge] = []

    def extend(start: int, used: int) -> Iterator[Matching]:
        if len(chosen) == k:
            yield Matching(edges=tuple(chosen))
            return
        for i in range(start, len(edges)):
            u, v = edges[i]
            if (used >> u) & 1 or (used >> v) & 1:
                continue
            chosen.append(edges[i])
            yield from extend(i + 1, used | (1 << u) | (1 << v))
            chosen.pop()

    yield from extend(0, 0)


def is_k_extendable(g: Graph, k: int) -> Extendability:
    if k < 1:
        raise GraphError(f"k must be positive, got {k}")
    if g.n < 2 * k + 2:
        return Extendability(extendable=False, reason=f"fewer than {2 * k + 2} vertices")
    oracle = MatchabilityOracle(g)
    if not oracle.is_matchable(g.vertex_mask):
        return Extendability(extendable=False, reason="no perfect matching")
    for matching in k_matchings(g, k):
        if not oracle.without(matching.vertex_mask):
            return Extendability(extendable=False, counterexample=matching, reason="inextensible matching")
    return Extendability(extendable=True)


def is_factor_critical(g: Graph) -> bool:
    if g.n % 2 == 0:
        return False
    oracle = MatchabilityOracle(g)
    return all(oracle.without(1 << v) for v in range(g.n))


def biadjacency_matrix(g: Graph) -> tuple[np.ndarray, list[int], list[int]]:
    """Rows are white vertices, columns black vertices, both in increasing order."""
    parts = bipartition(g)
    if parts is None:
        raise GraphError("biadjacency matrix needs a bipartite graph", reason="not bipartite")
    whites, blacks = sorted(parts.white), sorted(parts.black)
    matrix = np.zeros((len(whites), len(blacks)), dtype=np.int64)
    col = {b: j for j, b in enumerate(blacks)}
    for i, w in enumerate(whites):
        for b in iter_bits(g.adj[w]):
            matrix[i, col[b]] = 1
    return matrix, whites, blacks


def permanent_biadjacency(g: Graph) -> int:
    """Permanent of the biadjacency matrix by row expansion (memoised on used columns)."""
    matrix, whites, blacks = biadjacency_matrix(g)
    if len(whites) != len(blacks):
        return 0
    size = len(whites)

    @lru_cache(maxsize=None)
    def expand(row: int, used: int) -> int:
        if row == size:
            return 1
        return sum(
            int(matrix[row, j]) * expand(row + 1, used | (1 << j))
            for j in range(size)
            if matrix[row, j] and not (used >> j) & 1
        )

    return expand(0, 0)

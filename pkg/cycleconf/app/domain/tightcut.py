"""
Tight cuts and the tight cut decomposition into bricks and braces.

Tightness is decided without enumerating perfect matchings: for an odd shore
of a matching covered graph every perfect matching crosses the cut an odd
number of times, so the cut is tight exactly when no perfect matching holds
two disjoint cut edges at once.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Optional

from cycleconf.app.domain.errors import GraphError, TightCutError
from cycleconf.app.domain.graph import (
    Edge,
    Graph,
    are_isomorphic,
    bipartition,
    contract_shore,
    iter_bits,
    mask_of,
    vertex_connectivity,
)
from cycleconf.app.domain.matching import (
    MatchabilityOracle,
    enumerate_perfect_matchings,
    is_k_extendable,
    is_matching_covered,
)

logger = logging.getLogger(__name__)

LeafClass = Literal["brick", "brace"]
Classification = Literal["brick", "brace", "neither"]

_C4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])


@dataclass(frozen=True)
class TightCut:
    shore: frozenset[int]
    cut_edges: tuple[Edge, ...]
    n: int

    @property
    def trivial(self) -> bool:
        return len(self.shore) == 1 or self.n - len(self.shore) == 1

    @property
    def complement(self) -> frozenset[int]:
        return frozenset(range(self.n)) - self.shore

    @classmethod
    def of(cls, g: Graph, shore: Iterable[int]) -> TightCut:
        """Build a cut after checking that it is tight in g."""
        x = frozenset(shore)
        if not is_tight_cut(g, x):
            raise TightCutError(f"cut around {sorted(x)} is not tight", reason="not tight")
        return cls(shore=x, cut_edges=tuple(cut_edges(g, x)), n=g.n)


@dataclass(frozen=True)
class TraceNode:
    """One contraction step: `shore` is None at a leaf."""

    graph: Graph
    shore: Optional[frozenset[int]] = None
    children: tuple[TraceNode, ...] = ()


@dataclass(frozen=True)
class Leaf:
    graph: Graph
    kind: LeafClass


@dataclass(frozen=True)
class DecompositionResult:
    leaves: tuple[Leaf, ...]
    trace: TraceNode = field(compare=False)

    @property
    def braces(self) -> list[Graph]:
        return [leaf.graph for leaf in self.leaves if leaf.kind == "brace"]

    @property
    def bricks(self) -> list[Graph]:
        return [leaf.graph for leaf in self.leaves if leaf.kind == "brick"]

    def leaf_certificates(self) -> list[tuple[str, str]]:
        """Sorted (class, canonical certificate) pairs; equal for isomorphic decompositions."""
        from cycleconf.app.domain.canonical import canonical_form

        return sorted((leaf.kind, canonical_form(leaf.graph).hex()) for leaf in self.leaves)


def _shore_mask(g: Graph, x: Iterable[int]) -> int:
    mask = mask_of(x)
    if mask == 0 or mask & ~g.vertex_mask:
        raise GraphError("shore must be a non-empty set of vertices of the graph", reason="invalid shore")
    return mask


def cut_edges(g: Graph, x: Iterable[int]) -> list[Edge]:
    mask = _shore_mask(g, x)
    return [(u, v) for u, v in g.edges() if ((mask >> u) & 1) != ((mask >> v) & 1)]


def _require_matching_covered(g: Graph) -> None:
    if not is_matching_covered(g):
        raise TightCutError("tight cuts are only defined in matching covered graphs", reason="precondition")


def _tight(g: Graph, mask: int, oracle: MatchabilityOracle) -> bool:
    if mask.bit_count() % 2 == 0 or (g.vertex_mask & ~mask).bit_count() % 2 == 0:
        return False
    crossing = [(u, v) for u, v in g.edges() if ((mask >> u) & 1) != ((mask >> v) & 1)]
    for (a, b), (c, d) in itertools.combinations(crossing, 2):
        if len({a, b, c, d}) < 4:
            continue
        if oracle.without((1 << a) | (1 << b) | (1 << c) | (1 << d)):
            return False
    return True


def is_tight_cut(g: Graph, x: Iterable[int]) -> bool:
    mask = _shore_mask(g, x)
    _require_matching_covered(g)
    return _tight(g, mask, MatchabilityOracle(g))


def is_tight_cut_bruteforce(g: Graph, x: Iterable[int]) -> bool:
    """Every perfect matching, enumerated, meets the cut exactly once."""
    mask = _shore_mask(g, x)
    _require_matching_covered(g)
    for matching in enumerate_perfect_matchings(g):
        crossings = sum(1 for u, v in matching.edges if ((mask >> u) & 1) != ((mask >> v) & 1))
        if crossings != 1:
            return False
    return True


def _candidate_shores(g: Graph) -> Iterator[int]:
    """Odd shores with both sides of size >= 3, smaller side first, inducing a connected subgraph."""
    for size in range(3, g.n // 2 + 1, 2):
        for chosen in itertools.combinations(range(g.n), size):
            mask = mask_of(chosen)
            if len(g.components(mask)) == 1:
                yield mask


def find_nontrivial_tight_cut(g: Graph, rng: Optional[random.Random] = None) -> Optional[TightCut]:
    """
    The first nontrivial tight cut in increasing (size, lexicographic) shore order.

    With `rng` the candidate order is shuffled instead. Cubic bipartite
    3-connected graphs go through the induced-matching characterisation.
    """
    _require_matching_covered(g)
    if _cubic_structural_applies(g):
        cuts = _structural_cuts(g)
        if rng is not None and cuts:
            return rng.choice(cuts)
        return cuts[0] if cuts else None
    oracle = MatchabilityOracle(g)
    candidates: Iterable[int] = _candidate_shores(g)
    if rng is not None:
        candidates = list(candidates)
        rng.shuffle(candidates)
    for mask in candidates:
        if _tight(g, mask, oracle):
            shore = frozenset(iter_bits(mask))
            return TightCut(shore=shore, cut_edges=tuple(cut_edges(g, shore)), n=g.n)
    return None


def tight_cut_contractions(g: Graph, cut: TightCut) -> tuple[Graph, Graph]:
    """(G[X -> c], G[complement -> c]); both are checked to be matching covered."""
    if not is_tight_cut(g, cut.shore):
        raise TightCutError(f"cut around {sorted(cut.shore)} is not tight", reason="not tight")
    first = contract_shore(g, cut.shore).graph
    second = contract_shore(g, cut.complement).graph
    for side in (first, second):
        if not is_matching_covered(side):
            raise TightCutError("tight cut contraction is not matching covered", reason="not tight")
    return first, second


def decompose(g: Graph, rng: Optional[random.Random] = None) -> DecompositionResult:
    _require_matching_covered(g)
    leaves: list[Leaf] = []

    def split(h: Graph) -> TraceNode:
        cut = find_nontrivial_tight_cut(h, rng=rng)
        if cut is None:
            kind: LeafClass = "brace" if bipartition(h) is not None else "brick"
            leaves.append(Leaf(graph=h, kind=kind))
            return TraceNode(graph=h)
        first, second = tight_cut_contractions(h, cut)
        logger.debug(f"Split {h.n}-vertex graph along shore {sorted(cut.shore)}")
        return TraceNode(graph=h, shore=cut.shore, children=(split(first), split(second)))

    trace = split(g)
    logger.info(
        f"Decomposed {g.name or 'graph'}: {sum(leaf.kind == 'brace' for leaf in leaves)} braces, "
        f"{sum(leaf.kind == 'brick' for leaf in leaves)} bricks"
    )
    return DecompositionResult(leaves=tuple(leaves), trace=trace)


def classify(g: Graph) -> Classification:
    if g.n == 4 and are_isomorphic(g, _C4):
        return "brace"
    if not g.is_connected():
        return "neither"
    if bipartition(g) is not None:
        if g.n >= 4 and is_k_extendable(g, 2).extendable:
            return "brace"
        return "neither"
    if is_matching_covered(g) and find_nontrivial_tight_cut(g) is None:
        return "brick"
    return "neither"


def is_brace(g: Graph) -> bool:
    return classify(g) == "brace"


def is_brick(g: Graph) -> bool:
    return classify(g) == "brick"


def _cubic_structural_applies(g: Graph) -> bool:
    return g.is_cubic() and bipartition(g) is not None and g.n >= 4 and vertex_connectivity(g) >= 3


def cubic_tight_cut_structural(g: Graph) -> list[TightCut]:
    """All nontrivial tight cuts of a cubic bipartite 3-connected graph: its 3-edge induced matching cuts."""
    if not _cubic_structural_applies(g):
        raise TightCutError("structural tight cut search needs a cubic, bipartite, 3-connected graph", reason="precondition")
    return _structural_cuts(g)


def _structural_cuts(g: Graph) -> list[TightCut]:
    found: dict[frozenset[int], TightCut] = {}
    for triple in itertools.combinations(g.edges(), 3):
        ends = [v for e in triple for v in e]
        if len(set(ends)) < 6:
            continue
        if any(g.has_edge(a, b) for (e, f) in itertools.combinations(triple, 2) for a in e for b in f):
            continue
        pruned = g.with_edges(remove=triple)
        parts = pruned.components()
        if len(parts) != 2:
            continue
        side = min(parts, key=lambda mask: (mask.bit_count(), mask))
        if side.bit_count() % 2 == 0 or side.bit_count() < 3:
            continue
        shore = frozenset(iter_bits(side))
        if len(cut_edges(g, shore)) != 3:
            continue
        found.setdefault(shore, TightCut(shore=shore, cut_edges=tuple(sorted(triple)), n=g.n))
    return [found[s] for s in sorted(found, key=lambda s: (len(s), sorted(s)))]

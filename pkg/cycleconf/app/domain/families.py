"""
Named graph families and graph operations.

Vertex numbering is part of each constructor's contract: ladders put u_i at
i-1 and v_i at k+i-1, wheels put the hub last, and complete bipartite graphs
list whites before blacks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from cycleconf.app.domain.errors import FamilyError
from cycleconf.app.domain.graph import (
    Cycle,
    Edge,
    Graph,
    bipartition,
    normalize_edge,
)

CUBE_FACE = (0, 1, 3, 2)

SQUARE_BRACES_LABELS = ("A0", "A1", "A2", "A3", "B0", "B1", "B2", "B3")
SQUARE_BRACES_SHORE = frozenset({0, 1, 4})

_HEAWOOD_CHORDS = ((1, 6), (2, 11), (3, 8), (4, 13), (5, 10), (7, 12), (9, 14))


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FamilyError(message)


def complete_bipartite(s: int, t: int) -> Graph:
    _require(s >= 1 and t >= 1, f"K_{{s,t}} needs s, t >= 1, got {s}, {t}")
    edges = [(w, s + b) for w in range(s) for b in range(t)]
    return Graph.from_edges(s + t, edges, name=f"K{s},{t}")


def complete_graph(n: int) -> Graph:
    _require(n >= 1, f"K_n needs n >= 1, got {n}")
    return Graph.from_edges(n, itertools.combinations(range(n), 2), name=f"K{n}")


def cycle_graph(n: int) -> Graph:
    _require(n >= 3, f"C_n needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def path_graph(n: int) -> Graph:
    _require(n >= 1, f"P_n needs n >= 1, got {n}")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def cube_graph() -> Graph:
    """Q3 on 3-bit labels; CUBE_FACE is the 4-face with the top bit clear."""
    edges = [(v, v ^ (1 << bit)) for v in range(8) for bit in range(3) if v < v ^ (1 << bit)]
    return Graph.from_edges(8, edges, name="Q3")


def _ladder_edges(k: int) -> list[Edge]:
    edges = [(i, i + 1) for i in range(k - 1)]
    edges += [(k + i, k + i + 1) for i in range(k - 1)]
    edges += [(i, k + i) for i in range(k)]
    return edges


def ladder(k: int) -> Graph:
    _require(k >= 1, f"ladder needs k >= 1 rungs, got {k}")
    return Graph.from_edges(2 * k, _ladder_edges(k), name=f"L{k}")


def moebius_ladder(k: int) -> Graph:
    _require(k >= 3, f"Moebius ladder needs k >= 3 rungs, got {k}")
    edges = _ladder_edges(k) + [(0, 2 * k - 1), (k, k - 1)]
    return Graph.from_edges(2 * k, edges, name=f"M{k}")


def odd_prism(k: int) -> Graph:
    _require(k >= 3 and k % 2 == 1, f"odd prism needs odd k >= 3, got {k}")
    edges = _ladder_edges(k) + [(0, k - 1), (k, 2 * k - 1)]
    return Graph.from_edges(2 * k, edges, name=f"Prism{k}")


def _wheel(cycle_len: int, name: str) -> Graph:
    hub = cycle_len
    edges = [(i, (i + 1) % cycle_len) for i in range(cycle_len)]
    edges += [(i, hub) for i in range(cycle_len)]
    return Graph.from_edges(cycle_len + 1, edges, name=name)


def odd_wheel(cycle_len: int) -> Graph:
    _require(cycle_len >= 3 and cycle_len % 2 == 1, f"odd wheel needs an odd rim >= 3, got {cycle_len}")
    return _wheel(cycle_len, f"W{cycle_len}")


def even_wheel(cycle_len: int) -> Graph:
    _require(cycle_len >= 4 and cycle_len % 2 == 0, f"even wheel needs an even rim >= 4, got {cycle_len}")
    return _wheel(cycle_len, f"W{cycle_len}")


def heawood() -> Graph:
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(a - 1, b - 1) for a, b in _HEAWOOD_CHORDS]
    return Graph.from_edges(14, edges, name="Heawood")


def heawood_witness_cycle() -> Cycle:
    """Non-conformal 8-cycle of the Heawood graph through 2, 11, 10, 5, 4, 13, 14, 1 (1-indexed)."""
    return Cycle.of([v - 1 for v in (2, 11, 10, 5, 4, 13, 14, 1)])


def petersen() -> Graph:
    """Inner pentagram on 0..4, outer 5-cycle on 5..9, spokes i to i+5."""
    inner = [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]
    outer = [(5 + i, 5 + (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, inner + outer + spokes, name="Petersen")


def petersen_witness_cycle() -> Cycle:
    """Non-conformal 6-cycle: its complement is a star on four vertices."""
    return Cycle.of([v - 1 for v in (3, 8, 9, 4, 2, 5)])


def moebius_witness_cycle(k: int) -> Cycle:
    """
    Even cycle u_1 v_1 v_2 v_3 u_3 ... u_k v_k of M_k for odd k >= 5.

    Every neighbour of u_2 lies on it, so u_2 is isolated once it is deleted.
    """
    _require(k >= 5 and k % 2 == 1, f"witness cycle exists for odd k >= 5, got {k}")
    seq = [0, k, k + 1, k + 2] + list(range(2, k)) + [2 * k - 1]
    return Cycle.of(seq)


@dataclass(frozen=True)
class GluedKll:
    """
    Two copies of K_{l,l}, one missing a black vertex and one missing a white
    vertex, with every white of the first joined to every black of the second.

    Index map: w_i^1 -> i-1, b_i^1 -> l+i-1, b_i^2 -> 2l-2+i, w_i^2 -> 3l-2+i.
    The cut of the joining edges is tight; `witness_cycle` is non-conformal for
    l >= 4 and None for l = 3.
    """

    graph: Graph
    l: int
    shore: frozenset[int]
    cut: tuple[Edge, ...]
    witness_cycle: Optional[Cycle]


def glued_kll(l: int) -> GluedKll:
    _require(l >= 3, f"glued K_{{l,l}} needs l >= 3, got {l}")

    def w1(i: int) -> int:
        return i - 1

    def b1(i: int) -> int:
        return l + i - 1

    def b2(i: int) -> int:
        return 2 * l - 2 + i

    def w2(i: int) -> int:
        return 3 * l - 2 + i

    first = [(w1(i), b1(j)) for i in range(1, l + 1) for j in range(1, l)]
    second = [(w2(i), b2(j)) for i in range(1, l) for j in range(1, l + 1)]
    joining = [normalize_edge(w1(i), b2(j)) for i in range(1, l + 1) for j in range(1, l + 1)]
    graph = Graph.from_edges(4 * l - 2, first + second + joining, name=f"glued-K{l},{l}")
    witness = None
    if l >= 4:
        witness = Cycle.of([
            b1(1), w1(1), b2(1), w2(1), b2(l - 1), w1(l - 1),
            b1(l - 1), w1(l), b2(l), w2(l - 1), b2(2), w1(2),
        ])
    shore = frozenset(range(2 * l - 1))
    return GluedKll(graph=graph, l=l, shore=shore, cut=tuple(sorted(joining)), witness_cycle=witness)


@dataclass(frozen=True)
class SquareBraces:
    """Planar bipartite graph whose braces are all C4, with a tight cut of size six."""

    graph: Graph
    shore: frozenset[int]
    labels: tuple[str, ...] = SQUARE_BRACES_LABELS

    def vertex(self, label: str) -> int:
        return self.labels.index(label)


def square_braces_graph() -> SquareBraces:
    index = {label: i for i, label in enumerate(SQUARE_BRACES_LABELS)}
    pairs = [
        ("A0", "B0"), ("A0", "B1"), ("A0", "B2"), ("A0", "B3"),
        ("A1", "B0"), ("A1", "B1"), ("A1", "B2"), ("A1", "B3"),
        ("A2", "B2"), ("A2", "B3"), ("A3", "B1"), ("A3", "B3"),
    ]
    graph = Graph.from_edges(8, [(index[a], index[b]) for a, b in pairs], name="square-braces")
    return SquareBraces(graph=graph, shore=SQUARE_BRACES_SHORE)


def square_braces_witness_cycle() -> Cycle:
    """A0 B1 A1 B2 A2 B3: its deletion leaves A3 and B0, which are not adjacent."""
    index = {label: i for i, label in enumerate(SQUARE_BRACES_LABELS)}
    return Cycle.of([index[x] for x in ("A0", "B1", "A1", "B2", "A2", "B3")])


def bisubdivide(g: Graph, e: Sequence[int], pairs: int) -> Graph:
    """Replace e = uv by a u-v path with 2*pairs fresh internal vertices appended at the end."""
    _require(pairs >= 0, f"pairs must be non-negative, got {pairs}")
    u, v = g.require_edge(e)
    if pairs == 0:
        return g
    fresh = list(range(g.n, g.n + 2 * pairs))
    chain = [u, *fresh, v]
    grown = g.add_vertices(2 * pairs)
    return grown.with_edges(add=zip(chain, chain[1:]), remove=[(u, v)])


def three_path_op(g: Graph, e: Sequence[int]) -> Graph:
    """Add fresh x1, x2 and the path u x1 x2 v; e itself is kept."""
    u, v = g.require_edge(e)
    x1, x2 = g.n, g.n + 1
    return g.add_vertices(2).with_edges(add=[(u, x1), (x1, x2), (x2, v)])


@dataclass(frozen=True)
class TrisumSpec:
    """
    Three bipartite summands sharing a 4-cycle. `c[i]` lists the cycle in
    summand i in cyclic order, corresponding position by position across
    summands. `s` holds positions j of the deleted cycle edges c[j] c[j+1].
    """

    g1: Graph
    g2: Graph
    g3: Graph
    c: tuple[tuple[int, int, int, int], tuple[int, int, int, int], tuple[int, int, int, int]]
    s: frozenset[int] = frozenset()

    @property
    def summands(self) -> tuple[Graph, Graph, Graph]:
        return self.g1, self.g2, self.g3


def _check_trisum(spec: TrisumSpec) -> None:
    _require(len(spec.c) == 3, "trisum needs a 4-cycle for each of the three summands")
    _require(spec.s <= {0, 1, 2, 3}, f"deleted cycle edges must be positions 0..3, got {sorted(spec.s)}")
    for i, (g, cyc) in enumerate(zip(spec.summands, spec.c), 1):
        _require(len(cyc) == 4 and len(set(cyc)) == 4, f"summand {i}: shared cycle needs four distinct vertices")
        _require(all(0 <= v < g.n for v in cyc), f"summand {i}: shared cycle vertex out of range")
        _require(
            all(g.has_edge(cyc[j], cyc[(j + 1) % 4]) for j in range(4)),
            f"summand {i}: designated vertices do not span a 4-cycle",
        )
        _require(g.n > 4, f"summand {i} has no vertex outside the shared cycle")
        _require(bipartition(g) is not None, f"summand {i} is not bipartite")


def trisum(spec: TrisumSpec) -> Graph:
    """
    Union of the summands identified along the shared cycle, minus S.

    The shared cycle takes ids 0..3 in the order of `c`; the remaining vertices
    of g1, g2 and g3 follow in that order, each summand keeping its relative
    order.
    """
    _check_trisum(spec)
    edges: set[Edge] = set()
    offset = 4
    for g, cyc in zip(spec.summands, spec.c):
        mapping = {v: j for j, v in enumerate(cyc)}
        for v in range(g.n):
            if v not in mapping:
                mapping[v] = offset
                offset += 1
        edges.update(normalize_edge(mapping[a], mapping[b]) for a, b in g.edges())
    for j in spec.s:
        edges.discard(normalize_edge(j, (j + 1) % 4))
    return Graph.from_edges(offset, sorted(edges), name="trisum")


def cube_trisum(s: Sequence[int] = ()) -> Graph:
    """Three copies of Q3 glued at CUBE_FACE."""
    q3 = cube_graph()
    return trisum(TrisumSpec(g1=q3, g2=q3, g3=q3, c=(CUBE_FACE,) * 3, s=frozenset(s)))


@dataclass(frozen=True)
class Splice:
    graph: Graph
    shore: frozenset[int]
    cut: tuple[Edge, ...]


def splice(
    g1: Graph,
    v1: int,
    g2: Graph,
    v2: int,
    pairing: Optional[Sequence[tuple[int, int]]] = None,
) -> Splice:
    """
    Delete v1 from g1 and v2 from g2 and join their former neighbourhoods by
    `pairing`, a list of (neighbour of v1, neighbour of v2). Without a pairing
    both neighbourhoods are matched in increasing order. Vertices of g1 - v1
    come first; `shore` is that side and `cut` the new edges.
    """
    _require(0 <= v1 < g1.n and 0 <= v2 < g2.n, "splice vertex out of range")
    n1, n2 = g1.neighbours(v1), g2.neighbours(v2)
    _require(len(n1) == len(n2), f"splice needs equal degrees, got {len(n1)} and {len(n2)}")
    if pairing is None:
        pairing = list(zip(n1, n2))
    left = [a for a, _ in pairing]
    right = [b for _, b in pairing]
    _require(len(pairing) == len(n1), "pairing must cover every neighbour exactly once")
    _require(sorted(left) == n1, "pairing repeats or misses a neighbour of v1 and would create parallel edges")
    _require(sorted(right) == n2, "pairing repeats or misses a neighbour of v2 and would create parallel edges")
    h1, kept1 = g1.without_vertices([v1])
    h2, kept2 = g2.without_vertices([v2])
    at1 = {old: new for new, old in enumerate(kept1)}
    at2 = {old: new + h1.n for new, old in enumerate(kept2)}
    edges = list(h1.edges()) + [(a + h1.n, b + h1.n) for a, b in h2.edges()]
    cut = sorted(normalize_edge(at1[a], at2[b]) for a, b in pairing)
    graph = Graph.from_edges(h1.n + h2.n, edges + cut, name="splice")
    return Splice(graph=graph, shore=frozenset(range(h1.n)), cut=tuple(cut))


@dataclass(frozen=True)
class Family:
    params: tuple[str, ...]
    build: Callable[..., Graph]
    summary: str


FAMILIES: dict[str, Family] = {
    "k": Family(("s", "t"), complete_bipartite, "complete bipartite graph K_{s,t}"),
    "ladder": Family(("k",), ladder, "ladder with k rungs"),
    "moebius": Family(("k",), moebius_ladder, "Moebius ladder with k rungs"),
    "prism": Family(("k",), odd_prism, "odd prism with k rungs"),
    "odd-wheel": Family(("l",), odd_wheel, "wheel over an odd rim"),
    "even-wheel": Family(("l",), even_wheel, "wheel over an even rim"),
    "heawood": Family((), heawood, "Heawood graph"),
    "petersen": Family((), petersen, "Petersen graph"),
    "glued-kll": Family(("l",), lambda l: glued_kll(l).graph, "two glued copies of K_{l,l}"),
    "square-braces": Family((), lambda: square_braces_graph().graph, "planar bipartite graph whose braces are all C4"),
    "cube": Family((), cube_graph, "cube Q3"),
    "cube-trisum": Family((), cube_trisum, "trisum of three cubes at a 4-face"),
    "cycle": Family(("n",), cycle_graph, "cycle C_n"),
    "complete": Family(("n",), complete_graph, "complete graph K_n"),
    "path": Family(("n",), path_graph, "path on n vertices"),
}


def family_names() -> list[str]:
    return sorted(FAMILIES)


def build_family(name: str, params: Sequence[int] = ()) -> Graph:
    family = FAMILIES.get(name)
    if family is None:
        raise FamilyError(f"unknown family {name!r}; choose from {', '.join(family_names())}", reason="unknown family")
    if len(params) != len(family.params):
        expected = " ".join(p.upper() for p in family.params) or "no parameters"
        raise FamilyError(f"family {name!r} takes {expected}, got {len(params)} values")
    graph = family.build(*params)
    label = name if not params else f"{name}-{'-'.join(str(p) for p in params)}"
    return graph.renamed(label)


def fixture_corpus() -> dict[str, Graph]:
    """The named graphs used throughout the test suite and written by the seed script."""
    corpus = {
        "C4": cycle_graph(4),
        "C6": cycle_graph(6),
        "K33": complete_bipartite(3, 3),
        "K44": complete_bipartite(4, 4),
        "L3": ladder(3),
        "L4": ladder(4),
        "M3": moebius_ladder(3),
        "M4": moebius_ladder(4),
        "M5": moebius_ladder(5),
        "Prism3": odd_prism(3),
        "Prism5": odd_prism(5),
        "W3": odd_wheel(3),
        "W5": odd_wheel(5),
        "W4": even_wheel(4),
        "Q3": cube_graph(),
        "Heawood": heawood(),
        "Petersen": petersen(),
        "square-braces": square_braces_graph().graph,
        "glued-K4,4": glued_kll(4).graph,
        "splice-K33": splice(complete_bipartite(3, 3), 0, complete_bipartite(3, 3), 3).graph,
        "C4+3path": three_path_op(cycle_graph(4), (0, 1)),
    }
    return {name: g.renamed(name) for name, g in corpus.items()}

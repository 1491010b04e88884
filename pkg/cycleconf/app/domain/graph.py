"""
Core graph carrier and structural predicates.

Graphs are simple and undirected over dense vertex ids 0..n-1, stored as one
adjacency bit set per vertex. Instances are immutable; every operation returns
a new graph.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Optional, Sequence

import networkx as nx

from cycleconf.app.domain.errors import GraphError

Edge = tuple[int, int]
Parity = Literal["all", "even", "odd"]


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bits of `mask` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    name: Optional[str] = field(default=None, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], name: Optional[str] = None) -> Graph:
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        adj = [0] * n
        for edge in edges:
            u, v = edge
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} has an endpoint outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n=n, adj=tuple(adj), name=name)

    @classmethod
    def empty(cls, n: int, name: Optional[str] = None) -> Graph:
        return cls(n=n, adj=(0,) * n, name=name)

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph, name: Optional[str] = None) -> Graph:
        nodes = sorted(nx_graph.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        edges = [(index[u], index[v]) for u, v in nx_graph.edges() if u != v]
        return cls.from_edges(len(nodes), edges, name=name)

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def neighbours(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool((self.adj[u] >> v) & 1)

    def edges(self) -> list[Edge]:
        """All edges (u, v) with u < v in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def require_edge(self, e: Sequence[int]) -> Edge:
        u, v = e
        if not self.has_edge(u, v):
            raise GraphError(f"edge {u}-{v} is not in the graph", reason="edge absent")
        return normalize_edge(u, v)

    def is_regular(self, d: Optional[int] = None) -> bool:
        degs = set(self.degrees())
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def is_cubic(self) -> bool:
        return self.n > 0 and self.is_regular(3)

    def components(self, within: Optional[int] = None) -> list[int]:
        """Vertex masks of the connected components of G[within]."""
        remaining = self.vertex_mask if within is None else within
        found = []
        while remaining:
            start = remaining & -remaining
            comp = start
            frontier = start
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.adj[v]
                nxt &= remaining & ~comp
                comp |= nxt
                frontier = nxt
            found.append(comp)
            remaining &= ~comp
        return found

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def without_vertices(self, removed: Iterable[int]) -> tuple[Graph, list[int]]:
        """G - removed, relabelled in increasing order; second value lists the kept old ids."""
        gone = mask_of(removed)
        kept = [v for v in range(self.n) if not (gone >> v) & 1]
        return self.induced(kept), kept

    def induced(self, kept: Sequence[int]) -> Graph:
        index = {v: i for i, v in enumerate(kept)}
        edges = [
            (index[u], index[v])
            for u in kept
            for v in iter_bits(self.adj[u])
            if v in index and u < v
        ]
        return Graph.from_edges(len(kept), edges)

    def with_edges(self, add: Iterable[Edge] = (), remove: Iterable[Edge] = ()) -> Graph:
        adj = list(self.adj)
        for u, v in remove:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        for u, v in add:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n=self.n, adj=tuple(adj), name=self.name)

    def add_vertices(self, k: int) -> Graph:
        return Graph(n=self.n + k, adj=self.adj + (0,) * k, name=self.name)

    def relabel(self, order: Sequence[int]) -> Graph:
        """New graph whose vertex i is old vertex order[i]."""
        index = {old: new for new, old in enumerate(order)}
        return Graph.from_edges(self.n, [(index[u], index[v]) for u, v in self.edges()], name=self.name)

    def renamed(self, name: Optional[str]) -> Graph:
        return Graph(n=self.n, adj=self.adj, name=name)

    def is_cycle(self, cycle: Cycle) -> bool:
        seq = cycle.vertices
        if len(seq) < 3 or len(set(seq)) != len(seq):
            return False
        if any(not 0 <= v < self.n for v in seq):
            return False
        return all(self.has_edge(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq)))

    def is_path(self, path: Path) -> bool:
        seq = path.vertices
        if not seq or len(set(seq)) != len(seq):
            return False
        if any(not 0 <= v < self.n for v in seq):
            return False
        return all(self.has_edge(a, b) for a, b in zip(seq, seq[1:]))


@dataclass(frozen=True)
class Bipartition:
    white: frozenset[int]
    black: frozenset[int]

    def colour(self, v: int) -> Literal["white", "black"]:
        return "white" if v in self.white else "black"

    @property
    def white_mask(self) -> int:
        return mask_of(self.white)

    @property
    def black_mask(self) -> int:
        return mask_of(self.black)

    def is_balanced(self) -> bool:
        return len(self.white) == len(self.black)


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...]

    @classmethod
    def of(cls, edges: Iterable[Sequence[int]]) -> Matching:
        normalized = sorted(normalize_edge(u, v) for u, v in edges)
        seen = 0
        for u, v in normalized:
            if (seen >> u) & 1 or (seen >> v) & 1:
                raise GraphError(f"edges of a matching must be disjoint, {u}-{v} overlaps")
            seen |= (1 << u) | (1 << v)
        return cls(edges=tuple(normalized))

    @property
    def vertex_mask(self) -> int:
        return mask_of(v for e in self.edges for v in e)

    def __len__(self) -> int:
        return len(self.edges)

    def is_in(self, g: Graph) -> bool:
        return all(g.has_edge(u, v) for u, v in self.edges)

    def is_perfect_in(self, g: Graph) -> bool:
        return self.is_in(g) and self.vertex_mask == g.vertex_mask


@dataclass(frozen=True)
class Cycle:
    """A cycle in canonical form: starts at its minimum vertex, second vertex is the smaller neighbour."""

    vertices: tuple[int, ...]

    @classmethod
    def of(cls, sequence: Sequence[int]) -> Cycle:
        seq = list(sequence)
        if len(seq) < 3:
            raise GraphError(f"a cycle needs at least 3 vertices, got {len(seq)}")
        if len(set(seq)) != len(seq):
            raise GraphError("cycle vertices must be distinct")
        i = seq.index(min(seq))
        seq = seq[i:] + seq[:i]
        if seq[1] > seq[-1]:
            seq = [seq[0]] + seq[:0:-1]
        return cls(vertices=tuple(seq))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def is_even(self) -> bool:
        return len(self.vertices) % 2 == 0

    @property
    def vertex_mask(self) -> int:
        return mask_of(self.vertices)

    def traversal(self) -> list[Edge]:
        """Ordered (tail, head) pairs along the stored direction."""
        seq = self.vertices
        return [(seq[i], seq[(i + 1) % len(seq)]) for i in range(len(seq))]

    def edges(self) -> list[Edge]:
        return sorted(normalize_edge(u, v) for u, v in self.traversal())


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @property
    def internal(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def is_trivial(self) -> bool:
        return len(self.vertices) == 1


@dataclass(frozen=True)
class Contraction:
    graph: Graph
    vertex: int
    mapping: dict[int, int]


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    witness: Optional[tuple[Edge, ...]] = None
    kind: Optional[Literal["K5", "K33"]] = None


def bipartition(g: Graph) -> Optional[Bipartition]:
    """2-colouring with the least vertex of every component white, or None."""
    colour = [-1] * g.n
    for comp in g.components():
        start = (comp & -comp).bit_length() - 1
        colour[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in iter_bits(g.adj[v]):
                if colour[w] == -1:
                    colour[w] = 1 - colour[v]
                    stack.append(w)
                elif colour[w] == colour[v]:
                    return None
    return Bipartition(
        white=frozenset(v for v in range(g.n) if colour[v] == 0),
        black=frozenset(v for v in range(g.n) if colour[v] == 1),
    )


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def vertex_connectivity(g: Graph) -> int:
    if g.n < 2:
        raise GraphError("vertex connectivity needs at least 2 vertices", reason="degenerate")
    return nx.node_connectivity(g.to_networkx())


def enumerate_cycles(g: Graph, parity: Parity = "all") -> Iterator[Cycle]:
    """
    Every cycle exactly once, in lexicographic order of canonical vertex sequences.

    Backtracking from each anchor s over vertices larger than s; a path closes
    into a cycle when its last vertex is adjacent to s and its second vertex is
    smaller than its last.
    """
    want = {"all": None, "even": 0, "odd": 1}[parity]
    for s in range(g.n):
        higher = g.vertex_mask & ~((1 << (s + 1)) - 1)
        if (g.adj[s] & higher).bit_count() < 2:
            continue
        yield from _cycles_at(g, s, higher, want)


def _cycles_at(g: Graph, s: int, higher: int, want: Optional[int]) -> Iterator[Cycle]:
    path = [s]

    def extend(v: int, used: int) -> Iterator[Cycle]:
        if len(path) >= 3 and (g.adj[v] >> s) & 1 and path[1] < path[-1]:
            if want is None or len(path) % 2 == want:
                yield Cycle(vertices=tuple(path))
        for w in iter_bits(g.adj[v] & higher & ~used):
            path.append(w)
            yield from extend(w, used | (1 << w))
            path.pop()

    yield from extend(s, 1 << s)


def girth(g: Graph) -> Optional[int]:
    return min((len(c) for c in enumerate_cycles(g)), default=None)


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m or sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    from cycleconf.app.domain.canonical import canonical_form

    return canonical_form(g1) == canonical_form(g2)


def contract_shore(g: Graph, shore: Iterable[int]) -> Contraction:
    """G[X -> c]: contract X into a new last vertex c, dropping loops and parallel edges."""
    x = mask_of(shore)
    if x == 0 or x == g.vertex_mask or x & ~g.vertex_mask:
        raise GraphError("shore must be a non-empty proper vertex subset", reason="invalid shore")
    kept = [v for v in range(g.n) if not (x >> v) & 1]
    mapping = {v: i for i, v in enumerate(kept)}
    c = len(kept)
    edges = [(mapping[u], mapping[v]) for u, v in g.edges() if u in mapping and v in mapping]
    reached = 0
    for v in iter_bits(x):
        reached |= g.adj[v]
    edges.extend((mapping[w], c) for w in iter_bits(reached & ~x))
    for v in iter_bits(x):
        mapping[v] = c
    return Contraction(graph=Graph.from_edges(c + 1, edges), vertex=c, mapping=mapping)


def is_planar(g: Graph) -> PlanarityResult:
    planar, certificate = nx.check_planarity(g.to_networkx(), counterexample=True)
    if planar:
        return PlanarityResult(planar=True)
    witness = tuple(sorted(normalize_edge(u, v) for u, v in certificate.edges()))
    kind = verify_kuratowski_witness(witness)
    return PlanarityResult(planar=False, witness=witness, kind=kind)


def verify_kuratowski_witness(edges: Iterable[Edge]) -> Literal["K5", "K33"]:
    """Check that the edge set is a subdivision of K5 or K_{3,3}; raise GraphError otherwise."""
    nbrs: dict[int, set[int]] = {}
    for u, v in edges:
        if u == v:
            raise GraphError("Kuratowski witness contains a loop")
        nbrs.setdefault(u, set()).add(v)
        nbrs.setdefault(v, set()).add(u)
    if any(len(ns) not in (2, 3, 4) for ns in nbrs.values()):
        raise GraphError("Kuratowski witness has a vertex of degree outside 2..4")
    branch = sorted(v for v, ns in nbrs.items() if len(ns) >= 3)
    branch_set = set(branch)
    pairs = []
    visited_smooth: set[int] = set()
    for b in branch:
        for first in nbrs[b]:
            prev, cur = b, first
            while cur not in branch_set:
                visited_smooth.add(cur)
                nxt = next(iter(nbrs[cur] - {prev}))
                prev, cur = cur, nxt
            if cur == b:
                raise GraphError("Kuratowski witness has a closed chain at a branch vertex")
            if b < cur:
                pairs.append((b, cur))
    smooth = {v for v, ns in nbrs.items() if len(ns) == 2}
    if smooth - visited_smooth:
        raise GraphError("Kuratowski witness has a component without branch vertices")
    if len(set(pairs)) != len(pairs):
        raise GraphError("Kuratowski witness branch graph has parallel connections")
    degs = {len(nbrs[b]) for b in branch}
    if len(branch) == 5 and degs == {4} and len(pairs) == 10:
        return "K5"
    if len(branch) == 6 and degs == {3} and len(pairs) == 9:
        reduced = Graph.from_edges(6, [(branch.index(a), branch.index(b)) for a, b in pairs])
        parts = bipartition(reduced)
        if parts is not None and len(parts.white) == 3:
            return "K33"
    raise GraphError("witness is not a subdivision of K5 or K_{3,3}")


def exhaustive_kuratowski_search(g: Graph) -> Optional[tuple[Edge, ...]]:
    """
    Independent planarity oracle for small graphs: tries every choice of branch
    vertices for K5 and K_{3,3} and routes internally disjoint connecting paths
    by backtracking. Returns the edges of a subdivision, or None when planar.
    """
    degs = g.degrees()
    heavy3 = [v for v in range(g.n) if degs[v] >= 3]
    for sides in _k33_branch_choices(heavy3):
        left, right = sides
        pairs = [(a, b) for a in left for b in right]
        found = _route_pairs(g, pairs, mask_of(left + right))
        if found is not None:
            return found
    heavy4 = [v for v in range(g.n) if degs[v] >= 4]
    for chosen in itertools.combinations(heavy4, 5):
        found = _route_pairs(g, list(itertools.combinations(chosen, 2)), mask_of(chosen))
        if found is not None:
            return found
    return None


def _k33_branch_choices(candidates: list[int]) -> Iterator[tuple[list[int], list[int]]]:
    for six in itertools.combinations(candidates, 6):
        head, rest = six[0], six[1:]
        for pair in itertools.combinations(rest, 2):
            left = [head, *pair]
            yield left, [v for v in rest if v not in pair]


def _route_pairs(g: Graph, pairs: list[Edge], branch: int) -> Optional[tuple[Edge, ...]]:
    free_all = g.vertex_mask & ~branch

    def paths(a: int, b: int, free: int) -> Iterator[tuple[list[int], int]]:
        trail = [a]

        def walk(v: int, used: int) -> Iterator[tuple[list[int], int]]:
            if (g.adj[v] >> b) & 1:
                yield trail + [b], used
            for w in iter_bits(g.adj[v] & free & ~used):
                trail.append(w)
                yield from walk(w, used | (1 << w))
                trail.pop()

        yield from walk(a, 0)

    chosen: list[list[int]] = []

    def route(i: int, free: int) -> bool:
        if i == len(pairs):
            return True
        a, b = pairs[i]
        for trail, used in paths(a, b, free):
            chosen.append(trail)
            if route(i + 1, free & ~used):
                return True
            chosen.pop()
        return False

    if not route(0, free_all):
        return None
    return tuple(sorted(normalize_edge(p[j], p[j + 1]) for p in chosen for j in range(len(p) - 1)))

"""
Characterisation-based recognisers for cycle-conformal graphs.

- cubic bipartite: cycle-conformal iff every brace of the tight cut
  decomposition is K_{3,3}, or C4 where contraction collapsed
  parallel edges of a 2-connected input;
- planar bipartite: cycle-conformal iff the graph reduces to C4 by undoing
  bisubdivisions and 3-path operations;
- Pfaffian bipartite: cycle-conformal iff planar and the previous test passes.

Every recogniser answers False with a machine-readable reason when its input
is outside the class it characterises.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Literal, Optional

from cycleconf.app.domain.canonical import CanonicalForm, canonical_form
from cycleconf.app.domain.conformality import brute_is_cycle_conformal
from cycleconf.app.domain.errors import GraphError
from cycleconf.app.domain.families import bisubdivide, complete_bipartite, cycle_graph, three_path_op
from cycleconf.app.domain.graph import (
    Cycle,
    Edge,
    Graph,
    are_isomorphic,
    bipartition,
    is_planar,
    normalize_edge,
)
from cycleconf.app.domain.matching import is_matching_covered
from cycleconf.app.domain.tightcut import decompose

logger = logging.getLogger(__name__)

Operation = Literal["bisubdivision", "three_path"]
Method = Literal["cubic", "kuske", "brute", "auto"]

_K33 = complete_bipartite(3, 3)
_C4 = cycle_graph(4)


@dataclass(frozen=True)
class ConstructionStep:
    op: Operation
    edge: Edge
    parameter: int = 1


@dataclass(frozen=True)
class ConstructionTrace:
    """Forward construction from `base`; edges refer to the graph built so far."""

    base: Graph
    steps: tuple[ConstructionStep, ...] = ()

    def replay(self) -> Graph:
        g = self.base
        for step in self.steps:
            if step.op == "bisubdivision":
                g = bisubdivide(g, step.edge, step.parameter)
            else:
                g = three_path_op(g, step.edge)
        return g


@dataclass(frozen=True)
class Recognition:
    verdict: bool
    method: str
    reason: Optional[str] = None
    leaves: tuple[Graph, ...] = ()
    failing_leaf: Optional[Graph] = None
    trace: Optional[ConstructionTrace] = None
    witness: Optional[Cycle] = None


def recognize_cubic_bipartite_cc(g: Graph) -> Recognition:
    if not g.is_cubic():
        return Recognition(verdict=False, method="cubic", reason="not cubic")
    if bipartition(g) is None:
        return Recognition(verdict=False, method="cubic", reason="not bipartite")
    if not is_matching_covered(g):
        return Recognition(verdict=False, method="cubic", reason="not matching covered")
    result = decompose(g)
    leaves = tuple(leaf.graph for leaf in result.leaves)
    for leaf in leaves:
        # A C4 leaf is a 4-vertex brace whose parallel edges were collapsed by contraction.
        if not (are_isomorphic(leaf, _K33) or are_isomorphic(leaf, _C4)):
            return Recognition(verdict=False, method="cubic", reason="brace other than K3,3", leaves=leaves, failing_leaf=leaf)
    return Recognition(verdict=True, method="cubic", leaves=leaves)


@dataclass(frozen=True)
class _InverseMove:
    op: Operation
    removed: tuple[int, int]
    ends: tuple[int, int]
    kept: tuple[int, ...]


def _inverse_moves(g: Graph) -> list[tuple[_InverseMove, Graph]]:
    """Every applicable inverse move: an adjacent degree-2 pair x, y with outer neighbours p != q."""
    moves = []
    for x, y in g.edges():
        if g.degree(x) != 2 or g.degree(y) != 2:
            continue
        (p,) = [w for w in g.neighbours(x) if w != y]
        (q,) = [w for w in g.neighbours(y) if w != x]
        if p == q:
            continue
        reduced, kept = g.without_vertices((x, y))
        index = {old: new for new, old in enumerate(kept)}
        if g.has_edge(p, q):
            op: Operation = "three_path"
        else:
            op = "bisubdivision"
            reduced = reduced.with_edges(add=[(index[p], index[q])])
        moves.append((_InverseMove(op=op, removed=(x, y), ends=(p, q), kept=tuple(kept)), reduced))
    return moves


def _reduce_to_c4(g: Graph) -> Optional[list[tuple[_InverseMove, Graph]]]:
    """Backtracking search for a sequence of inverse moves ending at C4; failures are memoised by canonical form."""
    failed: set[CanonicalForm] = set()
    path: list[tuple[_InverseMove, Graph]] = []

    def search(h: Graph) -> bool:
        if h.n == 4:
            return are_isomorphic(h, _C4)
        if h.n < 4:
            return False
        key = canonical_form(h)
        if key in failed:
            return False
        for move, reduced in _inverse_moves(h):
            path.append((move, reduced))
            if search(reduced):
                return True
            path.pop()
        failed.add(key)
        return False

    if not search(g):
        return None
    return path


def _forward_trace(g: Graph, moves: list[tuple[_InverseMove, Graph]]) -> ConstructionTrace:
    """Turn a reduction of g into a forward construction from the final 4-cycle."""
    base = moves[-1][1] if moves else g
    built = base
    # position[v] = id in `built` of vertex v of the current backward state
    position = list(range(base.n))
    steps = []
    for move, _ in reversed(moves):
        back = {new: old for new, old in enumerate(move.kept)}
        p, q = move.ends
        x, y = move.removed
        here = {back[i]: position[i] for i in range(len(position))}
        a, b = here[p], here[q]
        fresh = (built.n, built.n + 1)
        if move.op == "three_path":
            step = ConstructionStep(op="three_path", edge=normalize_edge(a, b))
            built = three_path_op(built, step.edge)
        else:
            step = ConstructionStep(op="bisubdivision", edge=normalize_edge(a, b), parameter=1)
            built = bisubdivide(built, step.edge, 1)
        # fresh vertices are appended starting from the smaller endpoint
        near_a = (x, y) if a < b else (y, x)
        here[near_a[0]], here[near_a[1]] = fresh
        steps.append(step)
        position = [here[v] for v in range(len(here))]
    return ConstructionTrace(base=base, steps=tuple(steps))


def recognize_planar_bipartite_cc(g: Graph) -> Recognition:
    if bipartition(g) is None:
        return Recognition(verdict=False, method="kuske", reason="not bipartite")
    if not is_matching_covered(g):
        return Recognition(verdict=False, method="kuske", reason="not matching covered")
    if not is_planar(g).planar:
        return Recognition(verdict=False, method="kuske", reason="not planar")
    moves = _reduce_to_c4(g)
    if moves is None:
        return Recognition(verdict=False, method="kuske", reason="no reduction to C4")
    logger.debug(f"Reduced {g.n}-vertex graph to C4 in {len(moves)} inverse moves")
    return Recognition(verdict=True, method="kuske", trace=_forward_trace(g, moves))


def recognize_pfaffian_bipartite_cc(g: Graph) -> Recognition:
    if bipartition(g) is None:
        return Recognition(verdict=False, method="pfaffian", reason="not bipartite")
    if not is_matching_covered(g):
        return Recognition(verdict=False, method="pfaffian", reason="not matching covered")
    if not is_planar(g).planar:
        return Recognition(verdict=False, method="pfaffian", reason="not planar")
    planar = recognize_planar_bipartite_cc(g)
    return Recognition(verdict=planar.verdict, method="pfaffian", reason=planar.reason, trace=planar.trace)


def random_construction(rng: random.Random, max_steps: int) -> tuple[Graph, ConstructionTrace]:
    """Apply up to `max_steps` random bisubdivisions and 3-path operations to C4."""
    if max_steps < 0:
        raise GraphError(f"max_steps must be non-negative, got {max_steps}")
    g = _C4
    steps = []
    for _ in range(rng.randint(0, max_steps)):
        edge = rng.choice(g.edges())
        if rng.random() < 0.5:
            step = ConstructionStep(op="bisubdivision", edge=edge, parameter=rng.randint(1, 2))
            g = bisubdivide(g, edge, step.parameter)
        else:
            step = ConstructionStep(op="three_path", edge=edge)
            g = three_path_op(g, edge)
        steps.append(step)
    return g, ConstructionTrace(base=_C4, steps=tuple(steps))


def recognize_cycle_conformal(g: Graph, method: Method = "auto") -> Recognition:
    if method == "auto":
        bipartite = bipartition(g) is not None
        covered = bipartite and is_matching_covered(g)
        if covered and g.is_cubic():
            method = "cubic"
        elif covered and is_planar(g).planar:
            method = "kuske"
        else:
            method = "brute"
    if method == "cubic":
        return recognize_cubic_bipartite_cc(g)
    if method == "kuske":
        return recognize_planar_bipartite_cc(g)
    report = brute_is_cycle_conformal(g)
    return Recognition(verdict=report.verdict, method="brute", reason=report.reason, witness=report.witness)

"""
Small-graph census: exhaustive generation with isomorphism rejection, the
brace census behind the complete-bipartite conjectures, and the harness that
checks every characterisation-based recogniser against the brute oracle.
"""
import dataclasses
import logging
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from joblib import Parallel, delayed

from cycleconf.app import config
from cycleconf.app.domain.canonical import CanonicalForm, canonical_form, canonical_graph
from cycleconf.app.domain.conformality import brute_is_cycle_conformal
from cycleconf.app.domain.errors import CensusError
from cycleconf.app.domain.graph import Graph, bipartition, is_planar, iter_bits
from cycleconf.app.domain.graph_io import from_graph6, read_graph6_stream, to_graph6
from cycleconf.app.domain.matching import is_matching_covered
from cycleconf.app.domain.recognizers import recognize_cubic_bipartite_cc, recognize_planar_bipartite_cc
from cycleconf.app.domain.tightcut import classify
from cycleconf.app.schemas import CensusReport, MismatchReport

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CensusSpec:
    max_n: int
    min_n: int = 1
    bipartite: bool = False
    regular_degree: Optional[int] = None
    connected: bool = False
    min_degree: int = 0
    planar: bool = False
    balanced: bool = False

    @property
    def bound(self) -> int:
        if self.bipartite and self.regular_degree == 3:
            return config.CENSUS_MAX_CUBIC
        if self.bipartite:
            return config.CENSUS_MAX_BIPARTITE
        return config.CENSUS_MAX_GENERAL

    def validate(self) -> None:
        if self.min_n < 1 or self.max_n < self.min_n:
            raise CensusError(f"census range {self.min_n}..{self.max_n} is empty")
        if self.max_n > self.bound:
            raise CensusError(
                f"internal generation stops at {self.bound} vertices for this class; "
                f"feed larger graphs through a graph6 stream"
            )
        if self.min_degree < 0 or (self.regular_degree is not None and self.regular_degree < 0):
            raise CensusError("degree constraints must be non-negative")

    def constraints(self) -> dict:
        return {k: v for k, v in dataclasses.asdict(self).items() if k not in ("min_n", "max_n")}


def admits(g: Graph, spec: CensusSpec) -> bool:
    if not spec.min_n <= g.n <= spec.max_n:
        return False
    if spec.regular_degree is not None and not g.is_regular(spec.regular_degree):
        return False
    if g.n and min(g.degrees()) < spec.min_degree:
        return False
    if spec.connected and not g.is_connected():
        return False
    if spec.bipartite or spec.balanced:
        parts = bipartition(g)
        if parts is None:
            return False
        if spec.balanced and not parts.is_balanced():
            return False
    if spec.planar and not is_planar(g).planar:
        return False
    return True


def _from_rows(rows: tuple[int, ...], t: int) -> tuple[Graph, list[int]]:
    """Blacks are 0..t-1, row i is white vertex t+i adjacent to the blacks in its mask."""
    adj = [0] * (t + len(rows))
    for i, row in enumerate(rows):
        w = t + i
        for b in iter_bits(row):
            adj[w] |= 1 << b
            adj[b] |= 1 << w
    return Graph(n=t + len(rows), adj=tuple(adj)), [1] * t + [0] * len(rows)


def _bipartite_graphs(n: int, spec: CensusSpec) -> Iterator[Graph]:
    """Row-by-row augmentation of biadjacency matrices, deduplicated per level by coloured canonical form."""
    cap = spec.regular_degree
    for s in range(0, n // 2 + 1):
        t = n - s
        if (spec.balanced or (cap is not None and cap > 0)) and s != t:
            continue

        def row_ok(row: int) -> bool:
            size = row.bit_count()
            if size < spec.min_degree:
                return False
            return cap is None or size == cap

        options = [row for row in range(1 << t) if row_ok(row)]
        level: dict[CanonicalForm, tuple[int, ...]] = {CanonicalForm(b""): ()}
        for _ in range(s):
            grown: dict[CanonicalForm, tuple[int, ...]] = {}
            for rows in level.values():
                load = [sum((row >> b) & 1 for row in rows) for b in range(t)]
                for row in options:
                    if cap is not None and any(load[b] >= cap for b in iter_bits(row)):
                        continue
                    candidate = rows + (row,)
                    g, colours = _from_rows(candidate, t)
                    if spec.planar and not is_planar(g).planar:
                        continue
                    grown.setdefault(canonical_form(g, colours), candidate)
            level = grown
            logger.debug(f"Census n={n} whites={s}: {len(level)} coloured classes at this level")
        for rows in level.values():
            yield _from_rows(rows, t)[0]


def _general_graphs(n: int, spec: CensusSpec) -> Iterator[Graph]:
    """Vertex-by-vertex augmentation, deduplicated per level by canonical form."""
    cap = spec.regular_degree
    level: dict[CanonicalForm, Graph] = {CanonicalForm(b""): Graph.empty(0)}
    for k in range(n):
        grown: dict[CanonicalForm, Graph] = {}
        for g in level.values():
            eligible = sum(1 << v for v in range(k) if cap is None or g.degree(v) < cap)
            sub = eligible
            while True:
                if cap is None or sub.bit_count() <= cap:
                    adj = list(g.adj)
                    for v in iter_bits(sub):
                        adj[v] |= 1 << k
                    adj.append(sub)
                    h = Graph(n=k + 1, adj=tuple(adj))
                    if not spec.planar or is_planar(h).planar:
                        grown.setdefault(canonical_form(h), h)
                if sub == 0:
                    break
                sub = (sub - 1) & eligible
        level = grown
    yield from level.values()


def enumerate_graphs(spec: CensusSpec, source: Optional[Iterable[str]] = None) -> Iterator[Graph]:
    """
    One graph per isomorphism class satisfying `spec`, ordered by vertex count
    then canonical certificate. With `source`, graph6 lines are filtered and
    deduplicated instead of generated, and the size bound does not apply.
    """
    if source is not None:
        seen: set[CanonicalForm] = set()
        for g in read_graph6_stream(source):
            if not admits(g, spec):
                continue
            key = canonical_form(g)
            if key not in seen:
                seen.add(key)
                yield g
        return
    spec.validate()
    generate = _bipartite_graphs if spec.bipartite or spec.balanced else _general_graphs
    for n in range(spec.min_n, spec.max_n + 1):
        found: dict[CanonicalForm, Graph] = {}
        for g in generate(n, spec):
            if admits(g, spec):
                found.setdefault(canonical_form(g), g)
        logger.info(f"Census n={n}: {len(found)} classes")
        for key in sorted(found):
            yield found[key]


def is_complete_bipartite(g: Graph) -> bool:
    parts = bipartition(g)
    return parts is not None and g.is_connected() and g.m == len(parts.white) * len(parts.black)


@dataclass(frozen=True)
class BraceVerdict:
    graph6: str
    matching_covered: bool
    brace: bool
    cycle_conformal: bool = False
    complete_bipartite: bool = False


def examine_brace(graph6: str) -> BraceVerdict:
    g = from_graph6(graph6)
    if not is_matching_covered(g):
        return BraceVerdict(graph6=graph6, matching_covered=False, brace=False)
    if classify(g) != "brace":
        return BraceVerdict(graph6=graph6, matching_covered=True, brace=False)
    return BraceVerdict(
        graph6=graph6,
        matching_covered=True,
        brace=True,
        cycle_conformal=brute_is_cycle_conformal(g).verdict,
        complete_bipartite=is_complete_bipartite(g),
    )


def examine_recognizers(graph6: str) -> list[MismatchReport]:
    """Compare every recogniser whose class contains the graph against the brute oracle."""
    g = from_graph6(graph6)
    if bipartition(g) is None or not is_matching_covered(g):
        return []
    recognizers = []
    if g.is_cubic():
        recognizers.append(("cubic", recognize_cubic_bipartite_cc))
    if is_planar(g).planar:
        recognizers.append(("kuske", recognize_planar_bipartite_cc))
    if not recognizers:
        return []
    oracle = brute_is_cycle_conformal(g).verdict
    mismatches = []
    for name, recognize in recognizers:
        verdict = recognize(g).verdict
        if verdict != oracle:
            mismatches.append(MismatchReport(graph6=graph6, recognizer=name, recognizer_verdict=verdict, oracle_verdict=oracle))
    return mismatches


class CensusService:
    def __init__(self, jobs: Optional[int] = None):
        self.jobs = jobs or config.JOBS

    def _map(self, task: Callable[[str], object], graphs: Iterable[Graph]) -> list:
        """Run `task` on graph6 strings; joblib keeps input order, so results are deterministic."""
        payload = [to_graph6(g) for g in graphs]
        if self.jobs == 1:
            return [task(item) for item in payload]
        return Parallel(n_jobs=self.jobs)(delayed(task)(item) for item in payload)

    def census_braces(self, spec: CensusSpec, source: Optional[Iterable[str]] = None) -> CensusReport:
        """
        Every cycle-conformal brace found, with a counterexample entry for each
        one that is not complete bipartite. Enumeration is restricted to
        connected balanced bipartite graphs of minimum degree 2, which contain
        every brace.
        """
        if not spec.bipartite:
            raise CensusError("the brace census needs a bipartite spec")
        started = time.perf_counter()
        narrowed = dataclasses.replace(spec, connected=True, balanced=True, min_degree=max(spec.min_degree, 2))
        verdicts: list[BraceVerdict] = self._map(examine_brace, enumerate_graphs(narrowed, source))
        conformal = [v for v in verdicts if v.cycle_conformal]
        counterexamples = []
        for verdict in conformal:
            if not verdict.complete_bipartite:
                logger.warning(f"CONJECTURE COUNTEREXAMPLE: cycle-conformal brace {verdict.graph6} is not complete bipartite")
                counterexamples.append(verdict.graph6)
        logger.info(f"Census n={spec.min_n}..{spec.max_n}: {len(conformal)} cycle-conformal braces")
        return CensusReport(
            min_n=spec.min_n,
            max_n=spec.max_n,
            constraints=narrowed.constraints(),
            class_counts={
                "graphs": len(verdicts),
                "matching_covered": sum(v.matching_covered for v in verdicts),
                "braces": sum(v.brace for v in verdicts),
                "cycle_conformal_braces": len(conformal),
            },
            cycle_conformal_braces=[to_graph6(canonical_graph(from_graph6(v.graph6))) for v in conformal],
            counterexamples=counterexamples,
            timing_ms=(time.perf_counter() - started) * 1000,
        )

    def validate_recognizers(self, spec: CensusSpec, source: Optional[Iterable[str]] = None) -> CensusReport:
        started = time.perf_counter()
        graphs = list(enumerate_graphs(spec, source))
        results: list[list[MismatchReport]] = self._map(examine_recognizers, graphs)
        mismatches = [m for batch in results for m in batch]
        for mismatch in mismatches:
            logger.error(
                f"Recognizer {mismatch.recognizer} says {mismatch.recognizer_verdict} "
                f"but the oracle says {mismatch.oracle_verdict} on {mismatch.graph6}"
            )
        logger.info(f"Validated recognizers on {len(graphs)} graphs: {len(mismatches)} mismatches")
        return CensusReport(
            min_n=spec.min_n,
            max_n=spec.max_n,
            constraints=spec.constraints(),
            class_counts={"graphs": len(graphs), "mismatches": len(mismatches)},
            mismatches=mismatches,
            timing_ms=(time.perf_counter() - started) * 1000,
        )


def census_braces(spec: CensusSpec, source: Optional[Iterable[str]] = None, jobs: Optional[int] = None) -> CensusReport:
    return CensusService(jobs=jobs).census_braces(spec, source)


def validate_recognizers(spec: CensusSpec, source: Optional[Iterable[str]] = None, jobs: Optional[int] = None) -> CensusReport:
    return CensusService(jobs=jobs).validate_recognizers(spec, source)

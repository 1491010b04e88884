"""
Decision procedures. Each command exits 0 when the property holds and 1 when
it does not; `--witness` adds an object that re-verifies the answer.
"""
import time
from enum import Enum
from typing import Annotated

import typer

from cycleconf.app import config
from cycleconf.app.commands.common import (
    InputFormat,
    InputPath,
    JsonOutput,
    Witness,
    build_report,
    emit,
    handles_errors,
    read_input,
)
from cycleconf.app.domain.conformality import (
    brute_is_cycle_conformal,
    is_cycle_conformal_reduced,
    is_odd_cycle_conformal,
    subset_is_cycle_conformal,
)
from cycleconf.app.domain.graph import bipartition, exhaustive_kuratowski_search, is_planar, verify_kuratowski_witness
from cycleconf.app.domain.matching import (
    MatchabilityOracle,
    cover_graph,
    enumerate_perfect_matchings,
    has_perfect_matching,
    is_factor_critical,
    is_k_extendable,
    is_matching_covered,
)
from cycleconf.app.domain.pfaffian import (
    is_pfaffian_bruteforce,
    signed_biadjacency_determinant,
    verify_pfaffian_orientation,
)
from cycleconf.app.domain.recognizers import recognize_cycle_conformal
from cycleconf.app.domain.tightcut import classify, cut_edges, is_tight_cut, is_tight_cut_bruteforce

app = typer.Typer(help="Decide structural properties of a graph.", no_args_is_help=True)


class ConformalityMethod(str, Enum):
    brute = "brute"
    reduced = "reduced"
    subsets = "subsets"


class PlanarityMethod(str, Enum):
    networkx = "networkx"
    exhaustive = "exhaustive"


class RecognizerMethod(str, Enum):
    auto = "auto"
    cubic = "cubic"
    kuske = "kuske"
    brute = "brute"


def _parse_shore(text: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError as e:
        raise typer.BadParameter(f"shore must be comma-separated vertex ids, got {text!r}") from e


@app.command("matching-covered")
@handles_errors("matching-covered")
def matching_covered(
    input_path: InputPath = None, in_format: InputFormat = None, json_output: JsonOutput = False, witness: Witness = False
) -> None:
    """Connected, at least 4 vertices, and every edge in some perfect matching."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    verdict = is_matching_covered(g)
    reason = found = None
    if not verdict:
        if g.n < 4:
            reason = "fewer than 4 vertices"
        elif not g.is_connected():
            reason = "disconnected"
        elif not has_perfect_matching(g):
            reason = "no perfect matching"
        else:
            reason = "edge in no perfect matching"
            found = cover_graph(g).excluded[0]
    report = build_report("matching-covered", g, verdict, started, reason=reason, witness=found if witness else None)
    emit(report, json_output)


@app.command("k-extendable")
@handles_errors("k-extendable")
def k_extendable(
    k: Annotated[int, typer.Argument(help="Size of the matchings that must extend.")],
    input_path: InputPath = None,
    in_format: InputFormat = None,
    json_output: JsonOutput = False,
    witness: Witness = False,
) -> None:
    """Every matching with k edges extends to a perfect matching."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    result = is_k_extendable(g, k)
    report = build_report(
        "k-extendable",
        g,
        result.extendable,
        started,
        reason=result.reason,
        witness=result.counterexample if witness else None,
        evidence={"k": k},
    )
    emit(report, json_output)


@app.command("tight")
@handles_errors("tight")
def tight(
    shore: Annotated[str, typer.Option("--shore", help="Comma-separated vertices of one shore.")],
    brute: Annotated[bool, typer.Option("--brute", help="Decide by enumerating every perfect matching.")] = False,
    input_path: InputPath = None,
    in_format: InputFormat = None,
    json_output: JsonOutput = False,
    witness: Witness = False,
) -> None:
    """Every perfect matching meets the cut around the shore exactly once."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    x = _parse_shore(shore)
    verdict = is_tight_cut_bruteforce(g, x) if brute else is_tight_cut(g, x)
    crossing = cut_edges(g, x)
    found = None
    if witness and not verdict:
        inside = set(x)
        found = next(
            m for m in enumerate_perfect_matchings(g) if sum((u in inside) != (v in inside) for u, v in m.edges) != 1
        )
    trivial = len(set(x)) == 1 or g.n - len(set(x)) == 1
    report = build_report(
        "tight", g, verdict, started, witness=found, evidence={"cut": crossing, "trivial": trivial, "brute": brute}
    )
    emit(report, json_output)


@app.command("cycle-conformal")
@handles_errors("cycle-conformal")
def cycle_conformal(
    method: Annotated[ConformalityMethod, typer.Option("--method", help="Oracle to run.")] = ConformalityMethod.brute,
    input_path: InputPath = None,
    in_format: InputFormat = None,
    json_output: JsonOutput = False,
    witness: Witness = False,
) -> None:
    """A perfect matching exists and every even cycle is conformal."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    evidence = {"method": method.value}
    if method == ConformalityMethod.reduced:
        verdict = is_cycle_conformal_reduced(g)
        result = brute_is_cycle_conformal(g) if witness and not verdict else None
    else:
        result = subset_is_cycle_conformal(g) if method == ConformalityMethod.subsets else brute_is_cycle_conformal(g)
        verdict = result.verdict
        evidence["checked"] = result.checked_cycles
    reason = result.reason if result is not None else None
    found = result.witness if witness and result is not None else None
    emit(build_report("cycle-conformal", g, verdict, started, reason=reason, witness=found, evidence=evidence), json_output)


@app.command("odd-cycle-conformal")
@handles_errors("odd-cycle-conformal")
def odd_cycle_conformal(
    input_path: InputPath = None, in_format: InputFormat = None, json_output: JsonOutput = False, witness: Witness = False
) -> None:
    """Every odd cycle is conformal."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    result = is_odd_cycle_conformal(g)
    report = build_report(
        "odd-cycle-conformal",
        g,
        result.verdict,
        started,
        reason=result.reason,
        witness=result.witness if witness else None,
        evidence={"checked": result.checked_cycles},
    )
    emit(report, json_output)


@app.command("factor-critical")
@handles_errors("factor-critical")
def factor_critical(
    input_path: InputPath = None, in_format: InputFormat = None, json_output: JsonOutput = False, witness: Witness = False
) -> None:
    """G - v has a perfect matching for every vertex v."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    verdict = is_factor_critical(g)
    found = None
    if witness and not verdict and g.n % 2:
        oracle = MatchabilityOracle(g)
        found = next(v for v in range(g.n) if not oracle.without(1 << v))
    reason = "even vertex count" if not verdict and g.n % 2 == 0 else None
    emit(build_report("factor-critical", g, verdict, started, reason=reason, witness=found), json_output)


@app.command("pfaffian")
@handles_errors("pfaffian")
def pfaffian(
    max_dimension: Annotated[
        int, typer.Option("--max-dimension", help="Refuse graphs whose cycle space is larger.")
    ] = config.PFAFFIAN_MAX_DIMENSION,
    input_path: InputPath = None,
    in_format: InputFormat = None,
    json_output: JsonOutput = False,
    witness: Witness = False,
) -> None:
    """Search all orientation classes for a Pfaffian one."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    search = is_pfaffian_bruteforce(g, max_dimension=max_dimension)
    evidence = {"cycle_space_dimension": search.dimension, "classes_searched": search.classes_searched}
    arcs = None
    if search.orientation is not None:
        check = verify_pfaffian_orientation(search.orientation)
        evidence["conformal_cycles"] = check.conformal_cycles
        if bipartition(g) is not None:
            evidence["perfect_matchings"] = abs(signed_biadjacency_determinant(search.orientation))
        arcs = search.orientation.arcs
    emit(build_report("pfaffian", g, search.pfaffian, started, witness=arcs if witness else None, evidence=evidence), json_output)


@app.command("planar")
@handles_errors("planar")
def planar(
    method: Annotated[PlanarityMethod, typer.Option("--method", help="Planarity test to run.")] = PlanarityMethod.networkx,
    input_path: InputPath = None,
    in_format: InputFormat = None,
    json_output: JsonOutput = False,
    witness: Witness = False,
) -> None:
    """Planarity, with a Kuratowski subdivision when the graph is not planar."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    if method == PlanarityMethod.networkx:
        result = is_planar(g)
        verdict, edges, kind = result.planar, result.witness, result.kind
    else:
        edges = exhaustive_kuratowski_search(g)
        verdict = edges is None
        kind = None if edges is None else verify_kuratowski_witness(edges)
    evidence = {"method": method.value, "kuratowski": kind}
    emit(build_report("planar", g, verdict, started, witness=edges if witness else None, evidence=evidence), json_output)


@app.command("brace")
@handles_errors("brace")
def brace(input_path: InputPath = None, in_format: InputFormat = None, json_output: JsonOutput = False) -> None:
    """C4, or connected bipartite and 2-extendable."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    kind = classify(g)
    emit(build_report("brace", g, kind == "brace", started, evidence={"class": kind}), json_output)


@app.command("brick")
@handles_errors("brick")
def brick(input_path: InputPath = None, in_format: InputFormat = None, json_output: JsonOutput = False) -> None:
    """Non-bipartite matching covered graph without a nontrivial tight cut."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    kind = classify(g)
    emit(build_report("brick", g, kind == "brick", started, evidence={"class": kind}), json_output)


@app.command("cc")
@handles_errors("cc")
def cc(
    method: Annotated[RecognizerMethod, typer.Option("--method", help="Recognizer to run.")] = RecognizerMethod.auto,
    trace: Annotated[bool, typer.Option("--trace", help="Include the construction trace from C4.")] = False,
    input_path: InputPath = None,
    in_format: InputFormat = None,
    json_output: JsonOutput = False,
    witness: Witness = False,
) -> None:
    """Cycle-conformality through the characterisation for the input's class."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    result = recognize_cycle_conformal(g, method.value)
    evidence: dict = {"method": result.method}
    if result.leaves:
        evidence["leaves"] = list(result.leaves)
    if result.failing_leaf is not None:
        evidence["failing_leaf"] = result.failing_leaf
    if trace and result.trace is not None:
        evidence["trace"] = [
            {"op": step.op, "edge": list(step.edge), "parameter": step.parameter} for step in result.trace.steps
        ]
    found = result.witness if witness else None
    emit(build_report("cc", g, result.verdict, started, reason=result.reason, witness=found, evidence=evidence), json_output)

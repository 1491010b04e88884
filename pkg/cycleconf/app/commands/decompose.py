import random
import time
from typing import Annotated, Optional

import typer
from rich.console import Console
from rich.tree import Tree

from cycleconf.app.commands.common import InputFormat, InputPath, JsonOutput, handles_errors, json_default, read_input
from cycleconf.app.domain.canonical import canonical_graph
from cycleconf.app.domain.graph_io import to_graph6
from cycleconf.app.domain.tightcut import TraceNode, decompose
from cycleconf.app.schemas import DecompositionReport, LeafReport, TraceReport


def trace_report(node: TraceNode) -> TraceReport:
    return TraceReport(
        graph6=to_graph6(node.graph),
        shore=sorted(node.shore) if node.shore is not None else None,
        children=[trace_report(child) for child in node.children],
    )


def _tree(node: TraceReport, tree: Tree) -> None:
    for child in node.children:
        label = child.graph6 if child.shore is None else f"{child.graph6}  split at {child.shore}"
        _tree(child, tree.add(label))


@handles_errors("decompose")
def decompose_command(
    seed: Annotated[Optional[int], typer.Option("--seed", help="Shuffle the tight cut search with this seed.")] = None,
    input_path: InputPath = None,
    in_format: InputFormat = None,
    json_output: JsonOutput = False,
) -> None:
    """Tight cut decomposition into bricks and braces."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    result = decompose(g, rng=random.Random(seed) if seed is not None else None)
    report = DecompositionReport(
        input=to_graph6(g),
        leaves=[
            LeafReport(graph6=to_graph6(canonical_graph(leaf.graph)), kind=leaf.kind, n=leaf.graph.n, m=leaf.graph.m)
            for leaf in result.leaves
        ],
        trace=trace_report(result.trace),
        timing_ms=(time.perf_counter() - started) * 1000,
    )
    if json_default(json_output):
        typer.echo(report.model_dump_json(indent=2))
    else:
        root = report.trace
        tree = Tree(root.graph6 if root.shore is None else f"{root.graph6}  split at {root.shore}")
        _tree(root, tree)
        console = Console(highlight=False)
        console.print(tree)
        for leaf in report.leaves:
            console.print(f"{leaf.kind} {leaf.graph6} (n={leaf.n}, m={leaf.m})")
    raise typer.Exit(code=0)

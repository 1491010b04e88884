import random
import time
from typing import Annotated, Optional

import typer

from cycleconf.app.commands.common import JsonOutput, build_report, emit, handles_errors, parse_format
from cycleconf.app.domain.families import build_family, family_names
from cycleconf.app.domain.graph_io import write_graph
from cycleconf.app.domain.recognizers import random_construction


@handles_errors("gen")
def generate(
    family: Annotated[str, typer.Argument(help=f"One of {', '.join(family_names())}, or kuske-random.")],
    params: Annotated[Optional[list[int]], typer.Argument(help="Integer parameters of the family.")] = None,
    out_format: Annotated[str, typer.Option("--format", "-f", help="graph6, edges or dot.")] = "graph6",
    seed: Annotated[Optional[int], typer.Option("--seed", help="Random seed for kuske-random.")] = None,
    json_output: JsonOutput = False,
) -> None:
    """Write a graph from a named family."""
    started = time.perf_counter()
    values = params or []
    fmt = parse_format(out_format)
    trace = None
    if family == "kuske-random":
        if len(values) != 1:
            raise typer.BadParameter("kuske-random takes exactly one value, the maximum number of steps")
        g, trace = random_construction(random.Random(seed), values[0])
        g = g.renamed(f"kuske-random-{values[0]}")
    else:
        g = build_family(family, values)

    if json_output:
        evidence = {"name": g.name, "n": g.n, "m": g.m}
        if trace is not None:
            evidence["trace"] = [
                {"op": step.op, "edge": list(step.edge), "parameter": step.parameter} for step in trace.steps
            ]
        emit(build_report("gen", g, True, started, evidence=evidence), json_output=True)
    typer.echo(write_graph(g, fmt), nl=False)

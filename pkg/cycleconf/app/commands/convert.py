from typing import Annotated

import typer

from cycleconf.app.commands.common import InputFormat, InputPath, handles_errors, parse_format, read_input
from cycleconf.app.domain.graph_io import write_graph


@handles_errors("convert")
def convert(
    to: Annotated[str, typer.Option("--to", help="Output format: graph6, edges or dot.")],
    input_path: InputPath = None,
    in_format: InputFormat = None,
) -> None:
    """Re-encode a graph; vertex ids and edges are preserved."""
    fmt = parse_format(to)
    g = read_input(input_path, in_format)
    typer.echo(write_graph(g, fmt), nl=False)

import time
from enum import Enum
from typing import Annotated

import typer

from cycleconf.app import config
from cycleconf.app.commands.common import InputFormat, InputPath, JsonOutput, build_report, emit, handles_errors, read_input
from cycleconf.app.domain.matching import count_perfect_matchings, permanent_biadjacency
from cycleconf.app.domain.pfaffian import count_perfect_matchings_pfaffian

app = typer.Typer(help="Counting commands.", no_args_is_help=True)


class CountMethod(str, Enum):
    dp = "dp"
    permanent = "permanent"
    pfaffian = "pfaffian"


@app.command("pm")
@handles_errors("count-pm")
def perfect_matchings(
    method: Annotated[CountMethod, typer.Option("--method", help="Counting method.")] = CountMethod.dp,
    input_path: InputPath = None,
    in_format: InputFormat = None,
    json_output: JsonOutput = False,
) -> None:
    """Number of perfect matchings; exits 1 when there are none."""
    started = time.perf_counter()
    g = read_input(input_path, in_format)
    if method == CountMethod.permanent:
        total = permanent_biadjacency(g)
    elif method == CountMethod.pfaffian:
        total = count_perfect_matchings_pfaffian(g, max_dimension=config.PFAFFIAN_MAX_DIMENSION)
    else:
        total = count_perfect_matchings(g)
    evidence = {"method": method.value, "perfect_matchings": total}
    emit(build_report("count-pm", g, total > 0, started, evidence=evidence), json_output)

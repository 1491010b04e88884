from pathlib import Path
from typing import Annotated, Optional

import typer
from rich.console import Console
from rich.table import Table

from cycleconf.app.commands.common import EXIT_FALSE, EXIT_TRUE, JsonOutput, handles_errors, json_default
from cycleconf.app.schemas import CensusReport
from cycleconf.app.services.census_service import CensusService, CensusSpec


def render_census(report: CensusReport) -> None:
    console = Console(highlight=False)
    table = Table(title=f"census n={report.min_n}..{report.max_n}")
    table.add_column("class")
    table.add_column("count", justify="right")
    for name, count in report.class_counts.items():
        table.add_row(name, str(count))
    console.print(table)
    for graph6 in report.cycle_conformal_braces:
        console.print(f"cycle-conformal brace {graph6}")
    for graph6 in report.counterexamples:
        console.print(f"[bold red]counterexample[/] {graph6}")
    for mismatch in report.mismatches:
        console.print(
            f"[bold red]mismatch[/] {mismatch.graph6}: {mismatch.recognizer}={mismatch.recognizer_verdict}, "
            f"oracle={mismatch.oracle_verdict}"
        )
    console.print(f"{report.timing_ms:.0f} ms")


@handles_errors("census")
def census(
    n: Annotated[int, typer.Option("--n", help="Largest vertex count.")],
    min_n: Annotated[int, typer.Option("--min-n", help="Smallest vertex count.")] = 1,
    bipartite: Annotated[bool, typer.Option("--bipartite", help="Only bipartite graphs.")] = False,
    regular: Annotated[Optional[int], typer.Option("--regular", help="Only d-regular graphs.")] = None,
    planar: Annotated[bool, typer.Option("--planar", help="Only planar graphs.")] = False,
    connected: Annotated[bool, typer.Option("--connected", help="Only connected graphs.")] = False,
    validate: Annotated[
        bool, typer.Option("--validate", help="Compare the recognizers with the brute oracle instead of listing braces.")
    ] = False,
    source: Annotated[
        Optional[Path], typer.Option("--from", exists=True, dir_okay=False, help="Read graphs from a graph6 file.")
    ] = None,
    jobs: Annotated[Optional[int], typer.Option("--jobs", "-j", help="Worker processes.")] = None,
    report_path: Annotated[Optional[Path], typer.Option("--report", help="Also write the JSON report to this file.")] = None,
    json_output: JsonOutput = False,
) -> None:
    """Exhaustive census of braces, or of recognizer agreement with --validate. Exits 1 on any counterexample."""
    spec = CensusSpec(
        max_n=n,
        min_n=min_n,
        bipartite=bipartite or not validate,
        regular_degree=regular,
        connected=connected,
        planar=planar,
    )
    service = CensusService(jobs=jobs)
    lines = source.read_text().splitlines() if source is not None else None
    report = service.validate_recognizers(spec, lines) if validate else service.census_braces(spec, lines)
    if report_path is not None:
        report_path.write_text(report.model_dump_json(indent=2))
    if json_default(json_output):
        typer.echo(report.model_dump_json(indent=2))
    else:
        render_census(report)
    raise typer.Exit(code=EXIT_FALSE if report.counterexamples or report.mismatches else EXIT_TRUE)

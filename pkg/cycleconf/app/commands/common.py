"""
Plumbing shared by every command: graph input, report output, exit codes and
error translation.

Exit codes: 0 when the verdict is true, 1 when it is false, 2 for usage and
input errors. Reports go to stdout, logs and error messages to stderr.
"""
import functools
import logging
import sys
import time
from pathlib import Path
from typing import Annotated, Any, Callable, Optional

import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from cycleconf.app import config
from cycleconf.app.domain.errors import CycleconfError, GraphFormatError
from cycleconf.app.domain.graph import Cycle, Graph, Matching
from cycleconf.app.domain.graph_io import Format, read_graph, to_graph6
from cycleconf.app.schemas import Report

logger = logging.getLogger(__name__)

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2

InputPath = Annotated[
    Optional[Path],
    typer.Option(
        "--input", "-i", exists=True, dir_okay=False, help="Graph file (graph6, edge list or DOT); stdin when omitted."
    ),
]
InputFormat = Annotated[
    Optional[str],
    typer.Option("--in-format", help="Input format: graph6, edges or dot. Detected when omitted."),
]
JsonOutput = Annotated[
    bool,
    typer.Option("--json", help="Emit the report as JSON instead of text."),
]
Witness = Annotated[
    bool,
    typer.Option("--witness", help="Include a verifiable witness in the report."),
]

FORMATS = ("graph6", "edges", "dot")


def configure(
    log_level: Annotated[str, typer.Option("--log-level", help="Log level for stderr diagnostics.")] = config.LOG_LEVEL,
) -> None:
    """Structural matching theory toolkit for cycle-conformal graphs."""
    logging.basicConfig(
        level=log_level.upper(),
        format="%(message)s",
        handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
        force=True,
    )


def json_default(json_output: bool) -> bool:
    return json_output or config.OUTPUT_FORMAT == "json"


def parse_format(value: Optional[str]) -> Optional[Format]:
    if value is None:
        return None
    if value not in FORMATS:
        raise typer.BadParameter(f"format must be one of {', '.join(FORMATS)}, got {value!r}")
    return value  # type: ignore[return-value]


def read_input(path: Optional[Path], fmt: Optional[str] = None) -> Graph:
    text = path.read_text() if path is not None else sys.stdin.read()
    if not text.strip():
        raise GraphFormatError("no graph on input", position=0)
    name = path.stem if path is not None else None
    return read_graph(text, parse_format(fmt), name=name)


def serialize(value: Any) -> Any:
    """JSON-ready form of domain witnesses."""
    if isinstance(value, Cycle):
        return list(value.vertices)
    if isinstance(value, Matching):
        return [list(e) for e in value.edges]
    if isinstance(value, Graph):
        return to_graph6(value)
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [serialize(v) for v in items]
    if isinstance(value, dict):
        return {str(k): serialize(v) for k, v in value.items()}
    return value


def build_report(
    tool: str,
    g: Graph,
    verdict: bool | str,
    started: float,
    reason: Optional[str] = None,
    witness: Any = None,
    evidence: Optional[dict[str, Any]] = None,
) -> Report:
    return Report(
        tool=tool,
        input=to_graph6(g),
        verdict=verdict,
        reason=reason,
        witness=serialize(witness),
        evidence=serialize(evidence or {}),
        timing_ms=(time.perf_counter() - started) * 1000,
    )


def render_text(report: Report) -> None:
    table = Table(title=report.tool, show_header=False)
    table.add_column("field", style="bold")
    table.add_column("value")
    table.add_row("input", report.input)
    table.add_row("verdict", str(report.verdict))
    if report.reason:
        table.add_row("reason", report.reason)
    if report.witness is not None:
        table.add_row("witness", str(report.witness))
    for key, value in report.evidence.items():
        table.add_row(key, str(value))
    table.add_row("time", f"{report.timing_ms:.1f} ms")
    Console(highlight=False).print(table)


def exit_code(verdict: bool | str) -> int:
    if verdict is False:
        return EXIT_FALSE
    return EXIT_TRUE


def emit(report: Report, json_output: bool) -> None:
    """Print the report and leave with the verdict's exit code."""
    if json_default(json_output):
        typer.echo(report.model_dump_json(indent=2))
    else:
        render_text(report)
    raise typer.Exit(code=exit_code(report.verdict))


def handles_errors(tool: str) -> Callable:
    """Translate domain errors raised by a command into exit code 2 with a message on stderr."""

    def decorate(command: Callable) -> Callable:
        @functools.wraps(command)
        def wrapper(*args, **kwargs):
            try:
                return command(*args, **kwargs)
            except CycleconfError as e:
                position = getattr(e, "position", None)
                where = f" at position {position}" if isinstance(e, GraphFormatError) and position is not None else ""
                typer.echo(f"error: {e.reason}{where}: {e}", err=True)
                logger.debug(f"{tool} failed with {type(e).__name__}")
                if json_default(kwargs.get("json_output", False)):
                    evidence: dict[str, Any] = {"message": str(e)}
                    if position is not None:
                        evidence["position"] = position
                    typer.echo(Report(tool=tool, input="", verdict="error", reason=e.reason, evidence=evidence).model_dump_json(indent=2))
                raise typer.Exit(code=EXIT_ERROR)

        return wrapper

    return decorate

import sys
from typing import Optional, Sequence

import click
import typer

from cycleconf.app.commands import check, common, count
from cycleconf.app.commands.census import census
from cycleconf.app.commands.convert import convert
from cycleconf.app.commands.decompose import decompose_command
from cycleconf.app.commands.gen import generate

app = typer.Typer(name="cycleconf", no_args_is_help=True, add_completion=False)

app.callback()(common.configure)
app.command("gen")(generate)
app.add_typer(check.app, name="check")
app.command("decompose")(decompose_command)
app.command("census")(census)
app.command("convert")(convert)
app.add_typer(count.app, name="count")


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI on `argv` and return its exit code instead of exiting."""
    try:
        result = app(args=list(argv) if argv is not None else None, standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        return common.EXIT_FALSE
    return result if isinstance(result, int) else common.EXIT_TRUE


if __name__ == "__main__":
    sys.exit(run())

"""Main CLI entry point for enflo."""

import logging

import typer
from typing_extensions import Annotated

from enflo import __version__
from enflo.cli import commands

app = typer.Typer(
    name="enflo",
    help="Modified Enflo spaces: constructions and non-embeddability checks",
    no_args_is_help=True,
)

# Register command groups
app.add_typer(commands.space.app, name="space")
app.add_typer(commands.verify.app, name="verify")
app.add_typer(commands.config.app, name="config")

# Register certify as a direct command (one operation, no subcommands)
app.command(name="certify")(commands.certify.certify)


@app.callback()
def _startup(
    verbose: Annotated[
        bool, typer.Option("--verbose", "-v", help="Log progress to stderr")
    ] = False,
) -> None:
    """Run once before any command.

    Library modules log at debug level; reports on stdout stay clean unless
    --verbose is given.
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


@app.command()
def version():
    """Show version information."""
    typer.echo(f"enflo version {__version__}")


def main():
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    main()

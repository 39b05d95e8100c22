"""Report emission, timing and exit-code handling shared by commands."""

import time
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path

import typer

from enflo.errors import EnfloError
from enflo.reports import Check, build_envelope, dumps

# Verdicts that end a run with exit code 0
_SUCCESS = {"pass", "degenerate", "illustration"}


class Timer:
    """Wall-clock seconds per named phase."""

    def __init__(self):
        self.timings: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = self.timings.get(name, 0.0) + time.perf_counter() - start


def fail(message: str, code: int = 2) -> None:
    """Print an error to stderr and exit."""
    typer.echo(f"Error: {message}", err=True)
    raise typer.Exit(code)


@contextmanager
def cli_errors() -> Iterator[None]:
    """Turn library errors into exit code 2 with a one-line message."""
    try:
        yield
    except EnfloError as e:
        fail(str(e))
    except (OSError, ValueError) as e:
        fail(str(e))


def combine(verdicts: list[str]) -> str:
    """Overall verdict of several checks: any fail, then any inconclusive."""
    for verdict in ("fail", "inconclusive"):
        if verdict in verdicts:
            return verdict
    return "pass"


def write(text: str, out: Path | None) -> None:
    """Send text to stdout, or to a file with a note on stderr."""
    if out is None:
        typer.echo(text)
        return
    out.write_text(text if text.endswith("\n") else text + "\n")
    typer.echo(f"Report written to {out}", err=True)


def emit_report(
    command: str,
    mode: str,
    parameters: dict,
    seed: int | None,
    checks: list[Check],
    verdict: str,
    *,
    timer: Timer | None = None,
    timestamp: bool = True,
    out: Path | None = None,
) -> None:
    """Write the JSON envelope and exit 0 on success verdicts, 1 otherwise."""
    envelope = build_envelope(
        command,
        mode,
        parameters,
        seed,
        checks,
        verdict,
        timings=timer.timings if timer else None,
        timestamp=timestamp,
    )
    write(dumps(envelope), out)
    finish(verdict)


def finish(verdict: str) -> None:
    raise typer.Exit(0 if verdict in _SUCCESS else 1)

"""Report envelopes shared by every CLI command.

Every command emits one JSON object (see schemas/report.v1.json). Exact
numbers are written as strings ("3/2") so rationals survive the trip;
floats stay JSON numbers.

Usage:
    from enflo.reports import Check, build_envelope, dumps

    envelope = build_envelope("verify chain", "exact", params, 0, checks, "pass")
    typer.echo(dumps(envelope))
"""

import csv
import io
import json
import math
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from importlib import resources

import numpy as np

SCHEMA_VERSION = "enflo.report.v1"

VERDICTS = ("pass", "fail", "degenerate", "inconclusive", "illustration")

__all__ = [
    "SCHEMA_VERSION",
    "VERDICTS",
    "Check",
    "build_envelope",
    "to_jsonable",
    "dumps",
    "mean_table_csv",
    "load_schema",
]


@dataclass
class Check:
    """One named check inside a report; passed is None for informational entries."""

    name: str
    passed: bool | None
    details: dict

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {"name": self.name, "passed": self.passed, "details": self.details}


def build_envelope(
    command: str,
    mode: str,
    parameters: dict,
    seed: int | None,
    checks: list[Check],
    verdict: str,
    *,
    timings: dict[str, float] | None = None,
    timestamp: bool = True,
) -> dict:
    """Assemble the report envelope.

    Args:
        command: Command name, e.g. "verify chain".
        mode: exact, enumerated, sampled or formula.
        parameters: Resolved run parameters.
        seed: Top-level seed (None when nothing is random).
        checks: Individual checks.
        verdict: Overall verdict, one of VERDICTS.
        timings: Wall-clock seconds per phase.
        timestamp: Include timings and an ISO timestamp.

    Raises:
        ValueError: If verdict is unknown.
    """
    if verdict not in VERDICTS:
        raise ValueError(f"Unknown verdict: {verdict}")
    envelope = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "mode": mode,
        "parameters": parameters,
        "seed": seed,
        "checks": [check.to_dict() for check in checks],
        "verdict": verdict,
    }
    if timestamp:
        envelope["timings"] = {k: round(v, 6) for k, v in (timings or {}).items()}
        envelope["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return envelope


def to_jsonable(value):
    """Recursively convert report values into JSON-ready Python objects."""
    if isinstance(value, bool) or value is None or isinstance(value, (str, int)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    return str(value)


def dumps(envelope: dict) -> str:
    """Deterministic JSON text: sorted keys, two-space indent."""
    return json.dumps(to_jsonable(envelope), sort_keys=True, indent=2)


def mean_table_csv(rows: list[tuple[str, list[list]]]) -> str:
    """CSV text with header map,level,mean,stderr,samples.

    Args:
        rows: (map name, MeanTable.csv_rows()) per map.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["map", "level", "mean", "stderr", "samples"])
    for name, table_rows in rows:
        for level, mean, stderr, samples in table_rows:
            writer.writerow([name, level, to_jsonable(mean), stderr, samples])
    return buffer.getvalue()


def load_schema(version: str = "v1") -> dict:
    """The shipped JSON Schema for report envelopes."""
    path = resources.files("enflo.reports").joinpath("schemas", f"report.{version}.json")
    text = path.read_text()
    return json.loads(text)

"""Shared command-line options and their resolution.

Every run parameter resolves as: command-line flag, then environment
(ENFLO_BUDGET_POINTS), then the config file, then the built-in default.
"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import typer
from typing_extensions import Annotated

from enflo.config import get_setting, load_config
from enflo.embeddings import (
    CircleLift,
    CoordinateLift,
    EmbeddingMap,
    RandomLinear,
    load_table_csv,
)
from enflo.poincare import Mode
from enflo.space import SpaceSpec, make_custom_spec, make_space_spec


class OutputFormat(str, Enum):
    """Report output formats."""

    json = "json"
    csv = "csv"


NOption = Annotated[
    int | None, typer.Option("--n", help="Default family: q=2^(n+1), d=2n^n, p=n, L=n-1")
]
QOption = Annotated[int | None, typer.Option("--q", help="Cycle length q")]
DOption = Annotated[int | None, typer.Option("--d", help="Number of coordinates d")]
POption = Annotated[int | None, typer.Option("--p", help="Branching parameter p")]
LOption = Annotated[int | None, typer.Option("--L", help="Number of segment levels L")]
ModeOption = Annotated[
    Mode | None,
    typer.Option("--mode", help="exact, enumerated or sampled (default: by map and size)"),
]
SeedOption = Annotated[int | None, typer.Option("--seed", help="Top-level random seed")]
SamplesOption = Annotated[
    int | None, typer.Option("--samples", help="Samples per estimate in sampled mode")
]
BudgetOption = Annotated[
    int | None, typer.Option("--budget-points", help="Largest q^d enumerated pointwise")
]
OutOption = Annotated[
    Path | None, typer.Option("--out", "-o", help="Write the report here instead of stdout")
]
FormatOption = Annotated[
    OutputFormat, typer.Option("--format", help="json, or csv for mean tables")
]
NoTimestampOption = Annotated[
    bool,
    typer.Option("--no-timestamp", help="Omit timestamp and timings (byte-identical reruns)"),
]
EmbeddingOption = Annotated[
    str,
    typer.Option(
        "--embedding",
        "-e",
        help="circle, coordinate, random, or a CSV table of point -> image rows",
    ),
]


@dataclass
class RunSettings:
    """Resolved numeric settings of one invocation."""

    seed: int
    samples: int
    max_points: int
    max_pairs: int
    max_group: int
    max_ball: int
    sigma_gate: float
    rel_tol: float
    max_components: int
    sample_pairs: int
    exhaustive_pairs_limit: int

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "seed": self.seed,
            "samples": self.samples,
            "max_points": self.max_points,
            "max_pairs": self.max_pairs,
            "max_group": self.max_group,
            "max_ball": self.max_ball,
            "sigma_gate": self.sigma_gate,
            "rel_tol": self.rel_tol,
            "max_components": self.max_components,
            "sample_pairs": self.sample_pairs,
            "exhaustive_pairs_limit": self.exhaustive_pairs_limit,
        }


def resolve_settings(
    seed: int | None = None,
    samples: int | None = None,
    budget_points: int | None = None,
) -> RunSettings:
    """Fill unset flags from the environment, config file and defaults.

    Raises:
        typer.BadParameter: If a value is out of range.
    """
    config = load_config()
    settings = RunSettings(
        seed=seed if seed is not None else get_setting(config, "sampling", "seed"),
        samples=samples if samples is not None else get_setting(config, "sampling", "samples"),
        max_points=(
            budget_points
            if budget_points is not None
            else get_setting(config, "budgets", "max_points")
        ),
        max_pairs=get_setting(config, "budgets", "max_pairs"),
        max_group=get_setting(config, "budgets", "max_group"),
        max_ball=get_setting(config, "budgets", "max_ball"),
        sigma_gate=get_setting(config, "sampling", "sigma_gate"),
        rel_tol=get_setting(config, "sampling", "rel_tol"),
        max_components=get_setting(config, "graph", "max_components"),
        sample_pairs=get_setting(config, "graph", "sample_pairs"),
        exhaustive_pairs_limit=get_setting(config, "graph", "exhaustive_pairs_limit"),
    )
    if settings.seed < 0:
        raise typer.BadParameter(f"seed must be >= 0, got {settings.seed}")
    if settings.samples < 2:
        raise typer.BadParameter(f"samples must be >= 2, got {settings.samples}")
    if settings.max_points < 1:
        raise typer.BadParameter(f"budget must be >= 1, got {settings.max_points}")
    return settings


def resolve_spec(
    n: int | None,
    q: int | None,
    d: int | None,
    p: int | None,
    levels: int | None,
    *,
    required: bool = True,
) -> SpaceSpec | None:
    """Build the space from --n or from --q --d --p --L.

    Raises:
        typer.BadParameter: If the flags are missing or mixed.
        SpaceSpecError: If the parameters are invalid.
    """
    custom = (q, d, p, levels)
    if n is not None:
        if any(x is not None for x in custom):
            raise typer.BadParameter("Use either --n or --q/--d/--p/--L, not both")
        return make_space_spec(n)
    if all(x is not None for x in custom):
        return make_custom_spec(q, d, p, levels)
    if any(x is not None for x in custom):
        raise typer.BadParameter("--q, --d, --p and --L must be given together")
    if required:
        raise typer.BadParameter("Specify a space with --n or --q --d --p --L")
    return None


def resolve_map(spec: SpaceSpec, embedding: str, seed: int) -> EmbeddingMap:
    """Embedding map by name, or a Tabulated map read from a CSV path.

    Raises:
        typer.BadParameter: If the name is unknown and no such file exists.
    """
    if embedding == "circle":
        return CircleLift(spec)
    if embedding == "coordinate":
        return CoordinateLift(spec)
    if embedding == "random":
        config = load_config()
        return RandomLinear(
            spec,
            target_dim=get_setting(config, "embedding", "random_linear_dim"),
            seed=seed,
            bound=get_setting(config, "embedding", "random_linear_bound"),
        )
    path = Path(embedding)
    if not path.exists():
        raise typer.BadParameter(
            f"Unknown embedding '{embedding}'. Use circle, coordinate, random or a CSV path."
        )
    return load_table_csv(spec, path)


def resolve_mode(
    mode: Mode | None,
    spec: SpaceSpec,
    fmap: EmbeddingMap | None,
    settings: RunSettings,
    *,
    exact: bool = False,
) -> Mode:
    """Pick the computation mode.

    Without --mode: exact for rational maps, enumerated otherwise, and
    sampled once q^d is above the point budget.

    Raises:
        typer.BadParameter: If --exact conflicts with --mode, or exact mode
            is asked for an irrational map.
    """
    if exact:
        if mode not in (None, Mode.exact):
            raise typer.BadParameter(f"--exact conflicts with --mode {mode.value}")
        mode = Mode.exact
    rational = fmap is None or fmap.is_rational
    if mode is None:
        if spec.num_points > settings.max_points:
            return Mode.sampled
        return Mode.exact if rational else Mode.enumerated
    if mode is Mode.exact and not rational:
        raise typer.BadParameter(
            f"Exact mode needs a rational map; '{fmap.kind}' is not. Use --mode enumerated."
        )
    return mode

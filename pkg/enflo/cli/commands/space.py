"""Space command implementation.

Prints the parameters, segment counts and group size of a space.
"""

import math

import typer
from typing_extensions import Annotated

from enflo.cli.options import (
    BudgetOption,
    DOption,
    LOption,
    NOption,
    NoTimestampOption,
    OutOption,
    POption,
    QOption,
    resolve_settings,
    resolve_spec,
)
from enflo.cli.output import Timer, cli_errors, emit_report
from enflo.reports import Check
from enflo.space import (
    SpaceSpec,
    count_segments_formula,
    default_family_table,
    isometry_group_size,
    segment_tuples,
)

app = typer.Typer(help="Inspect modified Enflo spaces")


def _segment_counts(spec: SpaceSpec, budget: int) -> Check:
    """Formula counts per level, cross-checked by enumeration when q^d fits the budget."""
    levels = []
    agree = True
    enumerate_all = spec.num_points <= budget
    for m in spec.levels:
        row = {"level": m, "support": spec.support(m), "step": spec.step(m)}
        row["formula"] = count_segments_formula(spec, m)
        if enumerate_all:
            row["enumerated"] = sum(1 for _ in segment_tuples(spec, m, budget))
            agree = agree and row["enumerated"] == row["formula"]
        levels.append(row)
    return Check("segment_counts", agree if enumerate_all else None, {"levels": levels})


@app.command()
def info(
    n: NOption = None,
    q: QOption = None,
    d: DOption = None,
    p: POption = None,
    levels: LOption = None,
    table: Annotated[
        int | None,
        typer.Option("--table", help="Also list the default family for n = 2..N"),
    ] = None,
    budget_points: BudgetOption = None,
    out: OutOption = None,
    no_timestamp: NoTimestampOption = False,
):
    """Show a space: parameters, ordered segment counts and isometry group size.

    Examples:
        enflo space info --n 3
        enflo space info --q 8 --d 2 --p 2 --L 1 --table 6
    """
    timer = Timer()
    with cli_errors():
        settings = resolve_settings(budget_points=budget_points)
        spec = resolve_spec(n, q, d, p, levels)
        with timer.phase("counts"):
            counts = _segment_counts(spec, settings.max_points)
        group = isometry_group_size(spec)
        checks = [
            Check("space", None, {**spec.to_dict(), "num_points": spec.num_points}),
            counts,
            Check(
                "isometry_group",
                None,
                {"size": str(group), "log10_size": math.log10(group)},
            ),
        ]
        if table is not None:
            checks.append(
                Check("default_family", None, {"rows": default_family_table(table)})
            )

        emit_report(
            "space info",
            "formula",
            {"spec": spec.to_dict(), "n": n, "budget_points": settings.max_points},
            None,
            checks,
            "fail" if counts.passed is False else "pass",
            timer=timer,
            timestamp=not no_timestamp,
            out=out,
        )

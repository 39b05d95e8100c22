"""Certify command implementation.

Runs the Enflo-ratio certificate and the empirical compression and
expansion moduli for one embedding.

Usage:
    enflo certify --q 8 --d 2 --p 2 --L 1 --embedding circle
    enflo certify --q 8 --d 2 --p 2 --L 1 --embedding table.csv
    enflo certify --n 4 --embedding circle --mode sampled --samples 2000
"""

import math

import typer
from typing_extensions import Annotated

from enflo.cli.options import (
    BudgetOption,
    DOption,
    EmbeddingOption,
    LOption,
    ModeOption,
    NOption,
    NoTimestampOption,
    OutOption,
    POption,
    QOption,
    SamplesOption,
    SeedOption,
    resolve_map,
    resolve_mode,
    resolve_settings,
    resolve_spec,
)
from enflo.cli.output import Timer, cli_errors, emit_report
from enflo.embeddings import (
    distortion_contradiction_scale,
    empirical_moduli,
    exhaustive_moduli,
)
from enflo.poincare import Mode, enflo_certificate
from enflo.reports import Check

app = typer.Typer(help="Certify distortion lower bounds for an embedding")


@app.command()
def certify(
    n: NOption = None,
    q: QOption = None,
    d: DOption = None,
    p: POption = None,
    levels: LOption = None,
    embedding: EmbeddingOption = "circle",
    mode: ModeOption = None,
    seed: SeedOption = None,
    samples: SamplesOption = None,
    moduli_samples: Annotated[
        int,
        typer.Option("--moduli-samples", help="Sampled point pairs per scale for the moduli"),
    ] = 1000,
    budget_points: BudgetOption = None,
    out: OutOption = None,
    no_timestamp: NoTimestampOption = False,
):
    """Ratio of the shortest top-level image to the longest bottom-level image.

    The ratio is compared with sqrt((p/(p-1))^L); a map of a sampled space
    yields an illustration, a map collapsing both levels a degenerate
    verdict. Moduli are exhaustive when all point pairs fit the pair budget.
    """
    timer = Timer()
    with cli_errors():
        settings = resolve_settings(seed=seed, samples=samples, budget_points=budget_points)
        spec = resolve_spec(n, q, d, p, levels)
        fmap = resolve_map(spec, embedding, settings.seed)
        run_mode = resolve_mode(mode, spec, fmap, settings)

        with timer.phase("certificate"):
            report = enflo_certificate(
                spec,
                fmap,
                run_mode,
                budget=settings.max_points,
                samples=settings.samples,
                seed=settings.seed,
                rel_tol=settings.rel_tol,
            )
        with timer.phase("moduli"):
            exhaustive = (
                run_mode is not Mode.sampled and spec.num_points**2 <= settings.max_pairs
            )
            if exhaustive:
                moduli = exhaustive_moduli(spec, fmap, settings.max_pairs)
            else:
                moduli = empirical_moduli(spec, fmap, moduli_samples, settings.seed)
        scale = distortion_contradiction_scale(moduli)

        passed = {"pass": True, "fail": False}.get(report.verdict)
        checks = [
            Check("certificate", passed, report.to_dict()),
            Check("moduli", None, moduli.to_dict()),
            Check(
                "contradiction_scale",
                None,
                {"scale": scale, "threshold_factor": 2 * math.sqrt(math.e)},
            ),
        ]
        emit_report(
            "certify",
            run_mode.value,
            {
                "spec": spec.to_dict(),
                "embedding": fmap.describe(),
                "budgets": settings.to_dict(),
                "moduli_samples": None if exhaustive else moduli_samples,
            },
            settings.seed,
            checks,
            report.verdict,
            timer=timer,
            timestamp=not no_timestamp,
            out=out,
        )

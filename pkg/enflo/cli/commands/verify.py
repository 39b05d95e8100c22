"""Verify command implementation.

One subcommand per verification; each prints a JSON report and exits 0 on
pass, 1 on failure and 2 on usage or budget errors.
"""

from pathlib import Path

import networkx as nx
import numpy as np
import typer
from typing_extensions import Annotated

from enflo.cli.options import (
    BudgetOption,
    DOption,
    EmbeddingOption,
    FormatOption,
    LOption,
    ModeOption,
    NOption,
    NoTimestampOption,
    OutOption,
    OutputFormat,
    POption,
    QOption,
    RunSettings,
    SamplesOption,
    SeedOption,
    resolve_map,
    resolve_mode,
    resolve_settings,
    resolve_spec,
)
from enflo.cli.output import Timer, cli_errors, combine, emit_report, finish, write
from enflo.embeddings import random_integer_map
from enflo.graphgroup import (
    generator_distortion,
    isometric_embedding_check,
    loop_check,
    oriented,
    pointed_cycle,
    spanning_tree,
    unit_graph,
    wedge,
    word_metric_check,
    write_edge_list,
)
from enflo.poincare import Mode, chain_check, gap_trials, orbit_average_check
from enflo.reports import Check, mean_table_csv
from enflo.space import (
    SpaceSpec,
    double_simplex,
    point_array,
    random_isometry,
    transitivity_check,
    transported_double_simplex,
    verify_double_simplex,
)

app = typer.Typer(help="Run verifications and emit JSON reports", no_args_is_help=True)

LevelOption = Annotated[
    int | None, typer.Option("--m", help="Segment level (default: every level)")
]
CycleOption = Annotated[
    int | None, typer.Option("--cycle", help="Use the pointed N-cycle instead of a unit graph")
]
CopiesOption = Annotated[
    int, typer.Option("--copies", help="Wedge this many copies at the basepoint")
]
WordBudgetOption = Annotated[
    int | None,
    typer.Option("--word-budget", help="Word-length search budget (default: from the diameter)"),
]


def _levels(spec: SpaceSpec, m: int | None, lowest: int) -> list[int]:
    if m is None:
        return list(range(lowest, spec.L + 1))
    spec.check_level(m, lowest=lowest)
    return [m]


def _parameters(spec: SpaceSpec | None, settings: RunSettings, **extra) -> dict:
    parameters = {"budgets": settings.to_dict(), **extra}
    if spec is not None:
        parameters["spec"] = spec.to_dict()
    return parameters


@app.command()
def prop1(
    n: NOption = None,
    q: QOption = None,
    d: DOption = None,
    p: POption = None,
    levels: LOption = None,
    m: LevelOption = None,
    pairs: Annotated[
        int | None,
        typer.Option("--pairs", help="Sample this many segment pairs instead of all of them"),
    ] = None,
    probes: Annotated[int, typer.Option("--probes", help="Probe segments per isometry")] = 50,
    seed: SeedOption = None,
    budget_points: BudgetOption = None,
    out: OutOption = None,
    no_timestamp: NoTimestampOption = False,
):
    """Segment transitivity: an isometry maps any m-segment onto any other.

    All pairs are checked when the space fits the point budget; larger
    spaces sample 1000 pairs unless --pairs says otherwise.

    Examples:
        enflo verify prop1 --q 8 --d 2 --p 2 --L 1 --m 1
        enflo verify prop1 --n 3 --pairs 200
    """
    timer = Timer()
    with cli_errors():
        settings = resolve_settings(seed=seed, budget_points=budget_points)
        spec = resolve_spec(n, q, d, p, levels)
        if pairs is None and spec.num_points > settings.max_points:
            pairs = 1000
        checks = []
        for level in _levels(spec, m, lowest=0):
            with timer.phase(f"level_{level}"):
                report = transitivity_check(
                    spec,
                    level,
                    pairs=pairs,
                    probes=probes,
                    seed=settings.seed,
                    budget_points=settings.max_points,
                    budget_pairs=settings.max_pairs,
                )
            checks.append(Check(f"transitivity[{level}]", report.passed, report.to_dict()))
        emit_report(
            "verify prop1",
            Mode.exact.value if pairs is None else Mode.sampled.value,
            _parameters(spec, settings, pairs=pairs, probes=probes),
            settings.seed,
            checks,
            combine(["pass" if c.passed else "fail" for c in checks]),
            timer=timer,
            timestamp=not no_timestamp,
            out=out,
        )


@app.command()
def prop2(
    n: NOption = None,
    q: QOption = None,
    d: DOption = None,
    p: POption = None,
    levels: LOption = None,
    m: LevelOption = None,
    seed: SeedOption = None,
    out: OutOption = None,
    no_timestamp: NoTimestampOption = False,
):
    """Double simplices: edges are m-segments, connecting lines (m-1)-segments.

    Each simplex is also moved by a random isometry and checked again.

    Examples:
        enflo verify prop2 --n 3 --m 2
        enflo verify prop2 --n 4
    """
    timer = Timer()
    with cli_errors():
        settings = resolve_settings(seed=seed)
        spec = resolve_spec(n, q, d, p, levels)
        h = random_isometry(spec, settings.seed)
        checks = []
        for level in _levels(spec, m, lowest=1):
            with timer.phase(f"level_{level}"):
                ds = double_simplex(spec, level)
                report = verify_double_simplex(spec, ds)
                moved = verify_double_simplex(spec, transported_double_simplex(spec, h, ds))
            details = {
                **report.to_dict(),
                "index_set_size": len(ds.index_set),
                "block_sizes": [len(block) for block in ds.blocks],
            }
            checks.append(Check(f"double_simplex[{level}]", report.passed, details))
            checks.append(Check(f"transported[{level}]", moved.passed, moved.to_dict()))
        emit_report(
            "verify prop2",
            Mode.exact.value,
            _parameters(spec, settings),
            settings.seed,
            checks,
            combine(["pass" if c.passed else "fail" for c in checks]),
            timer=timer,
            timestamp=not no_timestamp,
            out=out,
        )


@app.command()
def prop3(
    trials: Annotated[int, typer.Option("--trials", help="Random configurations")] = 1000,
    exact: Annotated[
        bool, typer.Option("--exact/--float", help="Rational or floating-point coordinates")
    ] = True,
    seed: SeedOption = None,
    out: OutOption = None,
    no_timestamp: NoTimestampOption = False,
):
    """Euclidean double simplices: sum of squared lines minus sum of squared edges.

    The gap must equal |Σu - Σv|² and never be negative.

    Examples:
        enflo verify prop3 --trials 1000 --exact
    """
    timer = Timer()
    with cli_errors():
        settings = resolve_settings(seed=seed)
        if trials < 1:
            raise typer.BadParameter(f"trials must be >= 1, got {trials}")
        with timer.phase("trials"):
            report = gap_trials(trials, settings.seed, exact=exact, rel_tol=settings.rel_tol)
        emit_report(
            "verify prop3",
            Mode.exact.value if exact else Mode.enumerated.value,
            {"trials": trials, "exact": exact, "p_range": [2, 6], "dim_range": [1, 16]},
            settings.seed,
            [Check("gap_identity", report.passed, report.to_dict())],
            "pass" if report.passed else "fail",
            timer=timer,
            timestamp=not no_timestamp,
            out=out,
        )


@app.command()
def chain(
    n: NOption = None,
    q: QOption = None,
    d: DOption = None,
    p: POption = None,
    levels: LOption = None,
    embedding: EmbeddingOption = "circle",
    maps: Annotated[
        int | None,
        typer.Option("--maps", help="Check this many seeded random integer maps instead"),
    ] = None,
    exact: Annotated[bool, typer.Option("--exact", help="Same as --mode exact")] = False,
    mode: ModeOption = None,
    seed: SeedOption = None,
    samples: SamplesOption = None,
    budget_points: BudgetOption = None,
    out: OutOption = None,
    output_format: FormatOption = OutputFormat.json,
    no_timestamp: NoTimestampOption = False,
):
    """Averaging chain (p/(p-1))·ḡ_{m-1} >= ḡ_m at every level.

    Examples:
        enflo verify chain --q 10 --d 4 --p 2 --L 2 --maps 100 --exact
        enflo verify chain --n 3 --embedding circle --mode sampled --seed 7
    """
    timer = Timer()
    with cli_errors():
        settings = resolve_settings(seed=seed, samples=samples, budget_points=budget_points)
        spec = resolve_spec(n, q, d, p, levels)
        if maps is not None:
            if maps < 1:
                raise typer.BadParameter(f"maps must be >= 1, got {maps}")
            fmaps = [
                random_integer_map(spec, seed=settings.seed, index=i, budget=settings.max_points)
                for i in range(maps)
            ]
            label = {"maps": maps}
        else:
            fmaps = [resolve_map(spec, embedding, settings.seed)]
            label = {"embedding": fmaps[0].describe()}
        run_mode = resolve_mode(mode, spec, fmaps[0], settings, exact=exact)

        checks, tables = [], []
        with timer.phase("chain"):
            for fmap in fmaps:
                report = chain_check(
                    spec,
                    fmap,
                    run_mode,
                    budget=settings.max_points,
                    samples=settings.samples,
                    seed=settings.seed,
                    sigma_gate=settings.sigma_gate,
                    rel_tol=settings.rel_tol,
                )
                name = fmap.describe().get("name", fmap.kind)
                checks.append(Check(f"chain[{name}]", report.passed, report.to_dict()))
                tables.append((name, report.table.csv_rows()))
        verdict = combine(["pass" if c.passed else "fail" for c in checks])

        if output_format is OutputFormat.csv:
            write(mean_table_csv(tables), out)
            finish(verdict)
        emit_report(
            "verify chain",
            run_mode.value,
            _parameters(spec, settings, **label),
            settings.seed,
            checks,
            verdict,
            timer=timer,
            timestamp=not no_timestamp,
            out=out,
        )


@app.command()
def orbit(
    n: NOption = None,
    q: QOption = None,
    d: DOption = None,
    p: POption = None,
    levels: LOption = None,
    m: Annotated[int, typer.Option("--m", help="Level of the double simplex")] = 1,
    embedding: EmbeddingOption = "circle",
    mode: ModeOption = None,
    seed: SeedOption = None,
    samples: SamplesOption = None,
    budget_points: BudgetOption = None,
    out: OutOption = None,
    no_timestamp: NoTimestampOption = False,
):
    """Orbit average of the double-simplex inequality under the isometry group.

    Enumerated modes walk the whole group and also check that every
    segment is covered equally often; sampled mode draws --samples
    isometries.

    Examples:
        enflo verify orbit --q 8 --d 2 --p 2 --L 1 --embedding coordinate
        enflo verify orbit --n 4 --m 1 --mode sampled --samples 10000
    """
    timer = Timer()
    with cli_errors():
        settings = resolve_settings(seed=seed, samples=samples, budget_points=budget_points)
        spec = resolve_spec(n, q, d, p, levels)
        fmap = resolve_map(spec, embedding, settings.seed)
        run_mode = resolve_mode(mode, spec, fmap, settings)
        with timer.phase("orbit"):
            report = orbit_average_check(
                spec,
                m,
                fmap,
                run_mode,
                budget_group=settings.max_group,
                budget_points=settings.max_points,
                samples=settings.samples,
                seed=settings.seed,
                rel_tol=settings.rel_tol,
            )
        emit_report(
            "verify orbit",
            run_mode.value,
            _parameters(spec, settings, m=m, embedding=fmap.describe()),
            settings.seed,
            [Check(f"orbit[{m}]", report.verdict == "pass", report.to_dict())],
            report.verdict,
            timer=timer,
            timestamp=not no_timestamp,
            out=out,
        )


def _build_graph(
    spec: SpaceSpec | None, cycle: int | None, copies: int, settings: RunSettings
) -> nx.Graph:
    if (spec is None) == (cycle is None):
        raise typer.BadParameter(
            "Choose exactly one of --cycle N or a space (--n or --q --d --p --L)"
        )
    if copies < 1:
        raise typer.BadParameter(f"copies must be >= 1, got {copies}")
    base = pointed_cycle(cycle) if cycle is not None else unit_graph(spec, settings.max_points)
    if copies == 1:
        return base
    return wedge([base] * copies, settings.max_components)


def _max_metric_check(graph: nx.Graph, spec: SpaceSpec, settings: RunSettings) -> Check:
    """Path distance equals the max metric on every ordered pair of points."""
    P = point_array(spec, settings.max_points)
    if len(P) ** 2 > settings.max_pairs:
        return Check("max_metric", None, {"skipped": "point pairs exceed budgets.max_pairs"})
    mismatches = 0
    for i, row in enumerate(P):
        lengths = nx.single_source_shortest_path_length(graph, tuple(row.tolist()))
        r = np.mod(P - row, spec.q)
        expected = np.minimum(r, spec.q - r).max(axis=1)
        found = np.array([lengths[tuple(x)] for x in P.tolist()])
        mismatches += int(np.count_nonzero(found != expected))
    details = {"pairs": len(P) ** 2, "mismatches": mismatches}
    return Check("max_metric", mismatches == 0, details)


def _verdict_flag(verdict: str) -> bool | None:
    return None if verdict == "inconclusive" else verdict == "pass"


@app.command()
def graph(
    n: NOption = None,
    q: QOption = None,
    d: DOption = None,
    p: POption = None,
    levels: LOption = None,
    cycle: CycleOption = None,
    copies: CopiesOption = 1,
    word_budget: WordBudgetOption = None,
    seed: SeedOption = None,
    budget_points: BudgetOption = None,
    edges_out: Annotated[
        Path | None, typer.Option("--edges-out", help="Write the graph's edge list here")
    ] = None,
    tree_out: Annotated[
        Path | None,
        typer.Option("--tree-out", help="Write spanning-tree edges with their letters here"),
    ] = None,
    out: OutOption = None,
    no_timestamp: NoTimestampOption = False,
):
    """Graph metric and the isometric embedding of vertices as group words.

    Examples:
        enflo verify graph --cycle 4 --copies 2
        enflo verify graph --q 8 --d 2 --p 2 --L 1 --word-budget 8
    """
    timer = Timer()
    with cli_errors():
        settings = resolve_settings(seed=seed, budget_points=budget_points)
        spec = resolve_spec(n, q, d, p, levels, required=False)
        with timer.phase("build"):
            g = _build_graph(spec, cycle, copies, settings)
            tree = spanning_tree(g)
        checks = [
            Check(
                "graph",
                None,
                {
                    "vertices": g.number_of_nodes(),
                    "edges": g.number_of_edges(),
                    "copies": copies,
                    "tree_edges": len(tree.edges),
                },
            )
        ]
        verdicts = []
        if spec is not None and copies == 1:
            with timer.phase("max_metric"):
                metric_check = _max_metric_check(g, spec, settings)
            checks.append(metric_check)
            verdicts.append("fail" if metric_check.passed is False else "pass")
        with timer.phase("embedding"):
            report = isometric_embedding_check(
                g,
                tree,
                word_budget,
                sample_pairs=settings.sample_pairs,
                exhaustive_pairs_limit=settings.exhaustive_pairs_limit,
                seed=settings.seed,
                max_ball=settings.max_ball,
            )
        checks.append(Check("embedding", _verdict_flag(report.verdict), report.to_dict()))

        if edges_out is not None:
            count = write_edge_list(g, edges_out)
            typer.echo(f"Wrote {count} edges to {edges_out}", err=True)
        if tree_out is not None:
            edges = [oriented(u, v) for u, v in tree.edges]
            count = write_edge_list(g, tree_out, edges, [tree.letters[e] for e in edges])
            typer.echo(f"Wrote {count} tree edges to {tree_out}", err=True)

        emit_report(
            "verify graph",
            Mode.sampled.value if report.sampled else Mode.exact.value,
            _parameters(spec, settings, cycle=cycle, copies=copies, word_budget=report.budget),
            settings.seed,
            checks,
            combine([*verdicts, report.verdict]),
            timer=timer,
            timestamp=not no_timestamp,
            out=out,
        )


@app.command()
def group(
    n: NOption = None,
    q: QOption = None,
    d: DOption = None,
    p: POption = None,
    levels: LOption = None,
    cycle: CycleOption = None,
    copies: CopiesOption = 1,
    triples: Annotated[
        int, typer.Option("--triples", help="Vertex triples for the metric axioms")
    ] = 200,
    word_budget: WordBudgetOption = None,
    distortion: Annotated[
        bool, typer.Option("--distortion", help="Tabulate rho1 of tree letters in edge words")
    ] = False,
    radius: Annotated[
        int, typer.Option("--radius", help="Cayley ball radius for --distortion")
    ] = 3,
    seed: SeedOption = None,
    budget_points: BudgetOption = None,
    out: OutOption = None,
    no_timestamp: NoTimestampOption = False,
):
    """The group of edge words modulo loops: loops vanish, vertex words are distinct.

    Examples:
        enflo verify group --cycle 4 --copies 2
        enflo verify group --cycle 5 --distortion --radius 3
    """
    timer = Timer()
    with cli_errors():
        settings = resolve_settings(seed=seed, budget_points=budget_points)
        spec = resolve_spec(n, q, d, p, levels, required=False)
        with timer.phase("build"):
            g = _build_graph(spec, cycle, copies, settings)
            tree = spanning_tree(g)
        with timer.phase("loops"):
            loops = loop_check(tree)
            images = {tree.vertex_image(v) for v in g.nodes}
        injective = len(images) == g.number_of_nodes()
        with timer.phase("metric"):
            metric = word_metric_check(
                g, tree, triples, word_budget, seed=settings.seed, max_ball=settings.max_ball
            )
        checks = [
            Check(
                "generators",
                None,
                {"letters": len(tree.edges), "edges": g.number_of_edges()},
            ),
            Check("loops", loops.passed, loops.to_dict()),
            Check("injective", injective, {"vertices": g.number_of_nodes(), "images": len(images)}),
            Check("word_metric", _verdict_flag(metric.verdict), metric.to_dict()),
        ]
        if distortion:
            with timer.phase("distortion"):
                table = generator_distortion(tree, radius, settings.max_ball)
            checks.append(Check("distortion", None, {"radius": radius, "rho1": table}))

        verdict = combine(
            [
                "pass" if loops.passed else "fail",
                "pass" if injective else "fail",
                metric.verdict,
            ]
        )
        emit_report(
            "verify group",
            Mode.sampled.value,
            _parameters(spec, settings, cycle=cycle, copies=copies, triples=triples),
            settings.seed,
            checks,
            verdict,
            timer=timer,
            timestamp=not no_timestamp,
            out=out,
        )

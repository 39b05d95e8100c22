"""Check that a graph embeds isometrically in the group presented by its edges.

The group has one generator per graph edge and one relation per closed
walk. Rewriting every edge as its tree path makes it the free group on the
tree letters; vertex v goes to the word along the tree path from the root.
The check compares word distances of vertex images with path distances.
"""

import logging
from dataclasses import dataclass, field

import networkx as nx

from enflo.config import DEFAULTS
from enflo.errors import check_budget
from enflo.streams import GRAPH_PAIRS, derive_rng

from .graphs import Node
from .tree import SpanningTree
from .words import (
    GroupElement,
    InsufficientBallError,
    WordMetric,
    cayley_ball,
    subgroup_distortion,
)

logger = logging.getLogger(__name__)


@dataclass
class LoopReport:
    """Images of the fundamental cycles of a spanning tree."""

    cycles: int
    simple: int
    trivial: int

    @property
    def passed(self) -> bool:
        return self.simple == self.cycles and self.trivial == self.cycles

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "cycles": self.cycles,
            "simple": self.simple,
            "trivial": self.trivial,
            "passed": self.passed,
        }


@dataclass
class EmbeddingReport:
    """Outcome of comparing word distances with graph distances.

    ``mismatches`` lists up to ten offending pairs as (u, v, graph
    distance, word distance); ``inconclusive`` counts pairs whose search
    ran out of budget.
    """

    vertices: int
    edges: int
    tree_edges: int
    budget: int
    pairs_checked: int
    sampled: bool
    injective: bool
    loops: LoopReport
    inconclusive: int = 0
    mismatch_count: int = 0
    mismatches: list[tuple] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.mismatch_count or not self.injective or not self.loops.passed:
            return "fail"
        if self.inconclusive:
            return "inconclusive"
        return "pass"

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "vertices": self.vertices,
            "edges": self.edges,
            "tree_edges": self.tree_edges,
            "budget": self.budget,
            "pairs_checked": self.pairs_checked,
            "sampled": self.sampled,
            "injective": self.injective,
            "loops": self.loops.to_dict(),
            "inconclusive": self.inconclusive,
            "mismatch_count": self.mismatch_count,
            "mismatches": [[str(u), str(v), dg, dw] for u, v, dg, dw in self.mismatches],
            "verdict": self.verdict,
        }


def generator_images(tree: SpanningTree) -> dict[tuple[Node, Node], GroupElement]:
    """Image of every graph edge in its fixed orientation."""
    return {(u, v): tree.edge_image(u, v) for u, v in sorted(_oriented_edges(tree.graph))}


def _oriented_edges(graph: nx.Graph):
    return ((u, v) if u <= v else (v, u) for u, v in graph.edges)


def loop_check(tree: SpanningTree) -> LoopReport:
    """Every fundamental cycle is simple and its word reduces to the identity."""
    non_tree = tree.non_tree_edges()
    simple = trivial = 0
    for u, v in non_tree:
        cycle = tree.fundamental_cycle(u, v)
        if len(set(cycle[:-1])) == len(cycle) - 1 and cycle[0] == cycle[-1]:
            simple += 1
        word = GroupElement.identity()
        for a, b in zip(cycle, cycle[1:]):
            word = word * tree.edge_image(a, b)
        trivial += word.is_identity
    return LoopReport(len(non_tree), simple, trivial)


def isometric_embedding_check(
    graph: nx.Graph,
    tree: SpanningTree,
    budget: int | None = None,
    *,
    sample_pairs: int = DEFAULTS["graph"]["sample_pairs"],
    exhaustive_pairs_limit: int = DEFAULTS["graph"]["exhaustive_pairs_limit"],
    seed: int = DEFAULTS["sampling"]["seed"],
    max_ball: int = DEFAULTS["budgets"]["max_ball"],
) -> EmbeddingReport:
    """Compare |vertex_image(u)^-1 vertex_image(v)| with the path distance.

    All ordered pairs are checked when there are at most
    ``exhaustive_pairs_limit`` of them; otherwise ``sample_pairs`` pairs are
    drawn from the (9,) stream of the seed.

    Args:
        graph: Connected finite graph.
        tree: Spanning tree of the graph.
        budget: Word-length search budget; defaults to the diameter + 2.
    """
    nodes = sorted(graph.nodes)
    if budget is None:
        budget = nx.diameter(graph) + 2
    images = {v: tree.vertex_image(v) for v in nodes}
    injective = len(set(images.values())) == len(nodes)
    metric = WordMetric(generator_images(tree).values(), max_ball)

    sampled = len(nodes) ** 2 > exhaustive_pairs_limit
    if sampled:
        rng = derive_rng(seed, GRAPH_PAIRS)
        picks = rng.integers(0, len(nodes), size=(sample_pairs, 2)).tolist()
        pairs = [(nodes[i], nodes[j]) for i, j in picks]
    else:
        pairs = [(u, v) for u in nodes for v in nodes]

    report = EmbeddingReport(
        vertices=len(nodes),
        edges=graph.number_of_edges(),
        tree_edges=len(tree.edges),
        budget=budget,
        pairs_checked=len(pairs),
        sampled=sampled,
        injective=injective,
        loops=loop_check(tree),
    )
    sources = {}
    for u, v in pairs:
        if u not in sources:
            sources[u] = nx.single_source_shortest_path_length(graph, u)
        graph_distance = sources[u][v]
        word_distance = metric.length(images[u].inverse() * images[v], budget)
        if word_distance is None:
            report.inconclusive += 1
        elif word_distance != graph_distance:
            report.mismatch_count += 1
            if len(report.mismatches) < 10:
                report.mismatches.append((u, v, graph_distance, word_distance))
    logger.debug("embedding check: %d pairs, verdict %s", len(pairs), report.verdict)
    return report


@dataclass
class WordMetricReport:
    """Symmetry and triangle inequality of the word metric on vertex images."""

    triples: int
    symmetry_failures: int = 0
    triangle_failures: int = 0
    inconclusive: int = 0

    @property
    def verdict(self) -> str:
        if self.symmetry_failures or self.triangle_failures:
            return "fail"
        return "inconclusive" if self.inconclusive else "pass"

    def to_dict(self) -> dict:
        """Convert to dictionary for JSON serialization."""
        return {
            "triples": self.triples,
            "symmetry_failures": self.symmetry_failures,
            "triangle_failures": self.triangle_failures,
            "inconclusive": self.inconclusive,
            "verdict": self.verdict,
        }


def word_metric_check(
    graph: nx.Graph,
    tree: SpanningTree,
    triples: int,
    budget: int | None = None,
    *,
    seed: int = DEFAULTS["sampling"]["seed"],
    max_ball: int = DEFAULTS["budgets"]["max_ball"],
) -> WordMetricReport:
    """Sampled metric axioms for d(x, y) = |x^-1 y| on vertex images.

    Vertex triples come from the (9,) stream. Triples with any distance
    beyond ``budget`` count as inconclusive.
    """
    nodes = sorted(graph.nodes)
    if budget is None:
        budget = 2 * nx.diameter(graph) + 2
    images = [tree.vertex_image(v) for v in nodes]
    metric = WordMetric(generator_images(tree).values(), max_ball)
    rng = derive_rng(seed, GRAPH_PAIRS)
    report = WordMetricReport(triples)
    for i, j, k in rng.integers(0, len(nodes), size=(triples, 3)).tolist():
        x, y, z = images[i], images[j], images[k]
        xy = metric.length(x.inverse() * y, budget)
        yx = metric.length(y.inverse() * x, budget)
        yz = metric.length(y.inverse() * z, budget)
        xz = metric.length(x.inverse() * z, budget)
        if None in (xy, yx, yz, xz):
            report.inconclusive += 1
            continue
        report.symmetry_failures += xy != yx
        report.triangle_failures += xz > xy + yz
    return report


def generator_distortion(
    tree: SpanningTree,
    radius: int,
    max_ball: int = DEFAULTS["budgets"]["max_ball"],
) -> dict[int, int]:
    """rho1 of the free basis S (tree letters) inside the edge generators T.

    Every tree letter is also an edge generator, so the T-ball of the same
    radius covers the S-ball.

    Raises:
        BudgetExceededError: If a ball could exceed max_ball elements.
        InsufficientBallError: If radius < 1.
    """
    if radius < 1:
        raise InsufficientBallError(f"radius must be >= 1, got {radius}")
    letters = [GroupElement((k,)) for k in range(1, len(tree.edges) + 1)]
    edges = list(generator_images(tree).values())
    for what, count in (("S-ball elements", len(letters)), ("T-ball elements", len(edges))):
        check_budget(f"Cayley {what}", _ball_bound(count, radius), max_ball)
    ball_s = cayley_ball(letters, radius)
    ball_t = cayley_ball(edges, radius)
    return subgroup_distortion(ball_s, ball_t, radius)


def _ball_bound(generators: int, radius: int) -> int:
    """Size of the radius ball of a free group on this many generators."""
    if generators == 0:
        return 1
    k = 2 * generators
    return 1 + sum(k * (k - 1) ** (r - 1) for r in range(1, radius + 1))

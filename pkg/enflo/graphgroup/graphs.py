"""Unit-distance graphs of Enflo spaces, pointed graphs and their wedge.

Graphs are networkx Graphs. Unit-graph nodes are dense coordinate tuples,
wedge nodes are (component, node) pairs. Every graph built here records
its basepoint in ``graph.graph["basepoint"]``.
"""

import itertools
import logging
from collections.abc import Hashable, Iterable, Sequence
from pathlib import Path

import networkx as nx

from enflo.config import DEFAULTS
from enflo.errors import EnfloError, check_budget
from enflo.space import Point, SpaceSpec

logger = logging.getLogger(__name__)

Node = Hashable


class GraphError(EnfloError):
    """Invalid graph input."""

    pass


class DisconnectedGraphError(GraphError):
    """Two vertices have no path between them."""

    pass


def _unit_offsets(d: int) -> list[tuple[int, ...]]:
    return [delta for delta in itertools.product((-1, 0, 1), repeat=d) if any(delta)]


def neighbors(
    spec: SpaceSpec, point: Point, budget: int = DEFAULTS["budgets"]["max_points"]
) -> list[Point]:
    """Points at distance exactly 1: every coordinate moves by -1, 0 or +1, not all 0.

    There are 3^d - 1 of them since q >= 4.

    Raises:
        BudgetExceededError: If 3^d - 1 > budget.
        DimensionMismatchError: If the point is not in the space.
    """
    spec.check_point(point)
    check_budget("unit neighbors", 3**spec.d - 1, budget)
    x = point.coords
    return [
        Point((c + delta) % spec.q for c, delta in zip(x, offset))
        for offset in _unit_offsets(spec.d)
    ]


def unit_graph(spec: SpaceSpec, budget: int = DEFAULTS["budgets"]["max_points"]) -> nx.Graph:
    """The graph on all points of the space with edges at distance 1.

    Its path metric is the max metric (a strong product of q-cycles).

    Raises:
        BudgetExceededError: If q^d > budget.
    """
    check_budget("points in space", spec.num_points, budget)
    graph = nx.Graph(basepoint=(0,) * spec.d, spec=spec)
    offsets = _unit_offsets(spec.d)
    for x in itertools.product(range(spec.q), repeat=spec.d):
        graph.add_node(x)
        for offset in offsets:
            y = tuple((c + delta) % spec.q for c, delta in zip(x, offset))
            if x < y:
                graph.add_edge(x, y)
    logger.debug(
        "unit graph of %s: %d vertices, %d edges",
        spec,
        graph.number_of_nodes(),
        graph.number_of_edges(),
    )
    return graph


def pointed_cycle(n: int, basepoint: int = 0) -> nx.Graph:
    """The n-cycle 0-1-...-(n-1)-0 with a marked vertex."""
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    graph = nx.cycle_graph(n)
    graph.graph["basepoint"] = basepoint
    return graph


def basepoint(graph: nx.Graph) -> Node:
    """The marked vertex of a pointed graph.

    Raises:
        GraphError: If the graph has no basepoint or it is not a vertex.
    """
    base = graph.graph.get("basepoint")
    if base is None or base not in graph:
        raise GraphError("graph has no basepoint among its vertices")
    return base


def wedge(
    graphs: Sequence[nx.Graph],
    max_components: int = DEFAULTS["graph"]["max_components"],
) -> nx.Graph:
    """Disjoint union of pointed graphs with all basepoints identified.

    Vertex v of component i becomes (i, v); every basepoint becomes
    (0, basepoint of component 0).

    Raises:
        GraphError: If there are no components or more than max_components.
    """
    if not graphs:
        raise GraphError("a wedge needs at least one component")
    if len(graphs) > max_components:
        raise GraphError(
            f"{len(graphs)} components exceed graph.max_components={max_components}"
        )
    shared = (0, basepoint(graphs[0]))

    def rename(i: int, v: Node) -> tuple[int, Node]:
        return shared if v == basepoint(graphs[i]) else (i, v)

    result = nx.Graph(basepoint=shared, components=len(graphs))
    for i, graph in enumerate(graphs):
        result.add_nodes_from(rename(i, v) for v in graph.nodes)
        result.add_edges_from((rename(i, u), rename(i, v)) for u, v in graph.edges)
    return result


def unit_graph_wedge(
    specs: Iterable[SpaceSpec],
    *,
    budget: int = DEFAULTS["budgets"]["max_points"],
    max_components: int = DEFAULTS["graph"]["max_components"],
) -> nx.Graph:
    """Finite stage of the wedge of unit graphs, one component per space."""
    return wedge([unit_graph(spec, budget) for spec in specs], max_components)


def bfs_distance(graph: nx.Graph, a: Node | Point, b: Node | Point) -> int:
    """Path-metric distance between two vertices.

    Points are accepted for unit graphs and looked up by their coordinates.

    Raises:
        GraphError: If a vertex is missing.
        DisconnectedGraphError: If no path joins them.
    """
    a = a.coords if isinstance(a, Point) else a
    b = b.coords if isinstance(b, Point) else b
    try:
        return nx.shortest_path_length(graph, a, b)
    except nx.NodeNotFound as e:
        raise GraphError(str(e)) from e
    except nx.NetworkXNoPath as e:
        raise DisconnectedGraphError(f"no path from {a} to {b}") from e


def oriented(u: Node, v: Node) -> tuple[Node, Node]:
    """An edge in its fixed orientation: lexicographically smaller endpoint first."""
    return (u, v) if u <= v else (v, u)


def encode_node(node: Node, *, in_wedge: bool = False) -> str:
    """Text form of a vertex: coordinates joined by commas, wedge component prefixed as "i/"."""
    if in_wedge:
        component, inner = node
        return f"{component}/{encode_node(inner)}"
    if isinstance(node, tuple):
        return ",".join(str(x) for x in node)
    return str(node)


def write_edge_list(
    graph: nx.Graph,
    path: Path,
    edges: Iterable[tuple[Node, Node]] | None = None,
    labels: Iterable[int] | None = None,
) -> int:
    """Write one oriented edge per line as "u v", or "label u v" when labels are given.

    Args:
        graph: Graph the edges belong to (decides the vertex encoding).
        path: Output file.
        edges: Edges to write; defaults to every graph edge in its fixed orientation.
        labels: Optional per-edge labels such as tree letters.

    Returns:
        Number of edges written.
    """
    in_wedge = "components" in graph.graph
    if edges is None:
        edges = sorted(oriented(u, v) for u, v in graph.edges)
    edges = list(edges)
    labels = [None] * len(edges) if labels is None else list(labels)
    with open(path, "w") as f:
        for label, (u, v) in zip(labels, edges):
            prefix = "" if label is None else f"{label} "
            f.write(
                f"{prefix}{encode_node(u, in_wedge=in_wedge)} {encode_node(v, in_wedge=in_wedge)}\n"
            )
    return len(edges)

"""Spanning trees rooted at the basepoint, with one group letter per tree edge.

Tree edge number k (1-based, in BFS discovery order) is the letter k when
walked in its fixed orientation (smaller endpoint first) and -k against it.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field

import networkx as nx

from .graphs import DisconnectedGraphError, GraphError, Node, basepoint, oriented
from .words import GroupElement, free_reduce


@dataclass
class SpanningTree:
    """A rooted spanning tree of ``graph``.

    Attributes:
        graph: The graph spanned.
        root: Root vertex (the basepoint).
        parent: Parent of every vertex; None for the root.
        edges: Tree edges as (parent, child) in discovery order.
        letters: Letter of each tree edge, keyed by its oriented form.
    """

    graph: nx.Graph
    root: Node
    parent: dict[Node, Node | None]
    edges: list[tuple[Node, Node]]
    letters: dict[tuple[Node, Node], int] = field(init=False)
    _images: dict[Node, GroupElement] = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self):
        self.letters = {oriented(u, v): k for k, (u, v) in enumerate(self.edges, start=1)}

    @classmethod
    def from_edges(
        cls, graph: nx.Graph, root: Node, edges: Iterable[tuple[Node, Node]]
    ) -> "SpanningTree":
        """Tree from an explicit edge list; letters follow the list order.

        Raises:
            GraphError: If the edges are not a spanning tree of the graph.
        """
        edges = list(edges)
        tree = nx.Graph(edges)
        tree.add_node(root)
        missing = [edge for edge in edges if not graph.has_edge(*edge)]
        if missing:
            raise GraphError(f"tree edges not in graph: {missing[:3]}")
        if set(tree.nodes) != set(graph.nodes) or not nx.is_tree(tree):
            raise GraphError("edges do not form a spanning tree")
        parent: dict[Node, Node | None] = {root: None}
        for u, v in nx.bfs_edges(tree, root):
            parent[v] = u
        return cls(graph, root, parent, edges)

    @property
    def vertices(self) -> int:
        return len(self.parent)

    def is_tree_edge(self, u: Node, v: Node) -> bool:
        return oriented(u, v) in self.letters

    def letter(self, u: Node, v: Node) -> int:
        """Signed letter for walking the tree edge from u to v.

        Raises:
            GraphError: If (u, v) is not a tree edge.
        """
        key = oriented(u, v)
        if key not in self.letters:
            raise GraphError(f"({u}, {v}) is not a tree edge")
        k = self.letters[key]
        return k if key == (u, v) else -k

    def path_to_root(self, v: Node) -> list[Node]:
        """Vertices from v up to the root, both included."""
        if v not in self.parent:
            raise GraphError(f"{v} is not a vertex of the tree")
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path

    def tree_path(self, u: Node, v: Node) -> list[Node]:
        """The unique tree path from u to v."""
        up = self.path_to_root(u)
        down = self.path_to_root(v)
        on_down = set(down)
        meet = next(x for x in up if x in on_down)
        return up[: up.index(meet) + 1] + list(reversed(down[: down.index(meet)]))

    def vertex_image(self, v: Node) -> GroupElement:
        """Product of the letters along the tree path root -> v."""
        if v not in self._images:
            path = list(reversed(self.path_to_root(v)))
            self._images[v] = free_reduce(self.letter(a, b) for a, b in zip(path, path[1:]))
        return self._images[v]

    def edge_image(self, u: Node, v: Node) -> GroupElement:
        """Generator image of the graph edge walked from u to v.

        A tree edge maps to its own letter; any other edge to the reduced
        word of the tree path u -> v.

        Raises:
            GraphError: If (u, v) is not an edge of the graph.
        """
        if not self.graph.has_edge(u, v):
            raise GraphError(f"({u}, {v}) is not an edge of the graph")
        return self.vertex_image(u).inverse() * self.vertex_image(v)

    def non_tree_edges(self) -> list[tuple[Node, Node]]:
        """Graph edges outside the tree, oriented and sorted."""
        return sorted(
            oriented(u, v) for u, v in self.graph.edges if not self.is_tree_edge(u, v)
        )

    def fundamental_cycle(self, u: Node, v: Node) -> list[Node]:
        """Closed walk: the non-tree edge u -> v, then the tree path back to u."""
        return [u] + self.tree_path(v, u)


def spanning_tree(graph: nx.Graph, root: Node | None = None) -> SpanningTree:
    """BFS tree from the basepoint (or ``root``), neighbors visited in sorted order.

    Raises:
        GraphError: If the root is missing.
        DisconnectedGraphError: If the BFS does not reach every vertex.
    """
    root = basepoint(graph) if root is None else root
    if root not in graph:
        raise GraphError(f"root {root} is not a vertex")
    edges = list(nx.bfs_edges(graph, root, sort_neighbors=sorted))
    if len(edges) != graph.number_of_nodes() - 1:
        raise DisconnectedGraphError(
            f"BFS from {root} reached {len(edges) + 1} of {graph.number_of_nodes()} vertices"
        )
    parent: dict[Node, Node | None] = {root: None}
    for u, v in edges:
        parent[v] = u
    return SpanningTree(graph, root, parent, edges)

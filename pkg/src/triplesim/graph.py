"""Directed node-labeled graphs and pattern graphs."""

from __future__ import annotations

from collections import deque
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

Edge = Tuple[str, str]

CHILD = "child"
PARENT = "parent"


class GraphError(ValueError):
    """Invalid graph input (unknown node, dangling edge, bad pattern...)."""


class UnsupportedSemantics(GraphError):
    """The requested matching semantics cannot handle this input."""


class NodeSet:
    """Insertion-ordered set of node ids with O(1) membership and removal."""

    __slots__ = ("_items",)

    def __init__(self, items: Iterable[str] = ()) -> None:
        self._items: Dict[str, None] = dict.fromkeys(items)

    def __contains__(self, v: object) -> bool:
        return v in self._items

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NodeSet):
            return self._items.keys() == other._items.keys()
        if isinstance(other, (set, frozenset)):
            return self._items.keys() == other
        return NotImplemented

    def __repr__(self) -> str:
        return f"NodeSet({list(self._items)!r})"

    def add(self, v: str) -> None:
        self._items[v] = None

    def remove(self, v: str) -> None:
        del self._items[v]

    def discard(self, v: str) -> None:
        self._items.pop(v, None)

    def copy(self) -> "NodeSet":
        return NodeSet(self._items)

    def to_set(self) -> frozenset:
        return frozenset(self._items)


class Graph:
    """Immutable directed graph G(V, E, label).

    Node order and adjacency order follow declaration order, so every
    traversal built on top of a graph is deterministic.  Duplicate edges
    are collapsed; self-loops are kept and count as both a child and a
    parent edge.
    """

    __slots__ = ("_labels", "_nodes", "_index", "_edges", "_edge_set", "_children", "_parents")

    def __init__(
        self,
        nodes: Iterable[Tuple[str, str]] | Mapping[str, str],
        edges: Iterable[Edge] = (),
    ) -> None:
        items = nodes.items() if isinstance(nodes, Mapping) else nodes
        labels: Dict[str, str] = {}
        for node_id, label in items:
            if node_id in labels:
                raise GraphError(f"duplicate node {node_id!r}")
            labels[node_id] = label
        children: Dict[str, List[str]] = {v: [] for v in labels}
        parents: Dict[str, List[str]] = {v: [] for v in labels}
        edge_list: List[Edge] = []
        edge_set = set()
        for src, dst in edges:
            if src not in labels or dst not in labels:
                missing = src if src not in labels else dst
                raise GraphError(f"edge ({src!r}, {dst!r}) references unknown node {missing!r}")
            if (src, dst) in edge_set:
                continue
            edge_set.add((src, dst))
            edge_list.append((src, dst))
            children[src].append(dst)
            parents[dst].append(src)
        self._labels = labels
        self._nodes = tuple(labels)
        self._index = {v: i for i, v in enumerate(self._nodes)}
        self._edges = tuple(edge_list)
        self._edge_set = frozenset(edge_set)
        self._children = {v: tuple(c) for v, c in children.items()}
        self._parents = {v: tuple(p) for v, p in parents.items()}

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self._nodes

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def labels(self) -> Mapping[str, str]:
        return self._labels

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, v: object) -> bool:
        return v in self._labels

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._labels == other._labels and self._edge_set == other._edge_set

    def __hash__(self) -> int:
        return hash((frozenset(self._labels.items()), self._edge_set))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self._labels)}, |E|={len(self._edges)})"

    def _check(self, v: str) -> None:
        if v not in self._labels:
            raise GraphError(f"unknown node {v!r}")

    def label(self, v: str) -> str:
        self._check(v)
        return self._labels[v]

    def children(self, v: str) -> Tuple[str, ...]:
        self._check(v)
        return self._children[v]

    def parents(self, v: str) -> Tuple[str, ...]:
        self._check(v)
        return self._parents[v]

    def has_edge(self, src: str, dst: str) -> bool:
        return (src, dst) in self._edge_set

    def label_set(self) -> frozenset:
        return frozenset(self._labels.values())

    def undirected_neighbors(self, v: str) -> Iterator[str]:
        yield from self._children[v]
        yield from self._parents[v]

    def induced(self, keep: Iterable[str]) -> "Graph":
        """Subgraph induced on ``keep``.

        Nodes keep this graph's order; edges are listed source by source in
        that order.  Costs O(sum of degrees of ``keep``), not O(|E|).
        """
        index = self._index
        order = sorted((v for v in set(keep) if v in index), key=index.__getitem__)
        keep_set = set(order)
        children = self._children
        return Graph(
            [(v, self._labels[v]) for v in order],
            [(a, b) for a in order for b in children[a] if b in keep_set],
        )

    def is_connected(self) -> bool:
        if not self._labels:
            return False
        start = next(iter(self._labels))
        return len(_bfs_depths(self, start)) == len(self._labels)


class PatternGraph:
    """A connected pattern graph with optional ``>=p`` child-edge quantifiers.

    Edges without a quantifier are existential (p = 1).
    """

    __slots__ = ("graph", "_quantifiers")

    def __init__(self, graph: Graph, quantifiers: Optional[Mapping[Edge, int]] = None) -> None:
        if len(graph) == 0:
            raise GraphError("pattern graph has no nodes")
        if not graph.is_connected():
            raise GraphError("pattern graph is not connected")
        quantifiers = dict(quantifiers or {})
        for edge, p in quantifiers.items():
            if not graph.has_edge(*edge):
                raise GraphError(f"quantifier attached to missing edge {edge!r}")
            if isinstance(p, bool) or not isinstance(p, int) or p < 1:
                raise GraphError(f"quantifier on {edge!r} must be an integer >= 1, got {p!r}")
        self.graph = graph
        self._quantifiers = quantifiers

    @classmethod
    def build(
        cls,
        nodes: Iterable[Tuple[str, str]] | Mapping[str, str],
        edges: Iterable[Tuple[str, str] | Tuple[str, str, int]] = (),
    ) -> "PatternGraph":
        """Convenience constructor; edges may carry a third ``p`` element."""
        plain: List[Edge] = []
        quantifiers: Dict[Edge, int] = {}
        for edge in edges:
            plain.append((edge[0], edge[1]))
            if len(edge) == 3:
                quantifiers[(edge[0], edge[1])] = edge[2]  # type: ignore[misc]
        return cls(Graph(nodes, plain), quantifiers)

    @property
    def quantifiers(self) -> Mapping[Edge, int]:
        return self._quantifiers

    def quantifier(self, src: str, dst: str) -> int:
        return self._quantifiers.get((src, dst), 1)

    @property
    def is_quantified(self) -> bool:
        return any(p > 1 for p in self._quantifiers.values())

    # delegate the read-only graph surface
    @property
    def nodes(self) -> Tuple[str, ...]:
        return self.graph.nodes

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self.graph.edges

    def label(self, u: str) -> str:
        return self.graph.label(u)

    def children(self, u: str) -> Tuple[str, ...]:
        return self.graph.children(u)

    def parents(self, u: str) -> Tuple[str, ...]:
        return self.graph.parents(u)

    def __len__(self) -> int:
        return len(self.graph)

    def __contains__(self, u: object) -> bool:
        return u in self.graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PatternGraph):
            return NotImplemented
        return self.graph == other.graph and {
            e: p for e, p in self._quantifiers.items() if p > 1
        } == {e: p for e, p in other._quantifiers.items() if p > 1}

    def __repr__(self) -> str:
        return f"PatternGraph(|V|={len(self.graph)}, |E|={len(self.graph.edges)}, quantified={self.is_quantified})"


def as_graph(g: Graph | PatternGraph) -> Graph:
    return g.graph if isinstance(g, PatternGraph) else g


def neighbors(g: Graph | PatternGraph, v: str, direction: str = CHILD) -> List[str]:
    """Out-neighbours (``"child"``) or in-neighbours (``"parent"``) of ``v``."""
    g = as_graph(g)
    if direction == CHILD:
        return list(g.children(v))
    if direction == PARENT:
        return list(g.parents(v))
    raise GraphError(f"direction must be {CHILD!r} or {PARENT!r}, got {direction!r}")


def _bfs_depths(g: Graph, start: str, limit: Optional[int] = None) -> Dict[str, int]:
    depth = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        d = depth[v]
        if limit is not None and d >= limit:
            continue
        for w in g.undirected_neighbors(v):
            if w not in depth:
                depth[w] = d + 1
                queue.append(w)
    return depth


def undirected_distances(g: Graph | PatternGraph, source: str, limit: Optional[int] = None) -> Dict[str, int]:
    """Hop counts from ``source`` ignoring direction, optionally cut at ``limit``."""
    g = as_graph(g)
    g._check(source)
    return _bfs_depths(g, source, limit)


def undirected_distance(g: Graph | PatternGraph, a: str, b: str) -> Optional[int]:
    """Shortest undirected path length from ``a`` to ``b``; ``None`` if unreachable."""
    g = as_graph(g)
    g._check(b)
    return undirected_distances(g, a).get(b)


def diameter(g: Graph | PatternGraph) -> int:
    g = as_graph(g)
    if len(g) == 0:
        raise GraphError("diameter of an empty graph is undefined")
    best = 0
    for v in g.nodes:
        depths = _bfs_depths(g, v)
        if len(depths) != len(g):
            raise GraphError("diameter is undefined for a disconnected graph")
        best = max(best, max(depths.values()))
    return best


def potential_matches(q: PatternGraph | Graph, g: Graph, u: str) -> NodeSet:
    """Data nodes carrying the same label as pattern node ``u``."""
    label = as_graph(q).label(u)
    return NodeSet(v for v in g.nodes if g.labels[v] == label)


def nodes_by_label(g: Graph) -> Dict[str, List[str]]:
    index: Dict[str, List[str]] = {}
    for v, lab in g.labels.items():
        index.setdefault(lab, []).append(v)
    return index

"""Bipartite graphs and Hopcroft-Karp maximum matching."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from .graph import GraphError

INF = float("inf")


class BipartiteGraph:
    """Left side ``X`` (pattern-side ids), right side ``Y`` (data-side ids).

    Adjacency lists keep first-insertion order; duplicate edges are dropped.
    """

    __slots__ = ("X", "Y", "_adj", "_yset", "_edges")

    def __init__(
        self,
        X: Iterable[Hashable] = (),
        Y: Iterable[Hashable] = (),
        edges: Iterable[Tuple[Hashable, Hashable]] = (),
    ) -> None:
        self.X: List[Hashable] = []
        self.Y: List[Hashable] = []
        self._adj: Dict[Hashable, List[Hashable]] = {}
        self._yset: Dict[Hashable, None] = {}
        self._edges: Dict[Tuple[Hashable, Hashable], None] = {}
        for x in X:
            self.add_x(x)
        for y in Y:
            self.add_y(y)
        for x, y in edges:
            self.add_edge(x, y)

    def add_x(self, x: Hashable) -> None:
        if x not in self._adj:
            self._adj[x] = []
            self.X.append(x)

    def add_y(self, y: Hashable) -> None:
        if y not in self._yset:
            self._yset[y] = None
            self.Y.append(y)

    def add_edge(self, x: Hashable, y: Hashable) -> None:
        if x not in self._adj:
            raise GraphError(f"bipartite edge from undeclared left node {x!r}")
        if y not in self._yset:
            raise GraphError(f"bipartite edge to undeclared right node {y!r}")
        if (x, y) in self._edges:
            return
        self._edges[(x, y)] = None
        self._adj[x].append(y)

    def adjacency(self, x: Hashable) -> Sequence[Hashable]:
        return self._adj[x]

    @property
    def edges(self) -> List[Tuple[Hashable, Hashable]]:
        return list(self._edges)

    def has_edge(self, x: Hashable, y: Hashable) -> bool:
        return (x, y) in self._edges

    @classmethod
    def from_adjacency(cls, adj: Dict[Hashable, Sequence[Hashable]]) -> "BipartiteGraph":
        """Build from ``{x: [y, ...]}``; Y is the union of the lists, in first-seen order."""
        bg = cls()
        for x, targets in adj.items():
            bg.add_x(x)
            for y in targets:
                bg.add_y(y)
                bg.add_edge(x, y)
        return bg

    def __repr__(self) -> str:
        return f"BipartiteGraph(|X|={len(self.X)}, |Y|={len(self.Y)}, |E|={len(self._edges)})"

    def to_dot(self, name: str = "BG") -> str:
        lines = [f'graph "{name}" {{', "  rankdir=LR;"]
        for x in self.X:
            lines.append(f'  "X:{x}" [label="{x}", shape=box];')
        for y in self.Y:
            lines.append(f'  "Y:{y}" [label="{y}"];')
        for x, y in self._edges:
            lines.append(f'  "X:{x}" -- "Y:{y}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Matching:
    pairs: FrozenSet[Tuple[Hashable, Hashable]]
    # DFS edge inspections spent finding the matching (instrumentation only)
    steps: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.pairs)

    def is_valid_for(self, bg: BipartiteGraph) -> bool:
        xs = [x for x, _ in self.pairs]
        ys = [y for _, y in self.pairs]
        return (
            len(set(xs)) == len(xs)
            and len(set(ys)) == len(ys)
            and all(bg.has_edge(x, y) for x, y in self.pairs)
        )


def maximum_matching(bg: BipartiteGraph) -> Matching:
    """Hopcroft-Karp.  Phases alternate a BFS layering from the free left
    nodes with DFS augmentation along shortest alternating paths; both scan
    nodes and adjacency lists in declaration order, so the returned matching
    is a deterministic function of the input order.
    """
    pair_x: Dict[Hashable, Hashable] = {}
    pair_y: Dict[Hashable, Hashable] = {}
    dist: Dict[Hashable, float] = {}
    steps = 0
    found = INF

    def bfs() -> bool:
        nonlocal found
        queue: deque = deque()
        for x in bg.X:
            if x in pair_x:
                dist[x] = INF
            else:
                dist[x] = 0
                queue.append(x)
        found = INF
        while queue:
            x = queue.popleft()
            if dist[x] >= found:
                continue
            for y in bg.adjacency(x):
                other = pair_y.get(y)
                if other is None:
                    if found == INF:
                        found = dist[x] + 1
                elif dist[other] == INF:
                    dist[other] = dist[x] + 1
                    queue.append(other)
        return found != INF

    def dfs(x: Hashable) -> bool:
        nonlocal steps
        for y in bg.adjacency(x):
            steps += 1
            other = pair_y.get(y)
            if other is None:
                ok = dist[x] + 1 == found
            else:
                ok = dist[other] == dist[x] + 1 and dfs(other)
            if ok:
                pair_x[x] = y
                pair_y[y] = x
                return True
        dist[x] = INF
        return False

    while bfs():
        for x in bg.X:
            if x not in pair_x:
                dfs(x)
    return Matching(frozenset(pair_x.items()), steps)


def has_complete_matching(bg: BipartiteGraph, matching: Optional[Matching] = None) -> bool:
    """True iff some matching covers every node of X (vacuously true for X = {})."""
    if not bg.X:
        return True
    if len(bg.Y) < len(bg.X):
        return False
    if matching is None:
        matching = maximum_matching(bg)
    return len(matching) == len(bg.X)

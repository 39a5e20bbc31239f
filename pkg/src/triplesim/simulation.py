"""Graph simulation, dual simulation and strong simulation.

All three compute the unique maximum relation by starting from the
label-compatible candidates and deleting violators until nothing changes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .graph import Edge, Graph, NodeSet, PatternGraph, UnsupportedSemantics, nodes_by_label

SimRelation = Dict[str, NodeSet]


@dataclass
class Stats:
    """Work counters; always collected, only reported on request."""

    passes: int = 0
    removals: int = 0
    lr_checks: int = 0
    bipartite_graphs: int = 0
    augment_steps: int = 0
    balls: int = 0

    def merge(self, other: "Stats") -> None:
        for name in self.__dataclass_fields__:
            setattr(self, name, getattr(self, name) + getattr(other, name))

    def as_dict(self) -> Dict[str, int]:
        return {name: getattr(self, name) for name in self.__dataclass_fields__}


@dataclass(frozen=True)
class MatchResult:
    """A match result subgraph of the data graph."""

    graph: Graph
    # originating ball center, for local semantics
    center: Optional[str] = field(default=None, compare=False)

    @property
    def nodes(self) -> Tuple[str, ...]:
        return self.graph.nodes

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self.graph.edges

    def __bool__(self) -> bool:
        return len(self.graph) > 0

    def key(self) -> Tuple[Tuple[str, ...], Tuple[Edge, ...]]:
        """Canonical serialization used for dedup and ordering."""
        return tuple(sorted(self.graph.nodes)), tuple(sorted(self.graph.edges))


EMPTY_RESULT = MatchResult(Graph({}))


def relation_sets(sim: Mapping[str, NodeSet]) -> Dict[str, FrozenSet[str]]:
    return {u: frozenset(vs) for u, vs in sim.items()}


def relation_pairs(sim: Mapping[str, NodeSet]) -> FrozenSet[Tuple[str, str]]:
    return frozenset((u, v) for u, vs in sim.items() for v in vs)


def initial_candidates(q: PatternGraph, g: Graph) -> SimRelation:
    index = nodes_by_label(g)
    return {u: NodeSet(index.get(q.label(u), ())) for u in q.nodes}


def _require_plain(q: PatternGraph, semantics: str) -> None:
    if q.is_quantified:
        raise UnsupportedSemantics(f"{semantics} does not support counting quantifiers")


def _refine(q: PatternGraph, g: Graph, dual: bool, stats: Optional[Stats]) -> SimRelation:
    stats = stats if stats is not None else Stats()
    sim = initial_candidates(q, g)
    # child_count[u][v]: children of v currently in sim(u); parent_count symmetric
    child_count: Dict[str, Dict[str, int]] = {}
    parent_count: Dict[str, Dict[str, int]] = {}
    for u, vs in sim.items():
        cc: Dict[str, int] = {}
        pc: Dict[str, int] = {}
        for w in vs:
            for x in g.parents(w):
                cc[x] = cc.get(x, 0) + 1
            for y in g.children(w):
                pc[y] = pc.get(y, 0) + 1
        child_count[u] = cc
        parent_count[u] = pc

    queue = deque(q.nodes)
    queued = set(queue)
    while queue:
        u = queue.popleft()
        queued.discard(u)
        stats.passes += 1
        kids = q.children(u)
        folks = q.parents(u) if dual else ()
        removed = False
        for v in list(sim[u]):
            ok = all(child_count[c].get(v, 0) for c in kids) and all(
                parent_count[p].get(v, 0) for p in folks
            )
            if ok:
                continue
            sim[u].remove(v)
            stats.removals += 1
            removed = True
            cc, pc = child_count[u], parent_count[u]
            for x in g.parents(v):
                cc[x] -= 1
            for y in g.children(v):
                pc[y] -= 1
        if not sim[u]:
            return {}
        if removed:
            affected = list(q.parents(u))
            if dual:
                affected.extend(q.children(u))
            for w in affected:
                if w not in queued:
                    queued.add(w)
                    queue.append(w)
    return sim


def graph_simulation(q: PatternGraph, g: Graph, stats: Optional[Stats] = None) -> SimRelation:
    """Maximum graph-simulation relation, or ``{}`` when Q does not match G."""
    _require_plain(q, "graph simulation")
    return _refine(q, g, dual=False, stats=stats)


def dual_simulation(q: PatternGraph, g: Graph, stats: Optional[Stats] = None) -> SimRelation:
    """Maximum dual-simulation relation (child and parent edges preserved)."""
    _require_plain(q, "dual simulation")
    return _refine(q, g, dual=True, stats=stats)


def build_match_result(
    q: PatternGraph, g: Graph, sim: Mapping[str, NodeSet], center: Optional[str] = None
) -> MatchResult:
    """Subgraph of ``g`` on the image of ``sim`` with every data edge that
    witnesses some pattern edge."""
    if not sim:
        return MatchResult(Graph({}), center)
    image = set()
    for vs in sim.values():
        image.update(vs)
    witnessed = set()
    for u, u2 in q.edges:
        targets = sim.get(u2)
        if not targets:
            continue
        for v in sim.get(u, ()):
            for v2 in g.children(v):
                if v2 in targets:
                    witnessed.add((v, v2))
    nodes = [(v, g.labels[v]) for v in g.nodes if v in image]
    edges = [e for e in g.edges if e in witnessed]
    return MatchResult(Graph(nodes, edges), center)


def strong_simulation(
    q: PatternGraph,
    g: Graph,
    center_prune: bool = True,
    workers: Optional[int] = None,
    stats: Optional[Stats] = None,
) -> List[MatchResult]:
    """Dual simulation inside every ball of radius d_Q; deduplicated union."""
    _require_plain(q, "strong simulation")
    from .locality import local_matches

    return local_matches(q, g, "dual", center_prune=center_prune, workers=workers, stats=stats)

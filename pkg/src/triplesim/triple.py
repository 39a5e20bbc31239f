"""Triple simulation: dual simulation plus Label-Repetition constraints.

A pattern node whose children (or parents) repeat a label requires that
many *distinct* data witnesses.  Those neighbours are checked jointly by a
complete-matching test on a small bipartite graph; neighbours whose label
is unique among the siblings only need the cheap counter test.  Numeric
``>=p`` quantifiers on child edges are folded into the same bipartite graph
as ``p`` interchangeable copies of the child.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Set, Tuple

from .bipartite import BipartiteGraph, has_complete_matching, maximum_matching
from .graph import Graph, NodeSet, PatternGraph, UnsupportedSemantics
from .simulation import (
    EMPTY_RESULT,
    MatchResult,
    SimRelation,
    Stats,
    build_match_result,
    initial_candidates,
)

BipartiteHook = Callable[[str, str, str, BipartiteGraph], None]


class InvariantViolation(RuntimeError):
    """Internal bookkeeping went wrong; always a bug."""


@dataclass
class AuxStructures:
    """Neighbour classification of the pattern plus witness counters.

    ``lr_children[u]`` holds ``(child, copies)`` pairs: ``copies`` is the
    child's ``>=p`` quantifier (1 for plain edges).
    """

    cp_children: Dict[str, Tuple[str, ...]]
    cp_parents: Dict[str, Tuple[str, ...]]
    lr_children: Dict[str, Tuple[Tuple[str, int], ...]]
    lr_parents: Dict[str, Tuple[str, ...]]
    # child_counts[u][v] = |children(v) & sim(u)|, parent_counts likewise
    child_counts: Dict[str, Dict[str, int]] = field(default_factory=dict)
    parent_counts: Dict[str, Dict[str, int]] = field(default_factory=dict)

    def cp(self, u: str) -> Set[str]:
        return set(self.cp_children[u]) | set(self.cp_parents[u])

    def lr(self, u: str) -> Set[str]:
        return {c for c, _ in self.lr_children[u]} | set(self.lr_parents[u])

    def child_as_match(self, v: str, u: str) -> int:
        return self.child_counts[u].get(v, 0)

    def parent_as_match(self, v: str, u: str) -> int:
        return self.parent_counts[u].get(v, 0)


@dataclass
class TripleMatch:
    relation: SimRelation
    result: MatchResult
    stats: Stats = field(default_factory=Stats, compare=False)

    @property
    def empty(self) -> bool:
        return not self.relation

    def __bool__(self) -> bool:
        return bool(self.relation)


def classify(q: PatternGraph) -> AuxStructures:
    cp_children: Dict[str, Tuple[str, ...]] = {}
    cp_parents: Dict[str, Tuple[str, ...]] = {}
    lr_children: Dict[str, Tuple[Tuple[str, int], ...]] = {}
    lr_parents: Dict[str, Tuple[str, ...]] = {}
    for u in q.nodes:
        kids = q.children(u)
        # a ">=p" child occupies p witness slots of its label
        occ = Counter()
        for c in kids:
            occ[q.label(c)] += q.quantifier(u, c)
        cp_children[u] = tuple(c for c in kids if occ[q.label(c)] == 1)
        lr_children[u] = tuple((c, q.quantifier(u, c)) for c in kids if occ[q.label(c)] > 1)

        folks = q.parents(u)
        pocc = Counter(q.label(p) for p in folks)
        cp_parents[u] = tuple(p for p in folks if pocc[q.label(p)] == 1)
        lr_parents[u] = tuple(p for p in folks if pocc[q.label(p)] > 1)
    return AuxStructures(cp_children, cp_parents, lr_children, lr_parents)


def init_aux_structs(q: PatternGraph, g: Graph, sim: Mapping[str, NodeSet]) -> AuxStructures:
    aux = classify(q)
    for u in q.nodes:
        cc: Dict[str, int] = {}
        pc: Dict[str, int] = {}
        for w in sim[u]:
            for x in g.parents(w):
                cc[x] = cc.get(x, 0) + 1
            for y in g.children(w):
                pc[y] = pc.get(y, 0) + 1
        aux.child_counts[u] = cc
        aux.parent_counts[u] = pc
    return aux


def update_struct(aux: AuxStructures, g: Graph, u: str, v: str) -> AuxStructures:
    """Account for ``v`` having just left sim(u)."""
    cc = aux.child_counts[u]
    for x in g.parents(v):
        n = cc.get(x, 0) - 1
        if n < 0:
            raise InvariantViolation(f"child counter of ({x}, {u}) went negative")
        cc[x] = n
    pc = aux.parent_counts[u]
    for y in g.children(v):
        n = pc.get(y, 0) - 1
        if n < 0:
            raise InvariantViolation(f"parent counter of ({y}, {u}) went negative")
        pc[y] = n
    return aux


def inspecting_graphs(
    q: PatternGraph,
    g: Graph,
    aux: AuxStructures,
    sim: Mapping[str, NodeSet],
    u: str,
    v: str,
) -> Tuple[BipartiteGraph, BipartiteGraph]:
    """The child-side and parent-side bipartite graphs for the pair (u, v).

    Quantified children contribute ``(child, i)`` copies to the left side.
    """
    bg_children = BipartiteGraph()
    data_kids = g.children(v)
    for c, copies in aux.lr_children[u]:
        slots: List[Hashable] = [c] if copies == 1 else [(c, i) for i in range(1, copies + 1)]
        for x in slots:
            bg_children.add_x(x)
        cands = sim[c]
        for w in data_kids:
            if w in cands:
                bg_children.add_y(w)
                for x in slots:
                    bg_children.add_edge(x, w)

    bg_parents = BipartiteGraph()
    data_folks = g.parents(v)
    for p in aux.lr_parents[u]:
        bg_parents.add_x(p)
        cands = sim[p]
        for w in data_folks:
            if w in cands:
                bg_parents.add_y(w)
                bg_parents.add_edge(p, w)
    return bg_children, bg_parents


def _complete(bg: BipartiteGraph, stats: Optional[Stats]) -> bool:
    if not bg.X:
        return True
    if stats is not None:
        stats.bipartite_graphs += 1
    if len(bg.Y) < len(bg.X):
        return False
    m = maximum_matching(bg)
    if stats is not None:
        stats.augment_steps += m.steps
    return has_complete_matching(bg, m)


def lr_checking_quantified(
    q: PatternGraph,
    g: Graph,
    aux: AuxStructures,
    sim: Mapping[str, NodeSet],
    u: str,
    v: str,
    stats: Optional[Stats] = None,
    hook: Optional[BipartiteHook] = None,
) -> bool:
    """Whether v's children and parents satisfy every LR constraint and
    ``>=p`` quantifier around u."""
    if stats is not None:
        stats.lr_checks += 1
    bg1, bg2 = inspecting_graphs(q, g, aux, sim, u, v)
    if hook is not None:
        hook(u, v, "children", bg1)
        hook(u, v, "parents", bg2)
    return _complete(bg1, stats) and _complete(bg2, stats)


def lr_checking(
    q: PatternGraph,
    g: Graph,
    aux: AuxStructures,
    sim: Mapping[str, NodeSet],
    u: str,
    v: str,
    stats: Optional[Stats] = None,
    hook: Optional[BipartiteHook] = None,
) -> bool:
    """LR check for a plain (unquantified) pattern."""
    if q.is_quantified:
        raise UnsupportedSemantics("lr_checking needs a plain pattern; use lr_checking_quantified")
    return lr_checking_quantified(q, g, aux, sim, u, v, stats, hook)


def triple_simulation(
    q: PatternGraph,
    g: Graph,
    stats: Optional[Stats] = None,
    hook: Optional[BipartiteHook] = None,
) -> TripleMatch:
    """Maximum triple-simulation relation of ``q`` over ``g`` and its match result.

    Full passes over every (u, v) candidate pair repeat until a pass
    removes nothing.  Within a pair the order is: unique-label children,
    unique-label parents, then the bipartite LR check; the first failure
    removes v from sim(u).  Returns an empty match as soon as some sim(u)
    runs dry.
    """
    stats = stats if stats is not None else Stats()
    sim = initial_candidates(q, g)
    if any(not vs for vs in sim.values()):
        return TripleMatch({}, EMPTY_RESULT, stats)
    aux = init_aux_structs(q, g, sim)
    child_counts, parent_counts = aux.child_counts, aux.parent_counts
    needs_lr = {u: bool(aux.lr_children[u] or aux.lr_parents[u]) for u in q.nodes}

    changed = True
    while changed:
        changed = False
        stats.passes += 1
        for u in q.nodes:
            cp_kids = aux.cp_children[u]
            cp_folks = aux.cp_parents[u]
            candidates = sim[u]
            for v in list(candidates):
                keep = all(child_counts[c].get(v, 0) for c in cp_kids) and all(
                    parent_counts[p].get(v, 0) for p in cp_folks
                )
                if keep and needs_lr[u]:
                    keep = lr_checking_quantified(q, g, aux, sim, u, v, stats, hook)
                if keep:
                    continue
                candidates.remove(v)
                update_struct(aux, g, u, v)
                stats.removals += 1
                changed = True
            if not candidates:
                return TripleMatch({}, EMPTY_RESULT, stats)
    return TripleMatch(sim, build_match_result(q, g, sim), stats)


def _fresh(base: str, i: int, taken: Set[str]) -> str:
    name = f"{base}.{i}"
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def _quantified_subtree(q_nodes: Dict[str, str], edges: List[Tuple[str, str]], src: str, dst: str) -> List[str]:
    """Nodes reachable from ``dst`` when they form a tree hanging only off (src, dst)."""
    kids: Dict[str, List[str]] = {v: [] for v in q_nodes}
    indeg: Dict[str, List[str]] = {v: [] for v in q_nodes}
    for a, b in edges:
        kids[a].append(b)
        indeg[b].append(a)
    order = [dst]
    seen = {dst}
    i = 0
    while i < len(order):
        for b in kids[order[i]]:
            if b in seen:
                raise UnsupportedSemantics(
                    f"quantified child {dst!r} of {src!r}: descendants are not a tree"
                )
            seen.add(b)
            order.append(b)
        i += 1
    if src in seen:
        raise UnsupportedSemantics(f"quantified edge ({src!r}, {dst!r}) lies on a cycle")
    if indeg[dst] != [src]:
        raise UnsupportedSemantics(f"quantified child {dst!r} has parents other than {src!r}")
    for w in order[1:]:
        if len(indeg[w]) != 1:
            raise UnsupportedSemantics(
                f"quantified child {dst!r}: descendant {w!r} is shared with the rest of the pattern"
            )
    return order


def transform_quantified_to_lr(q: PatternGraph) -> PatternGraph:
    """Rewrite every ``u -(>=p)-> u'`` edge as ``p`` copies of u' and its subtree.

    Only tree-shaped quantified subtrees are supported; anything else
    raises :class:`UnsupportedSemantics`.
    """
    labels: Dict[str, str] = dict(q.graph.labels)
    edges: List[Tuple[str, str]] = list(q.edges)
    quant: Dict[Tuple[str, str], int] = {e: p for e, p in q.quantifiers.items() if p > 1}
    taken: Set[str] = set(labels)
    while True:
        target = next((e for e in edges if quant.get(e, 1) > 1), None)
        if target is None:
            break
        src, dst = target
        p = quant.pop(target)
        subtree = _quantified_subtree(labels, edges, src, dst)
        inside = set(subtree)
        copies = [{w: _fresh(w, i, taken) for w in subtree} for i in range(1, p + 1)]

        new_labels: Dict[str, str] = {}
        for w, lab in labels.items():
            if w not in inside:
                new_labels[w] = lab
            elif w == dst:
                for rename in copies:
                    for s in subtree:
                        new_labels[rename[s]] = labels[s]
        new_edges: List[Tuple[str, str]] = []
        new_quant: Dict[Tuple[str, str], int] = {}
        for e in edges:
            a, b = e
            if e == target:
                for rename in copies:
                    new_edges.append((src, rename[dst]))
            elif a in inside:
                for rename in copies:
                    ce = (rename[a], rename[b])
                    new_edges.append(ce)
                    if e in quant:
                        new_quant[ce] = quant[e]
            else:
                new_edges.append(e)
                if e in quant:
                    new_quant[e] = quant[e]
        labels, edges, quant = new_labels, new_edges, new_quant
    return PatternGraph(Graph(labels, edges))


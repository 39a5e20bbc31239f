"""Exhaustive reference implementations.

Exponential by design and guarded by hard size limits; these exist to
check the production algorithms, never to serve queries.
"""

from __future__ import annotations

import itertools
import random
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from .bipartite import BipartiteGraph
from .graph import Graph, GraphError, PatternGraph, UnsupportedSemantics, diameter
from .simulation import MatchResult, build_match_result

Embedding = Dict[str, str]


class OversizeError(GraphError):
    """Input exceeds the size guard of an exhaustive oracle."""


def _guard(q: PatternGraph, g: Graph, max_pattern: int, max_data: int) -> None:
    if len(q) > max_pattern or len(g) > max_data:
        raise OversizeError(
            f"oracle limited to |V_Q| <= {max_pattern}, |V| <= {max_data}; got {len(q)}, {len(g)}"
        )


def is_embedding(q: PatternGraph, g: Graph, f: Mapping[str, str]) -> bool:
    """Injective, label-preserving, edge-preserving and total on V_Q."""
    if set(f) != set(q.nodes) or len(set(f.values())) != len(f):
        return False
    if any(v not in g or g.labels[v] != q.label(u) for u, v in f.items()):
        return False
    return all(g.has_edge(f[a], f[b]) for a, b in q.edges)


def enumerate_isomorphisms(
    q: PatternGraph, g: Graph, max_pattern: int = 6, max_data: int = 14
) -> List[Embedding]:
    """Every injective label- and edge-preserving map V_Q -> V (backtracking)."""
    if q.is_quantified:
        raise UnsupportedSemantics("isomorphism oracle needs a plain pattern")
    _guard(q, g, max_pattern, max_data)
    order = list(q.nodes)
    cands = {u: [v for v in g.nodes if g.labels[v] == q.label(u)] for u in order}
    found: List[Embedding] = []
    f: Embedding = {}
    used: Set[str] = set()

    def consistent(u: str, v: str) -> bool:
        for a, b in q.edges:
            if a == u and (b in f or b == u):
                if not g.has_edge(v, f.get(b, v)):
                    return False
            elif b == u and a in f:
                if not g.has_edge(f[a], v):
                    return False
        return True

    def extend(i: int) -> None:
        if i == len(order):
            found.append(dict(f))
            return
        u = order[i]
        for v in cands[u]:
            if v in used or not consistent(u, v):
                continue
            f[u] = v
            used.add(v)
            extend(i + 1)
            used.discard(v)
            del f[u]

    extend(0)
    return found


def _injective_witness(slots: Sequence[str], pool: Sequence[str], sim: Mapping[str, Set[str]]) -> bool:
    """Can each slot take a distinct member of ``pool`` from its candidate set?"""
    options = [[w for w in pool if w in sim[s]] for s in slots]
    if any(not o for o in options):
        return False
    # most constrained first keeps the search small
    order = sorted(range(len(slots)), key=lambda i: len(options[i]))
    taken: Set[str] = set()

    def place(k: int) -> bool:
        if k == len(order):
            return True
        for w in options[order[k]]:
            if w not in taken:
                taken.add(w)
                if place(k + 1):
                    return True
                taken.discard(w)
        return False

    return place(0)


def _child_slots(q: PatternGraph, u: str) -> List[str]:
    slots: List[str] = []
    for c in q.children(u):
        slots.extend([c] * q.quantifier(u, c))
    return slots


def brute_force_triple_relation(
    q: PatternGraph,
    g: Graph,
    max_pattern: int = 6,
    max_data: int = 14,
    seed: Optional[int] = None,
) -> Dict[str, frozenset]:
    """Maximum triple relation by direct evaluation of the definition.

    A pair (u, v) survives while v's children admit an injective
    assignment of all of u's children (a ``>=p`` child counted p times)
    and v's parents admit one for u's parents.  With ``seed`` the pairs
    are examined in a shuffled order.
    """
    _guard(q, g, max_pattern, max_data)
    sim: Dict[str, Set[str]] = {u: {v for v in g.nodes if g.labels[v] == q.label(u)} for u in q.nodes}
    kid_slots = {u: _child_slots(q, u) for u in q.nodes}
    rng = random.Random(seed) if seed is not None else None
    changed = True
    while changed:
        changed = False
        pairs = [(u, v) for u in q.nodes for v in sorted(sim[u])]
        if rng is not None:
            rng.shuffle(pairs)
        for u, v in pairs:
            if v not in sim[u]:
                continue
            ok = _injective_witness(kid_slots[u], g.children(v), sim) and _injective_witness(
                q.parents(u), g.parents(v), sim
            )
            if not ok:
                sim[u].discard(v)
                changed = True
    if any(not vs for vs in sim.values()):
        return {}
    return {u: frozenset(vs) for u, vs in sim.items()}


def naive_simulation(q: PatternGraph, g: Graph, dual: bool = False) -> Dict[str, frozenset]:
    """Graph (or dual) simulation by rescanning every condition until stable."""
    sim: Dict[str, Set[str]] = {u: {v for v in g.nodes if g.labels[v] == q.label(u)} for u in q.nodes}
    changed = True
    while changed:
        changed = False
        for u in q.nodes:
            for v in sorted(sim[u]):
                ok = all(any(g.has_edge(v, w) for w in sim[c]) for c in q.children(u))
                if ok and dual:
                    ok = all(any(g.has_edge(w, v) for w in sim[p]) for p in q.parents(u))
                if not ok:
                    sim[u].discard(v)
                    changed = True
    if any(not vs for vs in sim.values()):
        return {}
    return {u: frozenset(vs) for u, vs in sim.items()}


def ball_oracle(g: Graph, center: str, radius: int) -> Graph:
    """Ball via an all-pairs Floyd-Warshall distance table."""
    nodes = list(g.nodes)
    inf = float("inf")
    dist = {(a, b): (0 if a == b else inf) for a in nodes for b in nodes}
    for a, b in g.edges:
        if a != b:
            dist[(a, b)] = dist[(b, a)] = 1
    for k in nodes:
        for i in nodes:
            for j in nodes:
                if dist[(i, k)] + dist[(k, j)] < dist[(i, j)]:
                    dist[(i, j)] = dist[(i, k)] + dist[(k, j)]
    return g.induced(v for v in nodes if dist[(center, v)] <= radius)


def local_matches_oracle(q: PatternGraph, g: Graph, semantics: str) -> List[MatchResult]:
    """Every ball of every node, matched by the exhaustive oracles."""
    radius = diameter(q)
    unique: Dict[tuple, MatchResult] = {}
    for c in g.nodes:
        ball = ball_oracle(g, c, radius)
        if semantics == "dual":
            rel = naive_simulation(q, ball, dual=True)
        else:
            rel = brute_force_triple_relation(q, ball, max_pattern=len(q), max_data=len(ball))
        if rel and any(c in vs for vs in rel.values()):
            res = build_match_result(q, ball, {u: vs for u, vs in rel.items()}, center=c)
            unique.setdefault(res.key(), res)
    return [unique[k] for k in sorted(unique)]


def brute_force_matching_size(bg: BipartiteGraph, max_edges: int = 20) -> int:
    """Largest matching, by enumerating every edge subset that is a matching."""
    edges = bg.edges
    if len(edges) > max_edges:
        raise OversizeError(f"matching oracle limited to {max_edges} edges; got {len(edges)}")
    best = 0

    def walk(i: int, used_x: Set, used_y: Set, size: int) -> None:
        nonlocal best
        if size + (len(edges) - i) <= best:
            return
        if i == len(edges):
            best = max(best, size)
            return
        x, y = edges[i]
        if x not in used_x and y not in used_y:
            used_x.add(x)
            used_y.add(y)
            walk(i + 1, used_x, used_y, size + 1)
            used_x.discard(x)
            used_y.discard(y)
        walk(i + 1, used_x, used_y, size)

    walk(0, set(), set(), 0)
    return best


def hall_condition(bg: BipartiteGraph, max_x: int = 10) -> bool:
    """Hall: every subset S of X has at least |S| neighbours."""
    if len(bg.X) > max_x:
        raise OversizeError(f"Hall oracle limited to |X| <= {max_x}; got {len(bg.X)}")
    nbrs = {x: set(bg.adjacency(x)) for x in bg.X}
    for k in range(1, len(bg.X) + 1):
        for subset in itertools.combinations(bg.X, k):
            if len(set().union(*(nbrs[x] for x in subset))) < k:
                return False
    return True

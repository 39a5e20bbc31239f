"""Balls and ball-local matching (strong simulation, triple-local)."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from .graph import Graph, GraphError, PatternGraph, diameter, undirected_distances
from .simulation import MatchResult, Stats, build_match_result, dual_simulation
from .triple import triple_simulation


@dataclass(frozen=True)
class Ball:
    center: str
    radius: int
    graph: Graph


def extract_ball(g: Graph, center: str, radius: int) -> Ball:
    """Induced subgraph on nodes within undirected distance ``radius`` of ``center``."""
    if center not in g:
        raise GraphError(f"unknown ball center {center!r}")
    if radius < 0:
        raise GraphError("ball radius must be non-negative")
    inside = undirected_distances(g, center, limit=radius)
    return Ball(center, radius, g.induced(inside))


@dataclass(frozen=True)
class _BallJob:
    q: PatternGraph
    g: Graph
    radius: int
    semantics: str
    # data nodes allowed inside balls (None: no restriction)
    keep: Optional[FrozenSet[str]]


_WORKER_JOB: Optional[_BallJob] = None


def _init_worker(job: _BallJob) -> None:
    global _WORKER_JOB
    _WORKER_JOB = job


def _match_in_worker(center: str) -> Tuple[Optional[MatchResult], Stats]:
    assert _WORKER_JOB is not None
    return _match_ball(_WORKER_JOB, center)


def _relation(q: PatternGraph, g: Graph, semantics: str, stats: Stats):
    if semantics == "triple":
        return triple_simulation(q, g, stats).relation
    if semantics == "dual":
        return dual_simulation(q, g, stats)
    raise ValueError(f"unknown ball semantics {semantics!r}")


def _match_ball(job: _BallJob, center: str) -> Tuple[Optional[MatchResult], Stats]:
    stats = Stats(balls=1)
    inside = undirected_distances(job.g, center, limit=job.radius)
    if job.keep is not None:
        inside = [v for v in inside if v in job.keep]
    ball = job.g.induced(inside)
    relation = _relation(job.q, ball, job.semantics, stats)
    # a ball only counts when its own center takes part in the match
    if not relation or not any(center in vs for vs in relation.values()):
        return None, stats
    return build_match_result(job.q, ball, relation, center=center), stats


def local_matches(
    q: PatternGraph,
    g: Graph,
    semantics: str,
    center_prune: bool = True,
    workers: Optional[int] = None,
    stats: Optional[Stats] = None,
) -> List[MatchResult]:
    """Run ``semantics`` ("dual" or "triple") on the d_Q-ball of every center.

    With ``center_prune`` the global maximum relation is computed first.
    Every ball-local relation lies inside it, so only nodes it matches can
    be centers and only those nodes need to be materialized in a ball.
    Without pruning every data node gets a full ball.

    Results are deduplicated and sorted by their canonical key, so the
    output does not depend on evaluation order or on ``workers``.
    """
    radius = diameter(q)
    keep: Optional[FrozenSet[str]] = None
    if center_prune:
        found = Stats()
        relation = _relation(q, g, semantics, found)
        if stats is not None:
            stats.merge(found)
        keep = frozenset(v for vs in relation.values() for v in vs)
        centers = [v for v in g.nodes if v in keep]
    else:
        centers = list(g.nodes)
    job = _BallJob(q, g, radius, semantics, keep)
    if workers and workers > 1 and len(centers) > 1:
        chunk = max(1, len(centers) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(job,)) as pool:
            outcomes = list(pool.map(_match_in_worker, centers, chunksize=chunk))
    else:
        outcomes = [_match_ball(job, c) for c in centers]

    unique: Dict[tuple, MatchResult] = {}
    for result, ball_stats in outcomes:
        if stats is not None:
            stats.merge(ball_stats)
        if result is not None:
            unique.setdefault(result.key(), result)
    return [unique[k] for k in sorted(unique)]


def match_plus(
    q: PatternGraph,
    g: Graph,
    center_prune: bool = True,
    workers: Optional[int] = None,
    stats: Optional[Stats] = None,
) -> List[MatchResult]:
    """Triple simulation under locality: the union of ball-local triple matches."""
    return local_matches(q, g, "triple", center_prune=center_prune, workers=workers, stats=stats)


def union_nodes(results: List[MatchResult]) -> frozenset:
    out = set()
    for r in results:
        out.update(r.nodes)
    return frozenset(out)


def union_edges(results: List[MatchResult]) -> frozenset:
    out = set()
    for r in results:
        out.update(r.edges)
    return frozenset(out)

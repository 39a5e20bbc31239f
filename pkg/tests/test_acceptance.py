"""The twelve acceptance criteria, each at its stated tolerance and time limit.

Every test records one ``PASS``/``FAIL`` line; conftest prints them in the
terminal summary.
"""

import math
import random
import statistics
import time
from contextlib import contextmanager
from functools import lru_cache
from typing import Dict, List, Tuple

from triplesim.bench import BenchConfig, bench
from triplesim.bipartite import has_complete_matching, maximum_matching
from triplesim.graph import Graph, NodeSet, PatternGraph
from triplesim.locality import match_plus, union_edges, union_nodes
from triplesim.oracle import (
    brute_force_matching_size,
    brute_force_triple_relation,
    enumerate_isomorphisms,
    hall_condition,
)
from triplesim.simulation import dual_simulation, graph_simulation, relation_sets, strong_simulation
from triplesim.triple import (
    init_aux_structs,
    inspecting_graphs,
    lr_checking,
    lr_checking_quantified,
    transform_quantified_to_lr,
    triple_simulation,
)

from .generators import (
    fixture,
    lr_free_pattern,
    plant,
    random_bipartite,
    random_graph,
    random_instance,
    tree_quantified_pattern,
)

RESULTS: Dict[int, str] = {}
Instance = Tuple[PatternGraph, Graph]


@contextmanager
def criterion(n: int, title: str, limit_s: float):
    info: Dict[str, str] = {}
    t0 = time.perf_counter()
    try:
        yield info
        elapsed = time.perf_counter() - t0
        assert elapsed < limit_s, f"took {elapsed:.2f}s, limit {limit_s}s"
    except AssertionError as exc:
        RESULTS[n] = f"FAIL [{n:2d}] {title}: {exc}"
        raise
    extra = f"; {info['detail']}" if "detail" in info else ""
    RESULTS[n] = f"PASS [{n:2d}] {title} ({elapsed:.2f}s{extra})"


@lru_cache(maxsize=None)
def oracle_suite() -> List[Instance]:
    rng = random.Random(20240601)
    return [random_instance(rng, max_q=5, max_g=10, max_labels=4) for _ in range(1000)]


@lru_cache(maxsize=None)
def iso_suite() -> List[Instance]:
    rng = random.Random(20240602)
    return [random_instance(rng, max_q=5, max_g=10, max_labels=3) for _ in range(500)]


@lru_cache(maxsize=None)
def lr_free_suite() -> List[Instance]:
    rng = random.Random(20240603)
    out = []
    for _ in range(500):
        q = lr_free_pattern(rng, rng.randint(1, 5))
        g = random_graph(rng, rng.randint(1, 12), 4, rng.choice([0.15, 0.25, 0.4]))
        if rng.random() < 0.5:
            g = plant(rng, q, g)
        out.append((q, g))
    return out


@lru_cache(maxsize=None)
def quantified_suite() -> List[Tuple[PatternGraph, PatternGraph, Graph]]:
    rng = random.Random(20240604)
    out = []
    while len(out) < 200:
        q = tree_quantified_pattern(rng, core=rng.randint(1, 3), labels=3, max_p=3)
        t = transform_quantified_to_lr(q)
        # nested quantifiers multiply; keep the expanded pattern small
        if len(t) > 12:
            continue
        g = random_graph(rng, rng.randint(len(t), 14), 3, rng.choice([0.15, 0.25, 0.4]))
        if rng.random() < 0.6:
            g = plant(rng, t, g)
        out.append((q, t, g))
    return out


def test_01_q1_over_g_is_empty():
    with criterion(1, "triple_simulation(Q1, G) is empty", 1.0):
        q1, g = fixture("recommend_q1.graph", pattern=True), fixture("recommend_g.graph")
        tm = triple_simulation(q1, g)
        assert tm.relation == {} and not tm.result, f"got relation {relation_sets(tm.relation)}"


def test_02_q2_over_g2_relation():
    with criterion(2, "triple_simulation(Q2, G2) relation and whole-G2 result", 1.0):
        q2, g2 = fixture("recommend_q2.graph", pattern=True), fixture("recommend_g2.graph")
        tm = triple_simulation(q2, g2)
        pairs = {(u, v) for u, vs in tm.relation.items() for v in vs}
        assert pairs == {("q1", "d1"), ("q2", "d3"), ("q4", "d4"), ("q5", "d5"), ("q6", "d6")}, pairs
        assert set(tm.result.nodes) == set(g2.nodes) and set(tm.result.edges) == set(g2.edges)


def test_03_strong_simulation_false_positive():
    with criterion(3, "strong(Q1, G) nonempty while triple(Q1, G) empty", 1.0) as info:
        q1, g = fixture("recommend_q1.graph", pattern=True), fixture("recommend_g.graph")
        strong = strong_simulation(q1, g)
        assert strong, "strong simulation found nothing"
        assert not triple_simulation(q1, g), "triple simulation is not empty"
        info["detail"] = f"{len(strong)} strong result(s)"


def _supervision_check(name: str):
    q, g = fixture("supervise_q.graph", pattern=True), fixture(name)
    sim = {u: NodeSet(vs) for u, vs in dual_simulation(q, g).items()}
    aux = init_aux_structs(q, g, sim)
    bg, _ = inspecting_graphs(q, g, aux, sim, "q1", "d1")
    return lr_checking(q, g, aux, sim, "q1", "d1"), len(maximum_matching(bg))


def test_04_lr_checking_on_supervision():
    with criterion(4, "lr_checking supervision: G1 false (|M|=2), G2 true (|M|=3)", 1.0):
        assert _supervision_check("supervise_g1.graph") == (False, 2)
        assert _supervision_check("supervise_g2.graph") == (True, 3)


def _quantified_check(name: str) -> bool:
    q, g = fixture("quant_q.graph", pattern=True), fixture(name)
    sim = {u: NodeSet(vs) for u, vs in dual_simulation(PatternGraph(q.graph), g).items()}
    aux = init_aux_structs(q, g, sim)
    return lr_checking_quantified(q, g, aux, sim, "q1", "d1")


def test_05_quantified_check():
    with criterion(5, "lr_checking_quantified: false, then true with a second B-child", 1.0):
        assert _quantified_check("quant_g.graph") is False
        assert _quantified_check("quant_g_plus.graph") is True


def test_06_oracle_equivalence():
    suite = oracle_suite()
    with criterion(6, f"triple_simulation == brute force on {len(suite)} instances", 60.0) as info:
        bad = 0
        nonempty = 0
        for q, g in suite:
            fast = relation_sets(triple_simulation(q, g).relation)
            bad += fast != brute_force_triple_relation(q, g)
            nonempty += bool(fast)
        assert len(suite) >= 1000
        assert bad == 0, f"{bad} disagreements"
        info["detail"] = f"{nonempty} nonempty"


def test_07_isomorphism_soundness():
    suite = iso_suite()
    with criterion(7, f"every embedding inside S_T on {len(suite)} instances", 60.0) as info:
        violations = 0
        embeddings = 0
        for q, g in suite:
            rel = relation_sets(triple_simulation(q, g).relation)
            for f in enumerate_isomorphisms(q, g):
                embeddings += 1
                violations += not all(v in rel.get(u, ()) for u, v in f.items())
        assert len(suite) >= 500 and embeddings > 0
        assert violations == 0, f"{violations} embeddings outside S_T"
        info["detail"] = f"{embeddings} embeddings checked"


def test_08_matching_correctness():
    rng = random.Random(20240605)
    with criterion(8, "Hopcroft-Karp == brute force, complete == Hall on 1000 graphs", 30.0) as info:
        bad = 0
        complete = 0
        for _ in range(1000):
            bg = random_bipartite(rng, max_side=8, max_edges=20)
            m = maximum_matching(bg)
            bad += (not m.is_valid_for(bg)) or len(m) != brute_force_matching_size(bg)
            c = has_complete_matching(bg)
            bad += c != hall_condition(bg)
            complete += c
        assert bad == 0, f"{bad} violations"
        info["detail"] = f"{complete} complete"


def test_09_degeneration_without_lr():
    suite = lr_free_suite()
    with criterion(9, f"triple == dual on {len(suite)} LR-free patterns", 30.0) as info:
        bad = 0
        nonempty = 0
        for q, g in suite:
            t = relation_sets(triple_simulation(q, g).relation)
            bad += t != relation_sets(dual_simulation(q, g))
            nonempty += bool(t)
        assert len(suite) >= 500
        assert bad == 0, f"{bad} disagreements"
        info["detail"] = f"{nonempty} nonempty"


def _chain_ok(q: PatternGraph, plain: PatternGraph, g: Graph) -> bool:
    t = relation_sets(triple_simulation(q, g).relation)
    d = relation_sets(dual_simulation(plain, g))
    s = relation_sets(graph_simulation(plain, g))
    if not all(t[u] <= d.get(u, frozenset()) for u in t):
        return False
    if not all(d[u] <= s.get(u, frozenset()) for u in d):
        return False
    whole = triple_simulation(q, g).result
    local = match_plus(q, g)
    return union_nodes(local) <= set(whole.nodes) and union_edges(local) <= set(whole.edges)


def test_10_refinement_chain_and_locality():
    with criterion(10, "S_T <= S_D <= S and M_T^L <= M_T on every suite instance", 120.0) as info:
        checked = 0
        bad = 0
        for q, g in oracle_suite() + iso_suite() + lr_free_suite():
            bad += not _chain_ok(q, q, g)
            checked += 1
        for q, _, g in quantified_suite():
            bad += not _chain_ok(q, PatternGraph(q.graph), g)
            checked += 1
        assert bad == 0, f"{bad} violations"
        info["detail"] = f"{checked} instances"


def test_11_transform_equivalence():
    suite = quantified_suite()
    with criterion(11, f"quantified == transformed on {len(suite)} tree patterns", 60.0) as info:
        bad = 0
        nonempty = 0
        for q, t, g in suite:
            a = set(triple_simulation(q, g).result.nodes)
            bad += a != set(triple_simulation(t, g).result.nodes)
            nonempty += bool(a)
        assert len(suite) >= 200
        assert bad == 0, f"{bad} disagreements"
        info["detail"] = f"{nonempty} nonempty"


def test_12_scaling():
    cfg = BenchConfig.from_obj(
        {"sizes": [1000, 2000, 4000, 8000], "seeds": [0, 1, 2], "pattern_nodes": 6, "semantics": ["triple"]}
    )
    with criterion(12, "triple on 1k-8k nodes: each run < 10 s, log-log slope < 3", 300.0) as info:
        rows = bench(cfg)
        assert len(rows) == 12
        slowest = max(r["wall_ms"] for r in rows) / 1000.0
        assert slowest < 10.0, f"slowest run {slowest:.2f}s"
        sizes = cfg.sizes
        med = [statistics.median(r["wall_ms"] for r in rows if r["data_nodes"] == n) for n in sizes]
        xs = [math.log(n) for n in sizes]
        ys = [math.log(max(m, 1e-3)) for m in med]
        mx, my = statistics.fmean(xs), statistics.fmean(ys)
        slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
        assert slope < 3.0, f"slope {slope:.2f}"
        info["detail"] = f"median ms {[round(m) for m in med]}, slope {slope:.2f}"

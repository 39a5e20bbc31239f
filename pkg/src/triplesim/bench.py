"""Synthetic workload generator and timing harness."""

from __future__ import annotations

import csv
import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

from .graph import Graph, GraphError, PatternGraph
from .locality import match_plus, union_nodes
from .simulation import Stats, dual_simulation, graph_simulation, strong_simulation
from .triple import triple_simulation

CSV_COLUMNS = (
    "pattern_nodes",
    "data_nodes",
    "data_edges",
    "semantics",
    "seed",
    "wall_ms",
    "passes",
    "removals",
    "lr_checks",
    "bipartite_graphs",
    "augment_steps",
    "result_nodes",
    "result_digest",
)

BENCH_SEMANTICS = ("sim", "dual", "strong", "triple", "triple-local")


def label_names(k: int) -> List[str]:
    return [f"L{i}" for i in range(k)]


def lr_pattern(nodes: int = 6, multiplicity: int = 2, labels: int = 4) -> PatternGraph:
    """Pattern whose root has ``multiplicity`` same-label children.

    Further nodes hang below those children round-robin, cycling through
    the remaining labels, so siblings with a repeated label always exist.
    """
    if labels < 2:
        raise GraphError("an LR pattern needs at least two labels")
    if multiplicity < 1 or nodes < multiplicity + 1:
        raise GraphError("pattern must hold the root and all repeated children")
    names = label_names(labels)
    rest = names[2:] or names[:1]
    node_list: List[Tuple[str, str]] = [("q0", names[0])]
    edges: List[Tuple[str, str]] = []
    for i in range(1, multiplicity + 1):
        node_list.append((f"q{i}", names[1]))
        edges.append(("q0", f"q{i}"))
    tips = [f"q{i}" for i in range(1, multiplicity + 1)]
    for j, i in enumerate(range(multiplicity + 1, nodes)):
        node_list.append((f"q{i}", rest[j % len(rest)]))
        parent = tips[j % len(tips)]
        edges.append((parent, f"q{i}"))
        tips[j % len(tips)] = f"q{i}"
    return PatternGraph(Graph(node_list, edges))


def lr_free_pattern(nodes: int = 6, labels: int = 6) -> PatternGraph:
    """A directed path with all-distinct labels (no label repetition anywhere)."""
    names = label_names(max(labels, nodes))
    node_list = [(f"q{i}", names[i]) for i in range(nodes)]
    edges = [(f"q{i}", f"q{i + 1}") for i in range(nodes - 1)]
    return PatternGraph(Graph(node_list, edges))


def random_data_graph(
    n: int,
    labels: int,
    avg_degree: float,
    rng: random.Random,
    plant: Optional[PatternGraph] = None,
    copies: int = 0,
) -> Graph:
    """Uniform random digraph, optionally with ``copies`` planted pattern embeddings."""
    names = label_names(labels)
    node_labels = {f"d{i}": rng.choice(names) for i in range(n)}
    ids = list(node_labels)
    edges = set()
    target = int(n * avg_degree)
    while len(edges) < target and n > 1:
        a, b = rng.choice(ids), rng.choice(ids)
        if a != b:
            edges.add((a, b))
    if plant is not None and copies:
        for _ in range(copies):
            picked = rng.sample(ids, len(plant))
            f = dict(zip(plant.nodes, picked))
            for u, v in f.items():
                node_labels[v] = plant.label(u)
            for a, b in plant.edges:
                edges.add((f[a], f[b]))
    return Graph(node_labels.items(), sorted(edges, key=lambda e: (int(e[0][1:]), int(e[1][1:]))))


def _digest(nodes: Iterable[str]) -> str:
    return hashlib.sha1(",".join(sorted(nodes)).encode()).hexdigest()[:12]


def run_semantics(semantics: str, q: PatternGraph, g: Graph, stats: Stats) -> frozenset:
    """Run one semantics and return the node set of its result."""
    if semantics == "sim":
        rel = graph_simulation(q, g, stats)
    elif semantics == "dual":
        rel = dual_simulation(q, g, stats)
    elif semantics == "triple":
        rel = triple_simulation(q, g, stats).relation
    elif semantics == "strong":
        return union_nodes(strong_simulation(q, g, stats=stats))
    elif semantics == "triple-local":
        return union_nodes(match_plus(q, g, stats=stats))
    else:
        raise ValueError(f"unknown semantics {semantics!r}")
    out = set()
    for vs in rel.values():
        out.update(vs)
    return frozenset(out)


@dataclass
class BenchConfig:
    sizes: List[int]
    seeds: List[int] = field(default_factory=lambda: [0])
    labels: int = 4
    avg_degree: float = 4.0
    pattern_nodes: int = 6
    lr_multiplicity: int = 2
    lr_free: bool = False
    plant: int = 10
    semantics: List[str] = field(default_factory=lambda: ["sim", "dual", "triple"])

    @classmethod
    def from_obj(cls, obj: Dict[str, Any]) -> "BenchConfig":
        if not isinstance(obj, dict) or "sizes" not in obj:
            raise ValueError("bench config needs a 'sizes' list")
        known = set(cls.__dataclass_fields__)
        unknown = set(obj) - known - {"output"}
        if unknown:
            raise ValueError(f"unknown bench config keys: {sorted(unknown)}")
        cfg = cls(**{k: v for k, v in obj.items() if k in known})
        if not cfg.sizes or any(not isinstance(s, int) or s < 1 for s in cfg.sizes):
            raise ValueError("'sizes' must be a non-empty list of positive integers")
        bad = [s for s in cfg.semantics if s not in BENCH_SEMANTICS]
        if bad:
            raise ValueError(f"unsupported bench semantics {bad}")
        return cfg

    @classmethod
    def load(cls, path: str) -> "BenchConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_obj(json.load(fh))

    def pattern(self) -> PatternGraph:
        if self.lr_free:
            return lr_free_pattern(self.pattern_nodes, self.labels)
        return lr_pattern(self.pattern_nodes, self.lr_multiplicity, self.labels)


def bench(cfg: BenchConfig) -> List[Dict[str, Any]]:
    q = cfg.pattern()
    labels = max(cfg.labels, len(q.graph.label_set()))
    rows: List[Dict[str, Any]] = []
    for seed in cfg.seeds:
        for n in cfg.sizes:
            g = random_data_graph(n, labels, cfg.avg_degree, random.Random(seed * 1_000_003 + n), q, cfg.plant)
            for semantics in cfg.semantics:
                stats = Stats()
                t0 = time.perf_counter()
                nodes = run_semantics(semantics, q, g, stats)
                wall = (time.perf_counter() - t0) * 1000.0
                rows.append(
                    {
                        "pattern_nodes": len(q),
                        "data_nodes": len(g),
                        "data_edges": len(g.edges),
                        "semantics": semantics,
                        "seed": seed,
                        "wall_ms": round(wall, 3),
                        "passes": stats.passes,
                        "removals": stats.removals,
                        "lr_checks": stats.lr_checks,
                        "bipartite_graphs": stats.bipartite_graphs,
                        "augment_steps": stats.augment_steps,
                        "result_nodes": len(nodes),
                        "result_digest": _digest(nodes),
                    }
                )
    return rows


def write_csv(rows: Sequence[Dict[str, Any]], out: TextIO) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    writer.writerows(rows)

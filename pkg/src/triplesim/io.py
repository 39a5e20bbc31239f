"""Graph file formats and match reports.

Text format, one declaration per line (``#`` starts a comment)::

    node <id> <label>
    edge <src> <dst> [>=<p>]

JSON format: ``{"nodes": [{"id", "label"}], "edges": [{"src", "dst", "gte"?}]}``.
Quantifiers are only legal in pattern files.
"""

from __future__ import annotations

import io
import json
import os
import re
from dataclasses import dataclass, field
from typing import IO, Any, Dict, List, Mapping, Optional, Tuple, Union

from .graph import Graph, GraphError, NodeSet, PatternGraph
from .simulation import MatchResult

Source = Union[str, os.PathLike, IO[str]]

_GTE = re.compile(r"^(?:>=|≥)(\d+)$")


class ParseError(GraphError):
    def __init__(self, message: str, source: str = "<input>", line: Optional[int] = None) -> None:
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.line = line


def _unsupported_quantifier(token: str) -> Optional[str]:
    if token in ("=0", "==0"):
        return "negation"
    if token in ("=100%", "==100%"):
        return "universal quantification"
    if token.endswith("%"):
        return "ratio aggregate"
    return None


def _quantifier(token: str, source: str, line: Optional[int]) -> int:
    m = _GTE.match(token)
    if m:
        p = int(m.group(1))
        if p < 1:
            raise ParseError(f"quantifier {token!r} must be >= 1", source, line)
        return p
    kind = _unsupported_quantifier(token)
    if kind:
        raise ParseError(
            f"unsupported quantifier {token!r}: {kind} is not supported "
            "(only numeric '>=p' quantifiers are)",
            source,
            line,
        )
    raise ParseError(f"malformed quantifier {token!r}", source, line)


def _assemble(
    nodes: List[Tuple[str, str]],
    edges: List[Tuple[str, str]],
    quant: Dict[Tuple[str, str], int],
    pattern: bool,
    source: str,
) -> Union[Graph, PatternGraph]:
    try:
        g = Graph(nodes, edges)
        return PatternGraph(g, quant) if pattern else g
    except ParseError:
        raise
    except GraphError as exc:
        raise ParseError(str(exc), source) from None


def parse_graph_text(text: str, pattern: bool = False, source: str = "<input>") -> Union[Graph, PatternGraph]:
    nodes: List[Tuple[str, str]] = []
    seen_nodes = set()
    edges: List[Tuple[str, str]] = []
    seen_edges = set()
    quant: Dict[Tuple[str, str], int] = {}
    edge_lines: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "node":
            if len(parts) != 3:
                raise ParseError("expected 'node <id> <label>'", source, lineno)
            if parts[1] in seen_nodes:
                raise ParseError(f"duplicate node {parts[1]!r}", source, lineno)
            seen_nodes.add(parts[1])
            nodes.append((parts[1], parts[2]))
        elif kind == "edge":
            if len(parts) not in (3, 4):
                raise ParseError("expected 'edge <src> <dst> [>=p]'", source, lineno)
            src, dst = parts[1], parts[2]
            edge_lines.append(lineno)
            if (src, dst) in seen_edges:
                raise ParseError(f"duplicate edge {src} -> {dst}", source, lineno)
            seen_edges.add((src, dst))
            edges.append((src, dst))
            if len(parts) == 4:
                p = _quantifier(parts[3], source, lineno)
                if not pattern:
                    raise ParseError("quantifiers are only allowed in pattern graphs", source, lineno)
                quant[(src, dst)] = p
        else:
            raise ParseError(f"unknown declaration {kind!r}", source, lineno)
    for (src, dst), lineno in zip(edges, edge_lines):
        for end in (src, dst):
            if end not in seen_nodes:
                raise ParseError(f"dangling edge: undeclared node {end!r}", source, lineno)
    return _assemble(nodes, edges, quant, pattern, source)


def parse_graph_json(data: Any, pattern: bool = False, source: str = "<input>") -> Union[Graph, PatternGraph]:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", source, exc.lineno) from None
    if not isinstance(data, dict) or not isinstance(data.get("nodes"), list):
        raise ParseError("JSON graph needs a 'nodes' list", source)
    extra = set(data) - {"nodes", "edges"}
    if extra:
        raise ParseError(f"unsupported top-level keys {sorted(extra)}", source)
    nodes: List[Tuple[str, str]] = []
    seen = set()
    for i, item in enumerate(data["nodes"]):
        if not isinstance(item, dict) or not isinstance(item.get("id"), str) or not isinstance(item.get("label"), str):
            raise ParseError(f"nodes[{i}] needs string 'id' and 'label'", source)
        extra = set(item) - {"id", "label"}
        if extra:
            raise ParseError(f"nodes[{i}] has unsupported keys {sorted(extra)}", source)
        if item["id"] in seen:
            raise ParseError(f"duplicate node {item['id']!r}", source)
        seen.add(item["id"])
        nodes.append((item["id"], item["label"]))
    edges: List[Tuple[str, str]] = []
    seen_edges = set()
    quant: Dict[Tuple[str, str], int] = {}
    for i, item in enumerate(data.get("edges", [])):
        if not isinstance(item, dict) or not isinstance(item.get("src"), str) or not isinstance(item.get("dst"), str):
            raise ParseError(f"edges[{i}] needs string 'src' and 'dst'", source)
        extra = set(item) - {"src", "dst", "gte"}
        if extra:
            raise ParseError(f"edges[{i}] has unsupported keys {sorted(extra)}", source)
        e = (item["src"], item["dst"])
        for end in e:
            if end not in seen:
                raise ParseError(f"edges[{i}] references undeclared node {end!r}", source)
        if e in seen_edges:
            raise ParseError(f"duplicate edge {e[0]} -> {e[1]}", source)
        seen_edges.add(e)
        edges.append(e)
        if "gte" in item:
            gte = item["gte"]
            if isinstance(gte, bool) or not isinstance(gte, int):
                _quantifier(str(gte), source, None)
                raise ParseError(f"edges[{i}].gte must be an integer", source)
            if not pattern:
                raise ParseError("quantifiers are only allowed in pattern graphs", source)
            if gte < 1:
                raise ParseError(f"edges[{i}].gte must be >= 1", source)
            quant[e] = gte
    return _assemble(nodes, edges, quant, pattern, source)


def parse_graph_file(src: Source, pattern: bool = False) -> Union[Graph, PatternGraph]:
    """Parse a ``.graph`` (text) or ``.json`` file, or an open text stream."""
    if isinstance(src, (str, os.PathLike)):
        path = os.fspath(src)
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read: {exc.strerror}", path) from None
        is_json = path.lower().endswith(".json")
        name = path
    else:
        text = src.read()
        name = getattr(src, "name", "<stream>")
        is_json = text.lstrip().startswith("{")
    if is_json:
        return parse_graph_json(text, pattern, name)
    return parse_graph_text(text, pattern, name)


def _split(g: Union[Graph, PatternGraph]) -> Tuple[Graph, Mapping[Tuple[str, str], int]]:
    if isinstance(g, PatternGraph):
        return g.graph, g.quantifiers
    return g, {}


def to_text(g: Union[Graph, PatternGraph]) -> str:
    graph, quant = _split(g)
    out = io.StringIO()
    for v in graph.nodes:
        out.write(f"node {v} {graph.labels[v]}\n")
    for a, b in graph.edges:
        p = quant.get((a, b))
        out.write(f"edge {a} {b}" + (f" >={p}" if p is not None else "") + "\n")
    return out.getvalue()


def to_json_obj(g: Union[Graph, PatternGraph]) -> Dict[str, Any]:
    graph, quant = _split(g)
    edges = []
    for a, b in graph.edges:
        item: Dict[str, Any] = {"src": a, "dst": b}
        if (a, b) in quant:
            item["gte"] = quant[(a, b)]
        edges.append(item)
    return {"nodes": [{"id": v, "label": graph.labels[v]} for v in graph.nodes], "edges": edges}


def result_to_obj(r: MatchResult) -> Dict[str, Any]:
    obj: Dict[str, Any] = {
        "nodes": [{"id": v, "label": r.graph.labels[v]} for v in sorted(r.nodes)],
        "edges": [[a, b] for a, b in sorted(r.edges)],
    }
    if r.center is not None:
        obj["center"] = r.center
    return obj


def result_from_obj(obj: Mapping[str, Any]) -> MatchResult:
    g = Graph([(n["id"], n["label"]) for n in obj["nodes"]], [tuple(e) for e in obj["edges"]])
    return MatchResult(g, obj.get("center"))


def result_to_dot(r: MatchResult, name: str = "match") -> str:
    lines = [f'digraph "{name}" {{']
    for v in sorted(r.nodes):
        lines.append(f'  "{v}" [label="{v}:{r.graph.labels[v]}"];')
    for a, b in sorted(r.edges):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


SEMANTICS = ("sim", "dual", "strong", "triple", "triple-local", "iso")


@dataclass
class MatchReport:
    semantics: str
    relation: Optional[Dict[str, List[str]]] = None
    results: List[MatchResult] = field(default_factory=list)
    embeddings: Optional[List[Dict[str, str]]] = None
    stats: Optional[Dict[str, float]] = None

    def __post_init__(self) -> None:
        if self.semantics not in SEMANTICS:
            raise ValueError(f"unknown semantics {self.semantics!r}")
        if (self.semantics == "iso") != (self.embeddings is not None):
            raise ValueError("embeddings are reported for (and only for) iso semantics")

    @property
    def matched(self) -> bool:
        if self.embeddings is not None:
            return bool(self.embeddings)
        return any(self.results)

    @staticmethod
    def relation_payload(sim: Mapping[str, NodeSet]) -> Dict[str, List[str]]:
        return {u: sorted(vs) for u, vs in sorted(sim.items())}

    def to_obj(self, with_stats: bool = False) -> Dict[str, Any]:
        obj: Dict[str, Any] = {
            "semantics": self.semantics,
            "matched": self.matched,
            "relation": self.relation,
            "results": [result_to_obj(r) for r in self.results],
        }
        if self.embeddings is not None:
            obj["embeddings"] = [dict(sorted(e.items())) for e in self.embeddings]
        if with_stats and self.stats is not None:
            obj["stats"] = self.stats
        return obj

    @classmethod
    def from_obj(cls, obj: Mapping[str, Any]) -> "MatchReport":
        return cls(
            semantics=obj["semantics"],
            relation=obj.get("relation"),
            results=[result_from_obj(r) for r in obj.get("results", [])],
            embeddings=obj.get("embeddings"),
            stats=obj.get("stats"),
        )

    def to_json(self, with_stats: bool = False) -> str:
        return json.dumps(self.to_obj(with_stats), indent=2) + "\n"

    def to_table(self) -> str:
        lines = [f"semantics: {self.semantics}", f"matched:   {'yes' if self.matched else 'no'}"]
        if self.relation is not None:
            lines.append("relation:" if self.relation else "relation:  (empty)")
            width = max((len(u) for u in self.relation), default=0)
            for u, vs in self.relation.items():
                lines.append(f"  {u.ljust(width)}  {', '.join(vs) if vs else '-'}")
        if self.embeddings is not None:
            lines.append(f"embeddings: {len(self.embeddings)}")
            for e in self.embeddings:
                lines.append("  " + ", ".join(f"{u}->{v}" for u, v in sorted(e.items())))
        for i, r in enumerate(self.results):
            head = f"result {i + 1}: {len(r.nodes)} nodes, {len(r.edges)} edges"
            if r.center is not None:
                head += f" (center {r.center})"
            lines.append(head)
            lines.append("  nodes: " + " ".join(f"{v}:{r.graph.labels[v]}" for v in sorted(r.nodes)))
            if r.edges:
                lines.append("  edges: " + " ".join(f"{a}->{b}" for a, b in sorted(r.edges)))
        return "\n".join(lines) + "\n"

    def to_dot(self) -> str:
        return "".join(result_to_dot(r, f"{self.semantics}_{i + 1}") for i, r in enumerate(self.results))

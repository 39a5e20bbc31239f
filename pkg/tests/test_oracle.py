import random

import pytest

from triplesim.graph import Graph, PatternGraph, UnsupportedSemantics
from triplesim.oracle import (
    OversizeError,
    brute_force_triple_relation,
    enumerate_isomorphisms,
    is_embedding,
)
from triplesim.simulation import relation_sets
from triplesim.triple import triple_simulation

from .generators import fixture, random_instance


def P(nodes, edges, quant=None):
    return PatternGraph(Graph(nodes, edges), quant)


FORK = P([("a", "A"), ("b1", "B"), ("b2", "B")], [("a", "b1"), ("a", "b2")])


def test_single_edge_single_embedding():
    q = P([("a", "A"), ("b", "B")], [("a", "b")])
    g = Graph([("x", "A"), ("y", "B")], [("x", "y")])
    assert enumerate_isomorphisms(q, g) == [{"a": "x", "b": "y"}]


def test_injectivity():
    g = Graph([("x", "A"), ("y", "B")], [("x", "y")])
    assert enumerate_isomorphisms(FORK, g) == []
    g2 = Graph([("x", "A"), ("y", "B"), ("z", "B")], [("x", "y"), ("x", "z")])
    assert len(enumerate_isomorphisms(FORK, g2)) == 2


def test_self_loop_must_be_preserved():
    q = P([("a", "A")], [("a", "a")])
    g = Graph([("x", "A"), ("y", "A")], [("y", "y")])
    assert enumerate_isomorphisms(q, g) == [{"a": "y"}]


def test_q1_has_no_embedding():
    assert enumerate_isomorphisms(fixture("recommend_q1.graph", pattern=True), fixture("recommend_g.graph")) == []


def test_guards_and_quantifiers():
    big_q = P([(f"u{i}", "A") for i in range(7)], [(f"u{i}", f"u{i + 1}") for i in range(6)])
    with pytest.raises(OversizeError):
        enumerate_isomorphisms(big_q, Graph([("x", "A")]))
    with pytest.raises(OversizeError):
        brute_force_triple_relation(FORK, Graph([(f"v{i}", "A") for i in range(15)]))
    quant = P([("a", "A"), ("b", "B")], [("a", "b")], {("a", "b"): 2})
    with pytest.raises(UnsupportedSemantics):
        enumerate_isomorphisms(quant, Graph([("x", "A")]))


def test_embedding_checker():
    q = P([("a", "A"), ("b", "B")], [("a", "b")])
    g = Graph([("x", "A"), ("y", "B"), ("z", "B")], [("x", "y")])
    assert is_embedding(q, g, {"a": "x", "b": "y"})
    assert not is_embedding(q, g, {"a": "x", "b": "z"})
    assert not is_embedding(q, g, {"a": "x"})
    assert not is_embedding(q, g, {"a": "y", "b": "y"})


def test_every_enumerated_embedding_verifies():
    rng = random.Random(61)
    total = 0
    for _ in range(200):
        q, g = random_instance(rng)
        for f in enumerate_isomorphisms(q, g):
            total += 1
            assert is_embedding(q, g, f)
    assert total > 50


def test_embeddings_inside_triple_relation():
    rng = random.Random(62)
    for _ in range(200):
        q, g = random_instance(rng)
        rel = relation_sets(triple_simulation(q, g).relation)
        for f in enumerate_isomorphisms(q, g):
            assert all(v in rel[u] for u, v in f.items())


def test_fork_relation():
    two = Graph([("x", "A"), ("y", "B"), ("z", "B")], [("x", "y"), ("x", "z")])
    assert brute_force_triple_relation(FORK, two) == {"a": {"x"}, "b1": {"y", "z"}, "b2": {"y", "z"}}
    one = Graph([("x", "A"), ("y", "B")], [("x", "y")])
    assert brute_force_triple_relation(FORK, one) == {}


def test_shuffled_deletion_order_reaches_same_fixpoint():
    rng = random.Random(63)
    for i in range(150):
        q, g = random_instance(rng)
        base = brute_force_triple_relation(q, g)
        assert brute_force_triple_relation(q, g, seed=i) == base

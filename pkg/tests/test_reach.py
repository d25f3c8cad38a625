import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from horncalc.generators import random_esystem, random_gsequent
from horncalc.gsequent import GSequent
from horncalc.reach import ReachQuery, brute_force_reach, member, reach_witness, solve_reach
from horncalc.rewriting import EMPTY, Sym, close_under_converse, derives, word
from strategies import esystems, gsequents, syms

G3I = close_under_converse(["E -> eps", "E -> E E"])


def chain(n, etype="E"):
    vs = [f"v{i}" for i in range(n)]
    return GSequent({v: v for v in vs}, [(etype, vs[i], vs[i + 1]) for i in range(n - 1)])


def test_transitive_reflexive_closure_language():
    g = chain(4)
    assert solve_reach(ReachQuery(g, "v0", "v3", G3I, "E"))
    assert solve_reach(ReachQuery(g, "v2", "v2", G3I, "E"))
    assert not solve_reach(ReachQuery(g, "v3", "v0", G3I, "E"))


def test_empty_grammar_needs_a_direct_edge():
    g = chain(3)
    assert solve_reach(ReachQuery(g, "v0", "v1", EMPTY, "E"))
    assert not solve_reach(ReachQuery(g, "v0", "v2", EMPTY, "E"))
    assert solve_reach(ReachQuery(g, "v1", "v0", EMPTY, "inv(E)"))


def test_witness_spells_a_walk():
    g = chain(4)
    wit = reach_witness(ReachQuery(g, "v0", "v3", G3I, "E"))
    assert wit is not None
    assert wit.walk[0] == "v0" and wit.walk[-1] == "v3"
    assert "v3" in g.reach_from("v0", wit.string)
    assert derives(G3I, (Sym("E"),), wit.string)
    assert wit.derivation[0] == (Sym("E"),) and wit.derivation[-1] == wit.string


def test_cyclic_grammar():
    gr = close_under_converse(["a -> c c", "c -> a"])
    g = GSequent({"x": 0, "y": 1, "z": 2}, [("c", "x", "y"), ("a", "y", "z")])
    q = ReachQuery(g, "x", "z", gr, "a")
    assert solve_reach(q)
    assert brute_force_reach(q, 4, 4)


def test_query_validation():
    g = chain(2)
    with pytest.raises(ValueError):
        ReachQuery(g, "v0", "nope", G3I, "E")
    with pytest.raises(ValueError):
        ReachQuery(g, "v0", "v1", G3I, "F", alphabet=frozenset({"E"}))


def test_member_exact():
    gr = close_under_converse(["a -> c c"])
    assert member(gr, Sym("a"), word("c c"))
    assert not member(gr, Sym("a"), word("c c c c"))
    assert member(G3I, Sym("E"), word("E E E E E"))


@given(gsequents(max_vertices=3, max_edges=4), esystems(2), syms)
def test_solver_agrees_with_brute_force(g, gr, x):
    for s in sorted(g.vertices):
        for t in sorted(g.vertices):
            q = ReachQuery(g, s, t, gr, x)
            wit = reach_witness(q)
            assert (wit is not None) == solve_reach(q)
            if wit is not None:
                assert brute_force_reach(q, len(wit.string), wit.derivation_length)
            else:
                assert not brute_force_reach(q, 5, 5)


@given(st.integers(0, 10_000))
def test_reach_relation_contains_plain_edges(seed):
    rng = random.Random(seed)
    g = random_gsequent(rng, 4, ["a", "b"], 5)
    gr = random_esystem(rng, ["a", "b"], 2)
    for e in g.edges:
        assert solve_reach(ReachQuery(g, e.src, e.dst, gr, e.etype))
        assert solve_reach(ReachQuery(g, e.dst, e.src, gr, Sym(e.etype, True)))

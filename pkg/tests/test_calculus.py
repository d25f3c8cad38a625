import pytest
from hypothesis import given

from horncalc.calculus import (
    Calculus,
    calculus_grammar,
    f_op,
    g_op,
    horn_grammar,
    horn_rules,
    is_explicit,
    is_implicit,
    non_horn_grammar,
    production_pairs_of,
)
from horncalc.rewriting import EMPTY
from horncalc.rules import ANY, HornRule, InitialRule, LocalRule, two_vertex_constraint
from strategies import esystems, horn_sets


def test_validation():
    i = InitialRule("i", two_vertex_constraint(EMPTY, "a"))
    with pytest.raises(ValueError, match="unique"):
        Calculus(frozenset("a"), (i, LocalRule("i", ANY, 1)))
    with pytest.raises(ValueError, match="same rule"):
        Calculus(frozenset("a"), (i, InitialRule("j", two_vertex_constraint(EMPTY, "a"))))
    with pytest.raises(ValueError, match="alphabet"):
        Calculus(frozenset("a"), (i, HornRule("h", "b", "a")))
    with pytest.raises(ValueError):
        Calculus(frozenset(), ())


def test_equality_ignores_ids_and_names(g3i_explicit):
    renamed = g3i_explicit.with_rules(
        [HornRule("r2", r.etype, r.rhs) if r.id == "ref" else r for r in g3i_explicit.rules], name="other"
    )
    assert renamed == g3i_explicit and hash(renamed) == hash(g3i_explicit)
    assert g3i_explicit.find(renamed.rule("r2").key()).id == "ref"


def test_g3i_variants(g3i_explicit, g3i_implicit):
    assert len(g3i_explicit.rules) == 6
    assert is_explicit(g3i_explicit) and not is_implicit(g3i_explicit)
    assert is_implicit(g3i_implicit) and not is_explicit(g3i_implicit)
    assert f_op(g3i_explicit, horn_rules(g3i_explicit)) == g3i_implicit
    assert g_op(g3i_implicit, production_pairs_of(g3i_implicit)) == g3i_explicit
    assert calculus_grammar(g3i_explicit) == calculus_grammar(g3i_implicit)
    assert non_horn_grammar(g3i_explicit) == EMPTY


def test_f_op_rejects_foreign_horn_rules(g3i_explicit):
    with pytest.raises(ValueError):
        f_op(g3i_explicit, [HornRule("x", "E", "E E E")])


def _calc(g, hs):
    return Calculus(frozenset("ab"), (InitialRule("i", two_vertex_constraint(g, "a")), *hs))


@given(esystems(2), horn_sets(3))
def test_f_then_g_restores_explicit_calculi(g, hs):
    c = _calc(g, hs)
    top = f_op(c, hs)
    assert not horn_rules(top)
    assert calculus_grammar(top) == calculus_grammar(c)
    back = g_op(top, {h.pair for h in hs})
    if is_explicit(c):
        assert back == c


@given(esystems(2), horn_sets(3))
def test_grammar_is_preserved_by_f(g, hs):
    c = _calc(g, hs)
    for k in range(len(hs) + 1):
        assert calculus_grammar(f_op(c, hs[:k])) == calculus_grammar(c)


@given(esystems(3))
def test_g_then_f_restores_implicit_calculi(g):
    c = _calc(g, [])
    if not is_implicit(c):
        return
    pairs = production_pairs_of(c)
    down = g_op(c, pairs)
    assert is_explicit(down)
    assert f_op(down, horn_rules(down)) == c
    assert horn_grammar(horn_rules(down)) == calculus_grammar(c)

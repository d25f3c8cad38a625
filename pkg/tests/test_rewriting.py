import pytest
from hypothesis import given
from hypothesis import strategies as st

from horncalc.rewriting import (
    EMPTY,
    ESystem,
    Production,
    ProductionPair,
    Sym,
    close_under_converse,
    converse_string,
    derivable_strings,
    derives,
    find_derivation,
    fmt_word,
    grammar_minus,
    grammar_of_pairs,
    grammar_union,
    production,
    production_pairs,
    sym,
    word,
)
from strategies import esystems, syms, words

E = Sym("E")
G3I = close_under_converse(["E -> eps", "E -> E E"])


def test_symbol_parsing():
    assert sym("a") == Sym("a")
    assert sym("inv(a)") == Sym("a", True)
    assert str(Sym("a", True)) == "inv(a)"
    with pytest.raises(ValueError):
        sym("eps")
    with pytest.raises(ValueError):
        sym("a b")


def test_word_round_trip():
    assert word("eps") == ()
    assert word("") == ()
    assert fmt_word(word("a inv(b) c")) == "a inv(b) c"
    assert fmt_word(()) == "eps"


def test_converse_string_reverses_and_bars():
    assert converse_string(word("a inv(b) c")) == word("inv(c) b inv(a)")


def test_production_parsing():
    assert production("a -> c c") == Production(Sym("a"), word("c c"))
    with pytest.raises(ValueError):
        production("a b -> c")
    with pytest.raises(ValueError):
        production("a c")


def test_esystem_requires_converse_closure():
    with pytest.raises(ValueError, match="converse"):
        ESystem([production("a -> b")])
    g = close_under_converse(["a -> b c"])
    assert production("inv(a) -> inv(c) inv(b)") in g


def test_pairs_and_grammar_ops():
    g = close_under_converse(["a -> b", "c -> eps"])
    ps = production_pairs(g)
    assert len(ps) == 2
    assert grammar_of_pairs(ps) == g
    h = close_under_converse(["c -> eps"])
    assert grammar_minus(g, h) == close_under_converse(["a -> b"])
    assert grammar_union(grammar_minus(g, h), h) == g
    assert ProductionPair.of(production("inv(b) -> a")).forward == production("b -> inv(a)")


def test_derives_examples():
    assert derives(G3I, "E", "E E")
    assert derives(G3I, "E", "eps")
    assert derives(G3I, "E", "E E E E")
    assert not derives(G3I, "E", "inv(E)")
    ex = close_under_converse(["a -> c c"])
    assert derives(ex, "a", "c c")
    assert not derives(ex, "a", "c c c c", max_steps=3)
    with pytest.raises(ValueError):
        derives(ex, "a c", "c c c")


def test_find_derivation_replays():
    steps = find_derivation(G3I, word("E"), word("E E E"), 4)
    assert steps is not None
    cur = word("E")
    for pos, prod in steps:
        assert cur[pos] == prod.lhs
        cur = cur[:pos] + prod.rhs + cur[pos + 1:]
    assert cur == word("E E E")


def test_empty_grammar_derives_only_itself():
    assert derivable_strings(EMPTY, (E,), 5) == {(E,)}


@given(esystems(), words, st.integers(0, 3))
def test_converse_of_derivable_is_derivable(g, s, d):
    for t in derivable_strings(g, s, d):
        assert derives(g, converse_string(s), converse_string(t), max_steps=d)


@given(esystems(), syms, st.integers(0, 3))
def test_bounded_derivation_matches_membership(g, x, d):
    for t in derivable_strings(g, (x,), d):
        assert derives(g, (x,), t)


@given(words)
def test_converse_is_involution(s):
    assert converse_string(converse_string(s)) == s

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from horncalc.calculus import Calculus, calculus_grammar, is_explicit, is_implicit
from horncalc.generators import random_horn_set, random_initial
from horncalc.lattice import (
    SpaceConfig,
    bottom_of,
    explicate,
    implicate,
    space_isomorphism,
    top_of,
)


def test_example_upward_space(example_calc):
    sp = implicate(example_calc)
    assert len(sp.members) == 5
    assert sp.hasse() == {(0, 1), (1, 2), (1, 3), (2, 4), (3, 4)}
    assert sp.bottom() == 0 and sp.top() == 4
    assert sp.label(0) == "A"
    assert sp.label(1) == "f(A,{h3})"
    assert sorted(sp.label(i) for i in (2, 3)) == ["f(A,{h1,h3})", "f(A,{h2,h3})"]
    assert sp.label(4) == "f(A,{h1,h2,h3})"
    assert is_implicit(sp.members[sp.top()]) and is_explicit(sp.members[sp.bottom()])


def test_example_downward_space_is_dual(example_calc):
    up = implicate(example_calc)
    top = up.members[up.top()]
    down = explicate(top)
    assert down.label(0) == "B"
    iso = space_isomorphism(up, down)
    assert iso, iso.reason
    assert iso.mapping[up.top()] == down.top() and iso.mapping[up.bottom()] == down.bottom()
    assert bottom_of(top) == example_calc
    assert top_of(example_calc) == top


def test_g3i_spaces(g3i_explicit, g3i_implicit):
    up = implicate(g3i_explicit)
    assert len(up.members) == 3
    assert up.hasse() == {(0, 1), (1, 2)}
    assert up.label(1) == "f(A,{tra})"
    assert up.members[up.top()] == g3i_implicit
    down = explicate(g3i_implicit)
    assert space_isomorphism(up, down)


def test_singleton_spaces(g3i_implicit):
    up = implicate(g3i_implicit)
    assert len(up.members) == 1 and up.hasse() == set()
    down = explicate(bottom_of(g3i_implicit))
    assert len(down.members) == 1


def test_caps_and_budget(example_calc):
    with pytest.raises(ValueError):
        implicate(example_calc, SpaceConfig(horn_cap=2))
    with pytest.raises(TimeoutError):
        implicate(example_calc, SpaceConfig(budget_secs=0.0))


def test_isomorphism_rejects_mismatched_spaces(example_calc, g3i_explicit):
    iso = space_isomorphism(implicate(example_calc), implicate(g3i_explicit))
    assert not iso and iso.reason


def _random_explicit(seed: int) -> Calculus:
    rng = random.Random(seed)
    types = ["a", "b"]
    hs = random_horn_set(rng, types, rng.randint(0, 4))
    return Calculus(frozenset(types), (random_initial(rng, types), *hs))


@given(st.integers(0, 10_000))
@settings(max_examples=40)
def test_spaces_are_dual(seed):
    c = _random_explicit(seed)
    if not is_explicit(c):
        return
    up = implicate(c)
    top = up.members[up.top()]
    assert is_implicit(top)
    # every member generates the same grammar
    assert len({calculus_grammar(m) for m in up.members}) == 1
    down = explicate(top)
    assert space_isomorphism(up, down)
    assert down.members[down.bottom()] == c


@given(st.integers(0, 10_000))
@settings(max_examples=40)
def test_order_is_partial(seed):
    up = implicate(_random_explicit(seed))
    n = len(up.members)
    for a in range(n):
        assert up.leq(a, a) and up.leq(up.bottom(), a) and up.leq(a, up.top())
        for b in range(n):
            if a != b:
                assert not (up.leq(a, b) and up.leq(b, a))

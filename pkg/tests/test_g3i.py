import random

import pytest

from horncalc.calculus import horn_rules, is_explicit, is_implicit
from horncalc.g3i import (
    BOT,
    IMP_L,
    IMP_R,
    ID,
    Imp,
    Or,
    Sequent,
    build_g3i,
    label_weight,
    parse_formula,
    seq,
    var,
)
from horncalc.generators import random_g3i_goal
from horncalc.gsequent import GSequent
from horncalc.proofs import SearchConfig, find_proof, is_polytree_proof, validate

p, q, r = var("p"), var("q"), var("r")


def test_formula_parsing():
    assert parse_formula("p -> q -> r") == Imp(p, Imp(q, r))
    assert parse_formula("(p -> q) -> r") == Imp(Imp(p, q), r)
    assert parse_formula("p | q -> r") == Imp(Or(p, q), r)
    assert parse_formula("bot") == BOT
    with pytest.raises(ValueError):
        parse_formula("p ->")
    with pytest.raises(ValueError):
        parse_formula("(p")


def test_sequents_are_multisets():
    assert seq("q, p => r") == seq("p, q => r")
    assert seq("p, p => ") != seq("p => ")
    assert seq("p -> q, r => p") == Sequent((r, Imp(p, q)), (p,))
    assert str(seq("=> p")) == "=> p"
    assert label_weight(seq("p -> q => r")) == 4
    with pytest.raises(ValueError):
        seq("p, q")


def test_constraints():
    assert ID.check((seq("p, q => "), seq(" => p")), None)
    assert not ID.check((seq("p -> q => "), seq(" => p -> q")), None)
    s = seq("r => p -> q")
    assert IMP_R.check((seq("r => "), seq("p => q"), s), None)
    assert not IMP_R.check((seq("r => "), seq("q => p"), s), None)
    s, t = seq("p -> q => "), seq("=> r")
    assert IMP_L.check((s, seq("=> r, p"), s, seq("q => r"), s, t), None)


def test_variants(g3i_explicit, g3i_implicit):
    assert build_g3i(True) == g3i_explicit and build_g3i(False) == g3i_implicit
    assert {h.id for h in horn_rules(g3i_explicit)} == {"ref", "tra"}
    assert horn_rules(g3i_implicit) == []
    assert is_explicit(g3i_explicit) and is_implicit(g3i_implicit)
    assert not is_implicit(g3i_explicit) and not is_explicit(g3i_implicit)


@pytest.mark.parametrize("explicit", [True, False])
def test_identity_is_provable(explicit):
    c = build_g3i(explicit)
    pr = find_proof(GSequent({"w": seq("=> p -> p")}), c)
    assert pr is not None and validate(pr, c)


def test_chain_is_provable(g3i_implicit):
    goal = GSequent({"w": seq("p -> q, q -> r => p -> r")})
    pr = find_proof(goal, g3i_implicit, SearchConfig(max_depth=7))
    assert pr is not None and validate(pr, g3i_implicit)


def test_excluded_middle_unprovable(g3i_implicit):
    # the fragment has no right disjunction rule
    goal = GSequent({"w": seq("=> ((p -> bot) -> bot) -> p")})
    assert find_proof(goal, g3i_implicit, SearchConfig(max_depth=5)) is None


def test_implicit_proofs_are_polytrees(g3i_implicit):
    rng = random.Random(5)
    found = 0
    for _ in range(40):
        pr = find_proof(random_g3i_goal(rng), g3i_implicit, SearchConfig(max_depth=6))
        if pr is not None:
            found += 1
            assert is_polytree_proof(pr)
    assert found >= 5

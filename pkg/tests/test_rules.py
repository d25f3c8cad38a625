import pytest
from hypothesis import given

from horncalc.gsequent import Atom, GSequent
from horncalc.rewriting import EMPTY, Sym, close_under_converse
from horncalc.rules import (
    ANY,
    PW,
    ConstraintEdge,
    ExpansionRule,
    HornRule,
    InitialRule,
    Inst,
    LocalRule,
    ReachabilityRule,
    SequentConstraint,
    StructuralConstraint,
    absorb_rule,
    apply_bottom_up,
    check_instance,
    constraint_satisfied,
    explain_instance,
    fracture_rule,
    horn_from_pair,
    is_transmission,
    lookup,
    pw_inst,
    two_vertex_constraint,
)
from strategies import esystems, horns

G3I = close_under_converse(["E -> eps", "E -> E E"])


def test_inst_is_canonical():
    a = Inst.of(w="x", u="y")
    assert a == Inst.of({"u": "y"}, w="x")
    assert a["w"] == "x" and a.get("z") is None
    with pytest.raises(KeyError):
        a["z"]


def test_relation_registry():
    assert lookup("any") is ANY
    assert lookup("g3i.id").name == "g3i.id"
    with pytest.raises(KeyError):
        lookup("nosuch.rel")
    assert SequentConstraint("x", lambda l, d: True) == SequentConstraint("x", lambda l, d: False)


def test_structural_constraint_must_be_tree():
    with pytest.raises(ValueError):
        StructuralConstraint(("a", "b"))
    with pytest.raises(ValueError):
        StructuralConstraint(("a", "a"))
    e = ConstraintEdge("a", "b", EMPTY, "E")
    with pytest.raises(ValueError):
        StructuralConstraint(("a",), (e,))


def test_constraint_key_ignores_vertex_names():
    c1 = StructuralConstraint(("w", "u"), (ConstraintEdge("w", "u", G3I, "E"),))
    c2 = StructuralConstraint(("x", "y"), (ConstraintEdge("x", "y", G3I, "E"),))
    c3 = StructuralConstraint(("x", "y"), (ConstraintEdge("y", "x", G3I, "E"),))
    assert c1.key() == c2.key() == c3.key()


def test_constraint_satisfied_needs_total_embedding():
    g = GSequent({"a": 0, "b": 1}, [("E", "a", "b")])
    c = two_vertex_constraint(EMPTY, "E")
    assert constraint_satisfied(g, c, {"w": "a", "u": "b"})
    assert not constraint_satisfied(g, c, {"w": "b", "u": "a"})
    with pytest.raises(ValueError):
        constraint_satisfied(g, c, {"w": "a"})


def test_initial_rule_instances():
    rule = InitialRule("i", two_vertex_constraint(EMPTY, "E"))
    g = GSequent({"a": 0, "b": 1}, [("E", "a", "b")])
    assert check_instance(rule, [], g, Inst.of(w="a", u="b"))
    assert explain_instance(rule, [], g, Inst.of(w="b", u="a")) == "structural constraint not satisfied"
    assert "premises" in explain_instance(rule, [g], g, Inst.of(w="a", u="b"))
    assert "role" in explain_instance(rule, [], g, Inst.of(w="a"))


def test_horn_rule_instances():
    tra = HornRule("tra", "E", "E E")
    concl = GSequent({"a": 0, "b": 1, "c": 2}, [("E", "a", "b"), ("E", "b", "c")])
    prem = concl.with_edges(("E", "a", "c"))
    assert check_instance(tra, [prem], concl, Inst.of(w="a", u="c"))
    assert not check_instance(tra, [prem], prem, Inst.of(w="a", u="c"))
    back = HornRule("hb", "b", "a", forward=False)
    g = GSequent({"x": 0, "y": 1}, [("a", "x", "y")])
    assert back.atom("x", "y") == Atom("b", "y", "x")
    assert check_instance(back, [g.with_edges(("b", "y", "x"))], g, Inst.of(w="x", u="y"))


def test_backward_and_forward_horn_keys_coincide():
    back = HornRule("h3", "b", "a", forward=False)
    fwd = HornRule("hf", "b", "inv(a)", forward=True)
    assert back.key() == fwd.key()
    assert horn_from_pair(back.pair).key() == back.key()
    assert horn_from_pair(back.pair).id == "h[b->inv(a)]"


def test_local_and_expansion_instances():
    loc = LocalRule("l", ANY, 2)
    g = GSequent({"a": "A", "b": "B"}, [("E", "a", "b")])
    p1, p2 = g.relabel({"a": "A1"}), g.relabel({"a": "A2"})
    assert check_instance(loc, [p1, p2], g, Inst.of(w="a"))
    assert explain_instance(loc, [p1, g.relabel({"b": "X"})], g, Inst.of(w="a")) == "premise changes an inactive label"
    exp = ExpansionRule("e", ANY, "E")
    top = GSequent({"a": "A", "b": "B", "v1": "N"}, [("E", "a", "b"), ("E", "a", "v1")])
    assert check_instance(exp, [top], g, Inst.of(w="a", u="v1"))
    assert "fresh" in explain_instance(exp, [top], g, Inst.of(w="a", u="b"))


def test_reachability_instances_and_coincidence():
    r = ReachabilityRule("r", ((G3I, "E"),))
    g = GSequent({"a": "A", "b": "B", "c": "C"}, [("E", "a", "b"), ("E", "b", "c")])
    assert check_instance(r, [g.relabel({"a": "X", "c": "Y"})], g, Inst.of(w="a", u="c"))
    assert check_instance(r, [g.relabel({"a": "X"})], g, Inst.of(w="a", u="a"))
    strict = ReachabilityRule("r", ((G3I, "E"),), allow_coincident=False)
    assert explain_instance(strict, [g], g, Inst.of(w="a", u="a")) == "active vertices coincide"
    t = ReachabilityRule("t", ((EMPTY, "E"),))
    assert is_transmission(t) and not is_transmission(r)
    assert not check_instance(t, [g], g, Inst.of(w="a", u="c"))


def test_path_weakening():
    g = GSequent({"a": 0, "b": 1})
    atom = Atom("E", "a", "b")
    assert check_instance(PW, [g], g.with_edges(atom), pw_inst(atom))
    assert not check_instance(PW, [g.with_edges(atom)], g.with_edges(atom), pw_inst(atom))


def test_apply_bottom_up_matches_checks():
    tra = HornRule("tra", "E", "E E")
    g = GSequent({"a": 0, "b": 1, "c": 2}, [("E", "a", "b"), ("E", "b", "c")])
    apps = apply_bottom_up(tra, g)
    assert [inst for _, inst in apps] == [Inst.of(w="a", u="c")]
    for prems, inst in apps:
        assert check_instance(tra, list(prems), g, inst)


@given(esystems(), esystems())
def test_absorb_fracture_touch_only_constrained_rules(g1, g2):
    i = InitialRule("i", two_vertex_constraint(g1, "a"))
    assert absorb_rule(i, g2).grammar() == g1 | g2
    assert fracture_rule(i, g2).grammar() == g1 - g2
    loc = LocalRule("l", ANY, 1)
    assert absorb_rule(loc, g2) is loc and fracture_rule(loc, g2) is loc


@given(horns)
def test_horn_pair_round_trip(h):
    assert horn_from_pair(h.pair).key() == h.key()
    assert h.grammar() == h.pair.grammar()
    assert Sym(h.etype) in {h.pair.forward.lhs, h.pair.forward.lhs.conv()}


def test_fracture_then_absorb_needs_the_grammar_on_every_edge():
    # the union of the edge grammars contains g, but the second edge does not
    g = close_under_converse(["a -> b"])
    c = StructuralConstraint(
        ("w", "u", "v"), (ConstraintEdge("w", "u", g, "a"), ConstraintEdge("u", "v", EMPTY, "a"))
    )
    rho = InitialRule("i", c, ANY)
    assert g <= rho.grammar()
    assert absorb_rule(fracture_rule(rho, g), g) != rho
    uniform = InitialRule("i", c.map_grammars(lambda x: x | g), ANY)
    assert absorb_rule(fracture_rule(uniform, g), g) == uniform

import pytest
from hypothesis import given

from horncalc.gsequent import Atom, GSequent, fresh_vertex, gsequent_size, is_polytree, isomorphic, path_holds
from strategies import gsequents


def chain(n: int, etype: str = "E") -> GSequent:
    vs = [f"v{i}" for i in range(n)]
    return GSequent({v: v for v in vs}, [(etype, vs[i], vs[i + 1]) for i in range(n - 1)])


def test_construction_and_access():
    g = GSequent({"w": "A", "u": "B"}, [("E", "w", "u")])
    assert g.vertices == {"w", "u"}
    assert g.edges == {Atom("E", "w", "u")}
    assert g.label("u") == "B"
    assert gsequent_size(g) == 3
    with pytest.raises(ValueError):
        GSequent({"w": "A"}, [("E", "w", "x")])


def test_equality_includes_labels():
    a = GSequent({"w": "A"})
    assert a == GSequent({"w": "A"})
    assert a != GSequent({"w": "B"})
    assert hash(a) == hash(GSequent({"w": "A"}))


def test_edit_operations_are_pure():
    g = chain(3)
    h = g.with_edges(("E", "v0", "v2"))
    assert len(g.edges) == 2 and len(h.edges) == 3
    assert h.without_edges(("E", "v0", "v2")) == g
    assert g.relabel({"v0": "X"}).label("v0") == "X"
    assert g.label("v0") == "v0"


def test_path_holds_uses_converses():
    g = chain(3)
    assert path_holds(g, "v0", "v2", "E E")
    assert path_holds(g, "v2", "v0", "inv(E) inv(E)")
    assert not path_holds(g, "v0", "v2", "E")
    assert path_holds(g, "v1", "v1", "eps")
    with pytest.raises(ValueError):
        path_holds(g, "v0", "zz", "E")
    with pytest.raises(ValueError):
        path_holds(g, "v0", "v1", "F", alphabet={"E"})


def test_polytree_cases():
    assert is_polytree(GSequent({"w": 1}))
    assert not is_polytree(GSequent({}))
    assert is_polytree(chain(4))
    assert not is_polytree(chain(3).with_edges(("E", "v0", "v2")))
    assert not is_polytree(GSequent({"w": 1}, [("E", "w", "w")]))
    # parallel atoms of different types close an undirected cycle
    assert not is_polytree(GSequent({"w": 1, "u": 2}, [("a", "w", "u"), ("b", "u", "w")]))
    assert not is_polytree(GSequent({"w": 1, "u": 2}))


def test_fresh_vertex_is_deterministic():
    assert fresh_vertex({"w"}) == "v1"
    assert fresh_vertex({"v1", "v2"}) == "v3"


def test_isomorphic_up_to_renaming():
    g = GSequent({"a": 1, "b": 2}, [("E", "a", "b")])
    h = GSequent({"x": 1, "y": 2}, [("E", "x", "y")])
    assert isomorphic(g, h)
    assert not isomorphic(g, GSequent({"x": 1, "y": 2}, [("E", "y", "x")]))


@given(gsequents())
def test_polytree_iff_connected_tree(g):
    import networkx as nx

    m = nx.MultiGraph()
    m.add_nodes_from(g.vertices)
    m.add_edges_from((a.src, a.dst) for a in g.edges)
    expected = nx.is_tree(m) if len(g.vertices) > 0 else False
    assert is_polytree(g) == expected


@given(gsequents())
def test_relation_of_concatenation_composes(g):
    from horncalc.rewriting import word

    ab = g.relation(word("a b"))
    a, b = g.relation(word("a")), g.relation(word("b"))
    assert ab == {(x, z) for x, y in a for y2, z in b if y == y2}

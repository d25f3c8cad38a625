"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st

from horncalc.gsequent import GSequent
from horncalc.rewriting import ESystem, Production, ProductionPair, Sym
from horncalc.rules import HornRule

TYPES = ["a", "b"]

syms = st.builds(Sym, st.sampled_from(TYPES), st.booleans())
words = st.lists(syms, max_size=3).map(tuple)
pairs = st.builds(lambda x, s: ProductionPair.of(Production(x, s)), syms, words)


def esystems(max_pairs: int = 3):
    return st.frozensets(pairs, max_size=max_pairs).map(
        lambda ps: ESystem([q for p in ps for q in (p.forward, p.converse)])
    )


horns = st.builds(
    lambda t, rhs, fw: HornRule("h", t, rhs, fw),
    st.sampled_from(TYPES),
    st.lists(syms, max_size=2).map(tuple),
    st.booleans(),
)


def horn_sets(max_size: int = 3):
    def name(hs):
        out, keys = [], set()
        for h in hs:
            if h.key() not in keys:
                keys.add(h.key())
                out.append(HornRule(f"h{len(out) + 1}", h.etype, h.rhs, h.forward))
        return out

    return st.lists(horns, max_size=max_size).map(name)


@st.composite
def gsequents(draw, max_vertices: int = 4, max_edges: int = 6, types=TYPES):
    n = draw(st.integers(1, max_vertices))
    vs = [f"x{i}" for i in range(n)]
    edges = draw(
        st.lists(st.tuples(st.sampled_from(types), st.sampled_from(vs), st.sampled_from(vs)), max_size=max_edges)
    )
    return GSequent({v: v for v in vs}, edges)

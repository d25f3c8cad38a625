"""Regenerate the bundled fixture files.

The simulation fixtures come in pairs: ``*.proof`` is the derivation in the
explicit calculus and ``*.expected.proof`` is the simulating derivation,
written out by hand here rather than computed by the transformation code.
"""

from __future__ import annotations

from pathlib import Path

from horncalc.calculus import Calculus
from horncalc.formats import print_calculus, print_proof
from horncalc.g3i import build_g3i, seq
from horncalc.gsequent import GSequent
from horncalc.proofs import ProofStep, SearchConfig, find_proof, hyp
from horncalc.rewriting import EMPTY
from horncalc.rules import ANY, ConstraintEdge, HornRule, InitialRule, Inst, StructuralConstraint

OUT = Path(__file__).resolve().parents[1] / "src" / "horncalc" / "fixtures"


def example_calculus() -> Calculus:
    init = InitialRule(
        "i", StructuralConstraint(("w", "u"), (ConstraintEdge("w", "u", EMPTY, "b"),)), ANY
    )
    return Calculus(
        frozenset("abc"),
        (
            init,
            HornRule("h1", "a", "c c", True),
            HornRule("h2", "a", "eps", True),
            HornRule("h3", "b", "a", False),
        ),
        "example-explicit",
    )


def id_ref():
    # R, wEw |- S, w:(X, p => p, Y)  by id, then ref removes the loop
    base = GSequent({"w": seq("q, p => p, r"), "v": seq("=> s")}, [("E", "w", "v")])
    leaf = ProofStep(base.with_edges(("E", "w", "w")), "id", Inst.of(w="w", u="w"))
    before = ProofStep(base, "ref", Inst.of(w="w", u="w"), (leaf,))
    after = ProofStep(base, "id", Inst.of(w="w", u="w"))
    return before, after


def id_tra():
    labels = {"w": seq("q, p => r"), "u": seq("=> s"), "v": seq("t => p, r")}
    base = GSequent(labels, [("E", "w", "u"), ("E", "u", "v")])
    leaf = ProofStep(base.with_edges(("E", "w", "v")), "id", Inst.of(w="w", u="v"))
    before = ProofStep(base, "tra", Inst.of(w="w", u="v"), (leaf,))
    after = ProofStep(base, "id", Inst.of(w="w", u="v"))
    return before, after


def impl_ref():
    # G1, G2 stay open; impL acts on w against itself through the loop wEw
    other = {"v": seq("=> s")}
    rel = [("E", "w", "v")]
    concl = GSequent({"w": seq("q, p -> r => t"), **other}, rel)
    g1 = GSequent({"w": seq("q, p -> r => p, t"), **other}, rel)
    g2 = GSequent({"w": seq("q, p -> r, r => t"), **other}, rel)
    loop = ("E", "w", "w")
    inst = Inst.of(w="w", u="w")
    mid = ProofStep(concl.with_edges(loop), "impL", inst, (hyp(g1.with_edges(loop)), hyp(g2.with_edges(loop))))
    before = ProofStep(concl, "ref", inst, (mid,))
    d1 = ProofStep(g1, "ref", inst, (hyp(g1.with_edges(loop)),))
    d2 = ProofStep(g2, "ref", inst, (hyp(g2.with_edges(loop)),))
    after = ProofStep(concl, "impL", inst, (d1, d2))
    return before, after


def main() -> None:
    OUT.mkdir(exist_ok=True)
    ex, im = build_g3i(True), build_g3i(False)
    (OUT / "g3i_explicit.calc").write_text(print_calculus(ex))
    (OUT / "g3i_implicit.calc").write_text(print_calculus(im))
    (OUT / "four_rule.calc").write_text(print_calculus(example_calculus()))
    for name, fn in (("sim_id_ref", id_ref), ("sim_id_tra", id_tra), ("sim_impl_ref", impl_ref)):
        before, after = fn()
        (OUT / f"{name}.proof").write_text(print_proof(before, "g3i"))
        (OUT / f"{name}.expected.proof").write_text(print_proof(after, "g3i"))
    for name, text in (("g3i_identity", "=> p -> p"), ("g3i_chain", "p -> q, q -> r => p -> r")):
        goal = GSequent({"w": seq(text)})
        p = find_proof(goal, ex, SearchConfig(max_depth=7))
        assert p is not None, text
        (OUT / f"{name}.proof").write_text(print_proof(p, "g3i"))


if __name__ == "__main__":
    main()

"""Random objects for property tests and experiments.

Everything takes an explicit :class:`random.Random` so runs are reproducible
from a seed.  Proof generators return valid proofs (checked before
returning) or ``None`` when a sampled attempt dead-ends.
"""

from __future__ import annotations

import itertools
import random
import time
from typing import Iterator

from .calculus import Calculus, horn_rules
from .dependency import build_dg_horn, enumerate_fracturable
from .g3i import Sequent, parse_formula, seq
from .gsequent import Atom, GSequent, fresh_vertex
from .proofs import ProofStep, hyp, validate
from .rewriting import ESystem, Production, ProductionPair, Sym
from .rules import (
    ANY,
    PW,
    ConstraintEdge,
    ExpansionRule,
    HornRule,
    InitialRule,
    Inst,
    LocalRule,
    NotEnumerable,
    ReachabilityRule,
    StructuralConstraint,
    absorb_rule,
    apply_bottom_up,
    pw_inst,
)

# ---------------------------------------------------------------------------
# grammars and g-sequents


def random_symbol(rng: random.Random, types: list[str]) -> Sym:
    return Sym(rng.choice(types), rng.random() < 0.4)


def random_pair(rng: random.Random, types: list[str], max_rhs: int = 3) -> ProductionPair:
    lhs = Sym(rng.choice(types), rng.random() < 0.3)
    rhs = tuple(random_symbol(rng, types) for _ in range(rng.randint(0, max_rhs)))
    return ProductionPair.of(Production(lhs, rhs))


def random_esystem(rng: random.Random, types: list[str], max_pairs: int = 3, max_rhs: int = 3) -> ESystem:
    pairs = {random_pair(rng, types, max_rhs) for _ in range(rng.randint(0, max_pairs))}
    return ESystem([q for p in pairs for q in (p.forward, p.converse)])


def random_gsequent(
    rng: random.Random, n_vertices: int, types: list[str], n_edges: int, labels: dict | None = None
) -> GSequent:
    vs = [f"x{i}" for i in range(n_vertices)]
    edges = {
        (rng.choice(types), rng.choice(vs), rng.choice(vs)) for _ in range(n_edges)
    }
    lab = {v: (labels or {}).get(v, v) for v in vs}
    return GSequent(lab, edges)


def random_horn(rng: random.Random, types: list[str], rid: str, max_rhs: int = 2) -> HornRule:
    rhs = tuple(random_symbol(rng, types) for _ in range(rng.randint(0, max_rhs)))
    return HornRule(rid, rng.choice(types), rhs, rng.random() < 0.6)


def random_horn_set(rng: random.Random, types: list[str], n: int, max_rhs: int = 2) -> list[HornRule]:
    out: list[HornRule] = []
    keys = set()
    for i in range(n * 4):
        if len(out) == n:
            break
        h = random_horn(rng, types, f"h{len(out) + 1}", max_rhs)
        if h.key() not in keys:
            keys.add(h.key())
            out.append(h)
    return out


def random_initial(rng: random.Random, types: list[str], rid: str = "i") -> InitialRule:
    g = random_esystem(rng, types, max_pairs=2)
    return InitialRule(rid, StructuralConstraint(("w", "u"), (ConstraintEdge("w", "u", g, random_symbol(rng, types)),)))


def random_reachability(rng: random.Random, types: list[str], rid: str = "r", premises: int = 2) -> ReachabilityRule:
    cons = tuple((random_esystem(rng, types, max_pairs=2), random_symbol(rng, types)) for _ in range(premises))
    return ReachabilityRule(rid, cons, ANY)


# ---------------------------------------------------------------------------
# G3I goals and randomized proof search

_TEMPLATES = [
    "=> A -> A",
    "A => B -> A",
    "=> A -> (B -> A)",
    "A -> B, A => B",
    "A -> B, B -> C, A => C",
    "=> (A -> B) -> (A -> B)",
    "A | B, A -> C, B -> C => C",
    "A, A -> B, B -> C => C",
    "A -> B, B -> C => A -> C",
    "A | B => B -> B",
    "(A -> B) -> A, A => A",
    "A => (A -> B) -> B",
]


def random_g3i_goal(rng: random.Random) -> GSequent:
    names = ["p", "q", "r", "s"]
    rng.shuffle(names)
    text = rng.choice(_TEMPLATES)
    for ph, v in zip("ABC", names):
        text = text.replace(ph, v)
    s = seq(text)
    extra_ant = tuple(parse_formula(rng.choice(["t", "s | t", "u"])) for _ in range(rng.randint(0, 1)))
    extra_suc = tuple(parse_formula(rng.choice(["t", "u"])) for _ in range(rng.randint(0, 1)))
    return GSequent({"w": Sequent(s.ant + extra_ant, s.suc + extra_suc)})


def random_search(
    goal: GSequent,
    c: Calculus,
    rng: random.Random,
    max_depth: int = 7,
    max_nodes: int = 20000,
    budget_secs: float = 2.0,
) -> ProofStep | None:
    """Depth-first proof search with shuffled rule and candidate order."""
    deadline = time.monotonic() + budget_secs
    nodes = [0]

    def prove(g: GSequent, depth: int) -> Iterator[ProofStep]:
        nodes[0] += 1
        if depth == 0 or nodes[0] > max_nodes or time.monotonic() > deadline:
            return
        rules = list(c.rules)
        rng.shuffle(rules)
        # close leaves early: initial rules first
        rules.sort(key=lambda r: not isinstance(r, InitialRule))
        for rule in rules:
            try:
                cands = apply_bottom_up(rule, g)
            except NotEnumerable:
                continue
            rng.shuffle(cands)
            for prems, inst in cands:
                yield from combine(rule.id, g, inst, prems, depth)

    def combine(rid, g, inst, prems, depth) -> Iterator[ProofStep]:
        def rec(i: int, acc: list[ProofStep]) -> Iterator[ProofStep]:
            if i == len(prems):
                yield ProofStep(g, rid, inst, tuple(acc))
                return
            for sub in prove(prems[i], depth - 1):
                yield from rec(i + 1, acc + [sub])
                return  # one proof per premise is enough

        yield from rec(0, [])

    for d in range(1, max_depth + 1):
        for p in prove(goal, d):
            return p
    return None


def random_g3i_proof(rng: random.Random, c: Calculus, max_depth: int = 7, tries: int = 20) -> ProofStep | None:
    for _ in range(tries):
        p = random_search(random_g3i_goal(rng), c, rng, max_depth)
        if p is not None:
            assert validate(p, c)
            return p
    return None


# ---------------------------------------------------------------------------
# synthetic proofs: one initial step followed by Horn steps


def horn_removals(g: GSequent, hs: list[HornRule]) -> list[tuple[HornRule, str, str, Atom]]:
    """Horn steps that could conclude ``g`` minus some atom from premise ``g``."""
    out = []
    for h in hs:
        for a in sorted(g.edges):
            if a.etype != h.etype:
                continue
            w, u = (a.src, a.dst) if h.forward else (a.dst, a.src)
            if u in g.without_edges(a).reach_from(w, h.rhs):
                out.append((h, w, u, a))
    return out


def synthetic_proof(
    rng: random.Random, c: Calculus, n_vertices: int = 4, n_edges: int = 6, max_steps: int = 12
) -> ProofStep | None:
    """An initial step on a random g-sequent, then random Horn removals below it."""
    inits = [r for r in c.rules if isinstance(r, InitialRule)]
    hs = horn_rules(c)
    types = sorted(c.alphabet)
    g = random_gsequent(rng, n_vertices, types, n_edges)
    init = rng.choice(inits)
    apps = apply_bottom_up(init, g)
    if not apps:
        # plant the constraint's simplest witness: an edge of the start type
        e = init.constraint.edges[0]
        x, y = rng.sample(sorted(g.vertices), 2)
        a = (e.start.name, y, x) if e.start.inv else (e.start.name, x, y)
        g = g.with_edges(a)
        apps = apply_bottom_up(init, g)
        if not apps:
            return None
    _, inst = rng.choice(apps)
    cur = ProofStep(g, init.id, inst)
    for _ in range(rng.randint(0, max_steps)):
        opts = horn_removals(cur.conclusion, hs)
        if not opts:
            break
        h, w, u, a = rng.choice(opts)
        cur = ProofStep(cur.conclusion.without_edges(a), h.id, Inst.of(w=w, u=u), (cur,))
    assert validate(cur, c)
    return cur


# ---------------------------------------------------------------------------
# path weakening injection


def inject_pw(rng: random.Random, p: ProofStep, tries: int = 20) -> ProofStep | None:
    """Insert a pw step somewhere in ``p``, adding its atom to every g-sequent below.

    Sibling branches of multi-premise steps below the insertion point get a
    pw step of their own so premises keep sharing one graph.
    """
    positions = list(p.positions())
    for _ in range(tries):
        path, node = rng.choice(positions)
        ancestors = [p.at(path[:k]) for k in range(len(path))]
        common = set(node.conclusion.vertices)
        for s in ancestors:
            common &= s.conclusion.vertices
        etypes = sorted({a.etype for s in p.walk() for a in s.conclusion.edges} or {"E"})
        atom = Atom(rng.choice(etypes), rng.choice(sorted(common)), rng.choice(sorted(common)))
        if any(atom in s.conclusion.edges for s in ancestors + [node]):
            continue
        new = _weaken(node, atom)
        return _add_below(p, path, new, atom)
    return None


def _weaken(node: ProofStep, atom: Atom) -> ProofStep:
    if atom in node.conclusion.edges:
        return node
    return ProofStep(node.conclusion.with_edges(atom), PW, pw_inst(atom), (node,))


def _add_below(p: ProofStep, path: tuple[int, ...], new: ProofStep, atom: Atom) -> ProofStep:
    if not path:
        return new
    i = path[0]
    prems = [_weaken(q, atom) for q in p.premises]
    prems[i] = _add_below(p.premises[i], path[1:], new, atom)
    return ProofStep(p.conclusion.with_edges(atom), p.rule_id, p.inst, tuple(prems))


# ---------------------------------------------------------------------------
# two-step windows


def _labels(rng: random.Random, g: GSequent, vs) -> GSequent:
    return g.relabel({v: f"{v}'{rng.randint(0, 99)}" for v in vs})


def _pick_horn_app(rng: random.Random, g: GSequent, hs: list[HornRule]):
    apps = []
    for h in hs:
        for prems, inst in apply_bottom_up(h, g):
            apps.append((h, prems[0], inst))
    return rng.choice(apps) if apps else None


def local_window(rng: random.Random, types=("a", "b")) -> tuple[ProofStep, Calculus] | None:
    """Horn step below a local step with open premises."""
    types = list(types)
    hs = random_horn_set(rng, types, rng.randint(1, 3))
    n = rng.randint(1, 3)
    loc = LocalRule("l", ANY, n)
    c = Calculus(frozenset(types), (loc, *hs))
    g = random_gsequent(rng, rng.randint(1, 4), types, rng.randint(0, 5))
    pick = _pick_horn_app(rng, g, hs)
    if pick is None:
        return None
    h, prem, inst = pick
    x = rng.choice(sorted(prem.vertices))
    upper = ProofStep(prem, loc.id, Inst.of(w=x), tuple(hyp(_labels(rng, prem, [x])) for _ in range(n)))
    return ProofStep(g, h.id, inst, (upper,)), c


def expansion_window(rng: random.Random, types=("a", "b")) -> tuple[ProofStep, Calculus] | None:
    """Horn step below an expansion step."""
    types = list(types)
    hs = random_horn_set(rng, types, rng.randint(1, 3))
    e = ExpansionRule("e", ANY, rng.choice(types), rng.random() < 0.5)
    c = Calculus(frozenset(types), (e, *hs))
    g = random_gsequent(rng, rng.randint(1, 4), types, rng.randint(0, 5))
    pick = _pick_horn_app(rng, g, hs)
    if pick is None:
        return None
    h, prem, inst = pick
    x = rng.choice(sorted(prem.vertices))
    y = fresh_vertex(prem.vertices)
    labels = prem.labels
    labels[x] = f"{x}'{rng.randint(0, 99)}"
    labels[y] = f"{y}'{rng.randint(0, 99)}"
    top = GSequent(labels, prem.edges | {e.atom(x, y)})
    upper = ProofStep(prem, e.id, Inst.of(w=x, u=y), (hyp(top),))
    return ProofStep(g, h.id, inst, (upper,)), c


def reach_window(rng: random.Random, types=("a", "b")) -> tuple[ProofStep, Calculus] | None:
    """Horn step below an application of a reachability rule that absorbs the Horn grammar."""
    types = list(types)
    hs = random_horn_set(rng, types, rng.randint(1, 3))
    r = random_reachability(rng, types, "r", rng.randint(1, 2))
    hg = ESystem([q for h in hs for q in (h.pair.forward, h.pair.converse)])
    r = absorb_rule(r, hg)
    c = Calculus(frozenset(types), (r, *hs))
    g = random_gsequent(rng, rng.randint(1, 4), types, rng.randint(1, 6))
    pick = _pick_horn_app(rng, g, hs)
    if pick is None:
        return None
    h, prem, inst = pick
    vs = sorted(prem.vertices)
    pairs = [
        (w, u)
        for w in vs
        for u in vs
        if all((w, u) in _rel(prem, gr, a) for gr, a in r.constraints)
    ]
    if not pairs:
        return None
    w, u = rng.choice(pairs)
    prems = tuple(hyp(_labels(rng, prem, {w, u})) for _ in range(r.premises))
    upper = ProofStep(prem, r.id, Inst.of(w=w, u=u), prems)
    return ProofStep(g, h.id, inst, (upper,)), c


def _rel(g: GSequent, grammar: ESystem, start: Sym):
    from .reach import reach_relation

    return reach_relation(g, grammar, start)


def horn_horn_window(
    rng: random.Random, types=("a", "b", "c")
) -> tuple[ProofStep, Calculus, list[HornRule]] | None:
    """A step of a rule outside a fracturable set below a step of a rule inside it."""
    types = list(types)
    hs = random_horn_set(rng, types, rng.randint(2, 4))
    dg = build_dg_horn(hs)
    fr = [s for s in enumerate_fracturable(dg) if s and len(s) < len(hs)]
    if not fr:
        return None
    inner = sorted(rng.choice(fr), key=lambda h: h.id)
    outer = [h for h in hs if h not in inner]
    c = Calculus(frozenset(types), tuple(hs))
    g = random_gsequent(rng, rng.randint(1, 4), types, rng.randint(1, 6))
    low = _pick_horn_app(rng, g, outer)
    if low is None:
        return None
    h, mid, inst = low
    up = _pick_horn_app(rng, mid, inner)
    if up is None:
        return None
    s, top, inst2 = up
    upper = ProofStep(mid, s.id, inst2, (hyp(top),))
    return ProofStep(g, h.id, inst, (upper,)), c, inner


def windows(kind: str, rng: random.Random, count: int) -> Iterator:
    """Yield ``count`` windows of one kind, skipping dead-end samples."""
    fn = {"local": local_window, "expansion": expansion_window, "reach": reach_window, "horn": horn_horn_window}[kind]
    made = 0
    for _ in itertools.count():
        w = fn(rng)
        if w is None:
            continue
        yield w
        made += 1
        if made == count:
            return


__all__ = [
    "horn_removals",
    "inject_pw",
    "random_esystem",
    "random_g3i_goal",
    "random_g3i_proof",
    "random_gsequent",
    "random_horn",
    "random_horn_set",
    "random_initial",
    "random_pair",
    "random_reachability",
    "random_search",
    "synthetic_proof",
    "windows",
]

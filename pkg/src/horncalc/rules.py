"""Inference-rule schemas over g-sequents.

Five kinds of rule are supported: initial rules (no premises, a structural
constraint tree plus a sequent constraint), local rules (rewrite one vertex
label), expansion rules (add one fresh vertex and one connecting edge), Horn
rules (remove, top-down, an edge justified by a path) and reachability rules
(relate two vertices joined by grammar-constrained paths).

An application of a rule is recorded by an :class:`Inst` that names the
active vertices.  ``check_instance`` re-verifies an application exactly;
``apply_bottom_up`` enumerates the applications with a given conclusion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, ClassVar, Iterable, Iterator, Mapping

from .gsequent import Atom, GSequent, Label, fresh_vertex
from .reach import reach_relation
from .rewriting import (
    EMPTY,
    ESystem,
    Production,
    ProductionPair,
    Sym,
    Word,
    fmt_word,
    sym,
    word,
)

Delta = frozenset[tuple[str, Label]]


class NotEnumerable(Exception):
    """A rule cannot be applied bottom-up because its relation has no synthesizer."""


# ---------------------------------------------------------------------------
# instantiation records


@dataclass(frozen=True)
class Inst:
    """Binding of a rule's role names (``w``, ``u``, constraint vertices) to vertices."""

    binding: tuple[tuple[str, str], ...] = ()

    @staticmethod
    def of(mapping: Mapping[str, str] | None = None, **kw: str) -> Inst:
        d = dict(mapping or {})
        d.update(kw)
        return Inst(tuple(sorted(d.items())))

    def __getitem__(self, role: str) -> str:
        for k, v in self.binding:
            if k == role:
                return v
        raise KeyError(role)

    def get(self, role: str, default: str | None = None) -> str | None:
        for k, v in self.binding:
            if k == role:
                return v
        return default

    def as_dict(self) -> dict[str, str]:
        return dict(self.binding)

    def __str__(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.binding)


# ---------------------------------------------------------------------------
# sequent constraints


@dataclass(frozen=True, eq=False)
class SequentConstraint:
    """A named relation over sequent labels plus the succedent context.

    ``check`` receives the tuple of labels in the order fixed by the rule kind
    and the context Δ of inactive prefixed sequents.  ``merged`` (optional) is
    consulted instead for reachability applications whose two active vertices
    coincide; it receives one label per premise followed by the conclusion's.
    """

    name: str
    check: Callable[[tuple, Delta], bool]
    arity: int | None = None
    synthesize: Callable | None = None
    merged: Callable[[tuple, Delta], bool] | None = None
    synthesize_merged: Callable | None = None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SequentConstraint) and other.name == self.name

    def __hash__(self) -> int:
        return hash(("relation", self.name))

    def satisfied(self, labels: tuple, delta: Delta) -> bool:
        # the relation is read up to a permutation of its sequent arguments
        return _any_permutation(self.check, labels, delta)

    def satisfied_merged(self, labels: tuple, delta: Delta) -> bool:
        if self.merged is None:
            return False
        return _any_permutation(self.merged, labels, delta)


def _any_permutation(fn: Callable[[tuple, Delta], bool], labels: tuple, delta: Delta) -> bool:
    if fn(labels, delta):
        return True
    tried = {labels}
    for perm in itertools.permutations(labels):
        if perm in tried:
            continue
        tried.add(perm)
        if fn(perm, delta):
            return True
    return False


_REGISTRY: dict[str, SequentConstraint] = {}


def register(sc: SequentConstraint) -> SequentConstraint:
    _REGISTRY[sc.name] = sc
    return sc


def lookup(name: str) -> SequentConstraint:
    if name not in _REGISTRY and "." in name:
        # instance modules register themselves on import
        import importlib

        try:
            importlib.import_module(f"horncalc.{name.split('.')[0]}")
        except ImportError:
            pass
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown sequent constraint {name!r}") from None


ANY = register(
    SequentConstraint("any", check=lambda labels, delta: True, merged=lambda labels, delta: True)
)


# ---------------------------------------------------------------------------
# structural constraints


@dataclass(frozen=True)
class ConstraintEdge:
    src: str
    dst: str
    grammar: ESystem
    start: Sym

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", sym(self.start))


@dataclass(frozen=True)
class StructuralConstraint:
    vertices: tuple[str, ...]
    edges: tuple[ConstraintEdge, ...] = ()

    def __post_init__(self) -> None:
        vs = self.vertices
        if len(set(vs)) != len(vs):
            raise ValueError("constraint vertices must be distinct")
        for e in self.edges:
            if e.src not in vs or e.dst not in vs:
                raise ValueError("constraint edge endpoint outside the tree")
        if vs:
            if len(self.edges) != len(vs) - 1 or not _connected(vs, self.edges):
                raise ValueError("a structural constraint must be a tree")

    def grammar(self) -> ESystem:
        g = EMPTY
        for e in self.edges:
            g = g | e.grammar
        return g

    def map_grammars(self, fn: Callable[[ESystem], ESystem]) -> StructuralConstraint:
        return StructuralConstraint(
            self.vertices, tuple(replace(e, grammar=fn(e.grammar)) for e in self.edges)
        )

    def key(self) -> tuple:
        """Canonical form up to renaming of constraint vertices."""
        if len(self.vertices) > 7:
            return (self.vertices, tuple(sorted(_edge_key(e, {}) for e in self.edges)))
        best = None
        for perm in itertools.permutations(range(len(self.vertices))):
            ren = {v: perm[i] for i, v in enumerate(self.vertices)}
            k = tuple(sorted(_edge_key(e, ren) for e in self.edges))
            if best is None or k < best:
                best = k
        return (len(self.vertices), best)


def _edge_key(e: ConstraintEdge, ren: dict) -> tuple:
    return (ren.get(e.src, e.src), ren.get(e.dst, e.dst), str(e.start), tuple(e.grammar.sorted()))


def _connected(vs: tuple[str, ...], edges: tuple[ConstraintEdge, ...]) -> bool:
    adj: dict[str, set[str]] = {v: set() for v in vs}
    for e in edges:
        adj[e.src].add(e.dst)
        adj[e.dst].add(e.src)
    seen = {vs[0]}
    stack = [vs[0]]
    while stack:
        for n in adj[stack.pop()]:
            if n not in seen:
                seen.add(n)
                stack.append(n)
    return len(seen) == len(vs)


def two_vertex_constraint(grammar: ESystem, start: Sym | str) -> StructuralConstraint:
    return StructuralConstraint(("w", "u"), (ConstraintEdge("w", "u", grammar, sym(start)),))


def path_in_language(g: GSequent, src: str, dst: str, grammar: ESystem, start: Sym) -> bool:
    return (src, dst) in reach_relation(g, grammar, start)


def constraint_satisfied(g: GSequent, c: StructuralConstraint, embedding: Mapping[str, str]) -> bool:
    for v in c.vertices:
        if v not in embedding:
            raise ValueError(f"embedding is not total: {v!r} unmapped")
        if embedding[v] not in g.vertices:
            raise ValueError(f"embedding sends {v!r} outside the g-sequent")
    return all(
        path_in_language(g, embedding[e.src], embedding[e.dst], e.grammar, e.start) for e in c.edges
    )


# ---------------------------------------------------------------------------
# rules


class Rule:
    id: str
    kind: ClassVar[str]

    def key(self) -> tuple:
        raise NotImplementedError

    def grammar(self) -> ESystem:
        return EMPTY


@dataclass(frozen=True)
class InitialRule(Rule):
    id: str
    constraint: StructuralConstraint
    relation: SequentConstraint = field(default=ANY)
    kind: ClassVar[str] = "initial"

    def key(self) -> tuple:
        return ("initial", self.constraint.key(), self.relation.name)

    def grammar(self) -> ESystem:
        return self.constraint.grammar()


@dataclass(frozen=True)
class LocalRule(Rule):
    id: str
    relation: SequentConstraint
    premises: int
    kind: ClassVar[str] = "local"

    def key(self) -> tuple:
        return ("local", self.premises, self.relation.name)


@dataclass(frozen=True)
class ExpansionRule(Rule):
    id: str
    relation: SequentConstraint
    etype: str
    forward: bool = True
    kind: ClassVar[str] = "expansion"

    def key(self) -> tuple:
        return ("expansion", self.etype, self.forward, self.relation.name)

    def atom(self, w: str, u: str) -> Atom:
        return Atom(self.etype, w, u) if self.forward else Atom(self.etype, u, w)


@dataclass(frozen=True)
class HornRule(Rule):
    """Forward: from a ``w -s-> u`` path infer ``w E_a u``; backward infers ``u E_a w``.

    Read top-down, an application removes the inferred atom from the premise.
    """

    id: str
    etype: str
    rhs: Word
    forward: bool = True
    kind: ClassVar[str] = "horn"

    def __post_init__(self) -> None:
        object.__setattr__(self, "rhs", word(self.rhs) if isinstance(self.rhs, str) else tuple(self.rhs))

    @property
    def pair(self) -> ProductionPair:
        a = Sym(self.etype)
        p = Production(a, self.rhs) if self.forward else Production(a.conv(), self.rhs)
        return ProductionPair.of(p)

    def key(self) -> tuple:
        # backward (a, s) and forward (a, converse s) license the same steps
        return ("horn", self.pair)

    def grammar(self) -> ESystem:
        return self.pair.grammar()

    def atom(self, w: str, u: str) -> Atom:
        return Atom(self.etype, w, u) if self.forward else Atom(self.etype, u, w)

    def __str__(self) -> str:
        d = "forward" if self.forward else "backward"
        return f"{self.id}: {d} {self.etype} <- {fmt_word(self.rhs)}"


@dataclass(frozen=True)
class ReachabilityRule(Rule):
    """Premise ``i`` must join ``w`` to ``u`` by a path in ``grammar_i(start_i)``."""

    id: str
    constraints: tuple[tuple[ESystem, Sym], ...]
    relation: SequentConstraint = field(default=ANY)
    allow_coincident: bool = True
    kind: ClassVar[str] = "reachability"

    def __post_init__(self) -> None:
        object.__setattr__(self, "constraints", tuple((g, sym(a)) for g, a in self.constraints))

    @property
    def premises(self) -> int:
        return len(self.constraints)

    def key(self) -> tuple:
        return (
            "reachability",
            tuple((tuple(g.sorted()), str(a)) for g, a in self.constraints),
            self.relation.name,
        )

    def grammar(self) -> ESystem:
        g = EMPTY
        for gi, _ in self.constraints:
            g = g | gi
        return g

    def structural(self, i: int) -> StructuralConstraint:
        g, a = self.constraints[i]
        return two_vertex_constraint(g, a)


def horn_from_pair(pair: ProductionPair) -> HornRule:
    f = pair.forward
    return HornRule(f"h[{f.lhs}->{fmt_word(f.rhs).replace(' ', '.')}]", f.lhs.name, f.rhs, True)


def is_transmission(rule: Rule) -> bool:
    return isinstance(rule, ReachabilityRule) and all(not g for g, _ in rule.constraints)


def rule_grammar(rules: Rule | Iterable[Rule]) -> ESystem:
    if isinstance(rules, Rule):
        return rules.grammar()
    g = EMPTY
    for r in rules:
        g = g | r.grammar()
    return g


def absorb_rule(rule: Rule, g: ESystem) -> Rule:
    if isinstance(rule, InitialRule):
        return replace(rule, constraint=rule.constraint.map_grammars(lambda x: x | g))
    if isinstance(rule, ReachabilityRule):
        return replace(rule, constraints=tuple((x | g, a) for x, a in rule.constraints))
    return rule


def fracture_rule(rule: Rule, g: ESystem) -> Rule:
    if isinstance(rule, InitialRule):
        return replace(rule, constraint=rule.constraint.map_grammars(lambda x: x - g))
    if isinstance(rule, ReachabilityRule):
        return replace(rule, constraints=tuple((x - g, a) for x, a in rule.constraints))
    return rule


# ---------------------------------------------------------------------------
# instance checking


def _delta_without(g: GSequent, active: Iterable[str]) -> Delta:
    act = set(active)
    return frozenset((v, g.label(v)) for v in g.vertices if v not in act)


def _same_except(a: GSequent, b: GSequent, active: set[str]) -> bool:
    return all(a.label(v) == b.label(v) for v in a.vertices if v not in active)


PW = "pw"


def explain_instance(
    rule: Rule | str, premises: list[GSequent], conclusion: GSequent, inst: Inst
) -> str | None:
    """Return None for a valid application, otherwise a short reason."""
    if rule == PW:
        return _explain_pw(premises, conclusion, inst)
    try:
        if isinstance(rule, InitialRule):
            return _explain_initial(rule, premises, conclusion, inst)
        if isinstance(rule, LocalRule):
            return _explain_local(rule, premises, conclusion, inst)
        if isinstance(rule, ExpansionRule):
            return _explain_expansion(rule, premises, conclusion, inst)
        if isinstance(rule, HornRule):
            return _explain_horn(rule, premises, conclusion, inst)
        if isinstance(rule, ReachabilityRule):
            return _explain_reach(rule, premises, conclusion, inst)
    except KeyError as exc:
        return f"instantiation lacks role {exc}"
    raise TypeError(f"not a rule: {rule!r}")


def check_instance(rule: Rule | str, premises: list[GSequent], conclusion: GSequent, inst: Inst) -> bool:
    return explain_instance(rule, premises, conclusion, inst) is None


def _explain_initial(rule: InitialRule, premises, conclusion, inst) -> str | None:
    if premises:
        return "initial rule takes no premises"
    emb = {v: inst[v] for v in rule.constraint.vertices}
    if any(x not in conclusion.vertices for x in emb.values()):
        return "embedding leaves the g-sequent"
    if not constraint_satisfied(conclusion, rule.constraint, emb):
        return "structural constraint not satisfied"
    image = [emb[v] for v in rule.constraint.vertices]
    labels = tuple(conclusion.label(x) for x in image)
    if not rule.relation.satisfied(labels, _delta_without(conclusion, image)):
        return "sequent constraint not satisfied"
    return None


def _explain_local(rule: LocalRule, premises, conclusion, inst) -> str | None:
    w = inst["w"]
    if len(premises) != rule.premises:
        return "wrong number of premises"
    if w not in conclusion.vertices:
        return "active vertex missing"
    for p in premises:
        if p.vertices != conclusion.vertices or p.edges != conclusion.edges:
            return "premise changes the graph"
        if not _same_except(p, conclusion, {w}):
            return "premise changes an inactive label"
    labels = tuple(p.label(w) for p in premises) + (conclusion.label(w),)
    if not rule.relation.satisfied(labels, _delta_without(conclusion, [w])):
        return "sequent constraint not satisfied"
    return None


def _explain_expansion(rule: ExpansionRule, premises, conclusion, inst) -> str | None:
    w, u = inst["w"], inst["u"]
    if len(premises) != 1:
        return "expansion takes one premise"
    (p,) = premises
    if w not in conclusion.vertices:
        return "active vertex missing"
    if u in conclusion.vertices:
        return "expansion vertex is not fresh"
    if p.vertices != conclusion.vertices | {u}:
        return "premise vertex set is not the conclusion's plus the fresh vertex"
    if p.edges != conclusion.edges | {rule.atom(w, u)}:
        return "premise edges are not the conclusion's plus the connecting atom"
    if not _same_except(conclusion, p, {w}):
        return "premise changes an inactive label"
    labels = (p.label(w), p.label(u), conclusion.label(w))
    if not rule.relation.satisfied(labels, _delta_without(conclusion, [w])):
        return "sequent constraint not satisfied"
    return None


def _explain_horn(rule: HornRule, premises, conclusion, inst) -> str | None:
    w, u = inst["w"], inst["u"]
    if len(premises) != 1:
        return "Horn rule takes one premise"
    (p,) = premises
    if w not in conclusion.vertices or u not in conclusion.vertices:
        return "active vertex missing"
    atom = rule.atom(w, u)
    if atom in conclusion.edges:
        return "inferred atom already present in the conclusion"
    if p.edges != conclusion.edges | {atom} or p.labels != conclusion.labels:
        return "premise is not the conclusion plus the inferred atom"
    if u not in conclusion.reach_from(w, rule.rhs):
        return "no justifying path in the conclusion"
    return None


def _explain_reach(rule: ReachabilityRule, premises, conclusion, inst) -> str | None:
    w, u = inst["w"], inst["u"]
    if len(premises) != rule.premises:
        return "wrong number of premises"
    if w not in conclusion.vertices or u not in conclusion.vertices:
        return "active vertex missing"
    if w == u and not rule.allow_coincident:
        return "active vertices coincide"
    for i, p in enumerate(premises):
        if p.vertices != conclusion.vertices or p.edges != conclusion.edges:
            return "premise changes the graph"
        if not _same_except(p, conclusion, {w, u}):
            return "premise changes an inactive label"
        g, a = rule.constraints[i]
        if not path_in_language(p, w, u, g, a):
            return f"premise {i} violates its reachability constraint"
    delta = _delta_without(conclusion, [w, u])
    if w == u:
        labels = tuple(p.label(w) for p in premises) + (conclusion.label(w),)
        ok = rule.relation.satisfied_merged(labels, delta)
    else:
        labels = tuple(x for p in premises for x in (p.label(w), p.label(u)))
        labels += (conclusion.label(w), conclusion.label(u))
        ok = rule.relation.satisfied(labels, delta)
    return None if ok else "sequent constraint not satisfied"


def _explain_pw(premises, conclusion, inst) -> str | None:
    if len(premises) != 1:
        return "path weakening takes one premise"
    (p,) = premises
    atom = Atom(inst["a"], inst["w"], inst["u"])
    if atom.src not in p.vertices or atom.dst not in p.vertices:
        return "weakening atom endpoints must already occur"
    if atom in p.edges:
        return "weakening atom already present"
    if conclusion.edges != p.edges | {atom} or conclusion.labels != p.labels:
        return "conclusion is not the premise plus the weakening atom"
    return None


def pw_inst(atom: Atom) -> Inst:
    return Inst.of(w=atom.src, u=atom.dst, a=atom.etype)


# ---------------------------------------------------------------------------
# bottom-up application


def apply_bottom_up(rule: Rule, conclusion: GSequent) -> list[tuple[tuple[GSequent, ...], Inst]]:
    """All applications of ``rule`` concluding ``conclusion``, in a fixed order."""
    out = [
        (prem, inst)
        for prem, inst in _candidates(rule, conclusion)
        if check_instance(rule, list(prem), conclusion, inst)
    ]
    seen = set()
    uniq = []
    for prem, inst in out:
        if (prem, inst) not in seen:
            seen.add((prem, inst))
            uniq.append((prem, inst))
    return uniq


def _candidates(rule: Rule, g: GSequent) -> Iterator[tuple[tuple[GSequent, ...], Inst]]:
    vs = sorted(g.vertices)
    if isinstance(rule, InitialRule):
        cv = rule.constraint.vertices
        for image in itertools.product(vs, repeat=len(cv)):
            yield (), Inst.of(dict(zip(cv, image)))
    elif isinstance(rule, HornRule):
        for w in vs:
            for u in sorted(g.reach_from(w, rule.rhs)):
                atom = rule.atom(w, u)
                if atom not in g.edges:
                    yield (g.with_edges(atom),), Inst.of(w=w, u=u)
    elif isinstance(rule, LocalRule):
        syn = _synth(rule.relation.synthesize, rule)
        for w in vs:
            for labels in syn(g.label(w), _delta_without(g, [w])):
                yield tuple(g.relabel({w: s}) for s in labels), Inst.of(w=w)
    elif isinstance(rule, ExpansionRule):
        syn = _synth(rule.relation.synthesize, rule)
        u = fresh_vertex(g.vertices)
        for w in vs:
            for s1, s2 in syn(g.label(w), _delta_without(g, [w])):
                labels = g.labels
                labels[w] = s1
                labels[u] = s2
                yield (GSequent(labels, g.edges | {rule.atom(w, u)}),), Inst.of(w=w, u=u)
    elif isinstance(rule, ReachabilityRule):
        syn = _synth(rule.relation.synthesize, rule)
        for w in vs:
            for u in vs:
                if w == u and not rule.allow_coincident:
                    continue
                if not all(path_in_language(g, w, u, gr, a) for gr, a in rule.constraints):
                    continue
                delta = _delta_without(g, [w, u])
                if w == u:
                    msyn = _synth(rule.relation.synthesize_merged, rule)
                    for labels in msyn(g.label(w), delta):
                        yield tuple(g.relabel({w: s}) for s in labels), Inst.of(w=w, u=u)
                else:
                    for pairs in syn(g.label(w), g.label(u), delta):
                        yield tuple(g.relabel({w: a, u: b}) for a, b in pairs), Inst.of(w=w, u=u)
    else:
        raise TypeError(f"not a rule: {rule!r}")


def _synth(fn: Callable | None, rule: Rule) -> Callable:
    if fn is None:
        raise NotEnumerable(f"rule {rule.id!r} is not enumerable bottom-up")
    return fn

"""Abstract calculi: finite rule sets over an edge-type alphabet."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .rewriting import EMPTY, ESystem, ProductionPair, production_pairs
from .rules import (
    HornRule,
    InitialRule,
    ReachabilityRule,
    Rule,
    absorb_rule,
    fracture_rule,
    horn_from_pair,
    rule_grammar,
)


@dataclass(frozen=True, eq=False)
class Calculus:
    alphabet: frozenset[str]
    rules: tuple[Rule, ...]
    name: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", frozenset(self.alphabet))
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.alphabet:
            raise ValueError("the edge-type alphabet must be non-empty")
        ids = [r.id for r in self.rules]
        if len(set(ids)) != len(ids):
            raise ValueError("rule ids must be unique")
        keys = [r.key() for r in self.rules]
        if len(set(keys)) != len(keys):
            raise ValueError("calculus contains two copies of the same rule")
        bad = rule_grammar(self.rules).edge_types() - self.alphabet
        for r in self.rules:
            for attr in ("etype",):
                if hasattr(r, attr) and getattr(r, attr) not in self.alphabet:
                    bad.add(getattr(r, attr))
        if bad:
            raise ValueError(f"edge types outside the alphabet: {sorted(bad)}")

    # structural equality ignores ids and names
    def key(self) -> tuple:
        return (self.alphabet, frozenset(r.key() for r in self.rules))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Calculus) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def rule(self, rule_id: str) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(f"unknown rule {rule_id!r}")

    def has_rule(self, rule_id: str) -> bool:
        return any(r.id == rule_id for r in self.rules)

    def find(self, key: tuple) -> Rule | None:
        for r in self.rules:
            if r.key() == key:
                return r
        return None

    def with_rules(self, rules: Iterable[Rule], name: str | None = None) -> Calculus:
        return Calculus(self.alphabet, tuple(rules), self.name if name is None else name)

    def __repr__(self) -> str:
        return f"Calculus({self.name or '?'}: {', '.join(r.id for r in self.rules)})"


def horn_rules(c: Calculus) -> list[HornRule]:
    return [r for r in c.rules if isinstance(r, HornRule)]


def calculus_grammar(c: Calculus) -> ESystem:
    return rule_grammar(c.rules)


def production_pairs_of(c: Calculus) -> frozenset[ProductionPair]:
    return production_pairs(calculus_grammar(c))


def horn_grammar(hs: Iterable[HornRule]) -> ESystem:
    return rule_grammar(list(hs))


def calculus_absorb(c: Calculus, g: ESystem) -> Calculus:
    return c.with_rules(absorb_rule(r, g) for r in c.rules)


def calculus_fracture(c: Calculus, g: ESystem) -> Calculus:
    return c.with_rules(fracture_rule(r, g) for r in c.rules)


def f_op(c: Calculus, h: Iterable[HornRule]) -> Calculus:
    """Absorb the grammar of ``h`` into the constraints, then delete ``h``."""
    hs = list(h)
    keys = {r.key() for r in c.rules}
    for r in hs:
        if r.key() not in keys:
            raise ValueError(f"Horn rule {r.id!r} is not a rule of the calculus")
    drop = {r.key() for r in hs}
    absorbed = calculus_absorb(c, horn_grammar(hs))
    return absorbed.with_rules(r for r in absorbed.rules if r.key() not in drop)


def g_op(c: Calculus, pairs: Iterable[ProductionPair]) -> Calculus:
    """Fracture the grammar of ``pairs`` out of the constraints, then add their Horn rules."""
    ps = sorted(set(pairs))
    g = ESystem([q for p in ps for q in (p.forward, p.converse)], check=False)
    fractured = calculus_fracture(c, g)
    rules = list(fractured.rules)
    present = {r.key() for r in rules}
    ids = {r.id for r in rules}
    for p in ps:
        h = horn_from_pair(p)
        if h.key() in present:
            continue
        if h.id in ids:
            raise ValueError(f"generated rule id {h.id!r} clashes with an existing rule")
        rules.append(h)
        present.add(h.key())
        ids.add(h.id)
    return fractured.with_rules(rules)


def constrained_rules(c: Calculus) -> list[Rule]:
    return [r for r in c.rules if isinstance(r, (InitialRule, ReachabilityRule))]


def is_explicit(c: Calculus) -> bool:
    g = calculus_grammar(c)
    return all(fracture_rule(r, g) == r for r in constrained_rules(c))


def is_implicit(c: Calculus) -> bool:
    if horn_rules(c):
        return False
    g = calculus_grammar(c)
    return all(absorb_rule(r, g) == r for r in constrained_rules(c))


def non_horn_grammar(c: Calculus) -> ESystem:
    return rule_grammar([r for r in c.rules if not isinstance(r, HornRule)])


__all__ = [
    "Calculus",
    "EMPTY",
    "calculus_absorb",
    "calculus_fracture",
    "calculus_grammar",
    "constrained_rules",
    "f_op",
    "g_op",
    "horn_grammar",
    "horn_rules",
    "is_explicit",
    "is_implicit",
    "non_horn_grammar",
    "production_pairs_of",
]

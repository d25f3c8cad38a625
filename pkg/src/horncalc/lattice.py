"""Upward and downward spaces of calculi.

The upward space of a calculus collects every calculus reachable by
repeatedly absorbing an anti-fracturable set of Horn rules (``f``); the
downward space collects every calculus reachable by repeatedly fracturing a
fracturable set of production pairs out of the constraints (``g``).  Both
are finite partial orders, built by a worklist with global deduplication.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import networkx as nx

from .calculus import (
    Calculus,
    calculus_grammar,
    f_op,
    g_op,
    horn_rules,
    is_explicit,
    is_implicit,
    non_horn_grammar,
    production_pairs_of,
)
from .dependency import build_dg, build_dg_horn, enumerate_anti_fracturable, enumerate_fracturable
from .rewriting import production_pairs

log = logging.getLogger(__name__)


@dataclass
class SpaceConfig:
    horn_cap: int = 10
    budget_secs: float | None = None


@dataclass
class CalculusSpace:
    members: list[Calculus]
    generated: set[tuple[int, int]]  # (lower, upper) pairs produced by one f or g step
    direction: str  # "upward" or "downward"
    origin: int = 0
    _leq: set[tuple[int, int]] = field(default_factory=set, repr=False)

    def __post_init__(self) -> None:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.members)))
        g.add_edges_from(self.generated)
        closure = nx.transitive_closure_dag(g) if nx.is_directed_acyclic_graph(g) else None
        if closure is None:
            raise RuntimeError("space order is not antisymmetric (generation graph has a cycle)")
        self._leq = set(closure.edges) | {(i, i) for i in range(len(self.members))}

    def leq(self, i: int, j: int) -> bool:
        """Member ``i`` lies below member ``j`` (more Horn rules, fewer absorbed productions)."""
        return (i, j) in self._leq

    def hasse(self) -> set[tuple[int, int]]:
        strict = {(a, b) for a, b in self._leq if a != b}
        return {
            (a, b)
            for a, b in strict
            if not any((a, m) in strict and (m, b) in strict for m in range(len(self.members)))
        }

    def index(self, c: Calculus) -> int:
        return self.members.index(c)

    def top(self) -> int:
        tops = [i for i in range(len(self.members)) if all(self.leq(j, i) for j in range(len(self.members)))]
        return tops[0]

    def bottom(self) -> int:
        bots = [i for i in range(len(self.members)) if all(self.leq(i, j) for j in range(len(self.members)))]
        return bots[0]

    def label(self, i: int) -> str:
        origin = self.members[self.origin]
        m = self.members[i]
        if self.direction == "upward":
            keys = {r.key() for r in m.rules}
            gone = sorted(h.id for h in horn_rules(origin) if h.key() not in keys)
            return "A" if not gone else "f(A,{" + ",".join(gone) + "})"
        before = production_pairs(non_horn_grammar(origin))
        after = production_pairs(non_horn_grammar(m))
        gone = sorted(str(p.forward) for p in before - after)
        return "B" if not gone else "g(B,{" + "; ".join(gone) + "})"


def _check_budget(deadline: float | None) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise TimeoutError("space computation exceeded its time budget")


def implicate(c: Calculus, config: SpaceConfig | None = None) -> CalculusSpace:
    cfg = config or SpaceConfig()
    if len(horn_rules(c)) > cfg.horn_cap:
        raise ValueError(f"calculus has more than {cfg.horn_cap} Horn rules")
    if not is_explicit(c):
        log.warning("implicate: input is not explicit; down-translations may not apply")
    deadline = None if cfg.budget_secs is None else time.monotonic() + cfg.budget_secs
    members = [c]
    index = {c: 0}
    edges: set[tuple[int, int]] = set()
    todo = [0]
    while todo:
        i = todo.pop(0)
        b = members[i]
        for hs in enumerate_anti_fracturable(build_dg_horn(horn_rules(b))):
            _check_budget(deadline)
            if not hs:
                continue
            nxt = f_op(b, sorted(hs, key=lambda h: h.id))
            if nxt not in index:
                index[nxt] = len(members)
                members.append(nxt)
                todo.append(index[nxt])
            edges.add((i, index[nxt]))
    return CalculusSpace(members, edges, "upward", 0)


def explicate(c: Calculus, config: SpaceConfig | None = None) -> CalculusSpace:
    cfg = config or SpaceConfig()
    if len(production_pairs_of(c)) > cfg.horn_cap:
        raise ValueError(f"calculus has more than {cfg.horn_cap} production pairs")
    if not is_implicit(c):
        log.warning("explicate: input is not implicit; up-translations may not apply")
    deadline = None if cfg.budget_secs is None else time.monotonic() + cfg.budget_secs
    members = [c]
    index = {c: 0}
    edges: set[tuple[int, int]] = set()
    todo = [0]
    while todo:
        i = todo.pop(0)
        b = members[i]
        for ps in enumerate_fracturable(build_dg(non_horn_grammar(b))):
            _check_budget(deadline)
            if not ps:
                continue
            nxt = g_op(b, ps)
            if nxt not in index:
                index[nxt] = len(members)
                members.append(nxt)
                todo.append(index[nxt])
            edges.add((index[nxt], i))
    return CalculusSpace(members, edges, "downward", 0)


def top_of(c: Calculus) -> Calculus:
    out = f_op(c, horn_rules(c))
    if not is_implicit(out):
        raise RuntimeError("absorbing every Horn rule did not give an implicit calculus")
    return out


def bottom_of(c: Calculus) -> Calculus:
    out = g_op(c, production_pairs_of(c))
    if not is_explicit(out):
        raise RuntimeError("fracturing every production pair did not give an explicit calculus")
    return out


@dataclass(frozen=True)
class Isomorphism:
    ok: bool
    mapping: dict[int, int]
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def space_isomorphism(up: CalculusSpace, down: CalculusSpace) -> Isomorphism:
    """Match members of the two spaces and check the orders agree both ways."""
    if len(up.members) != len(down.members):
        return Isomorphism(False, {}, "spaces have different sizes")
    mapping: dict[int, int] = {}
    for i, m in enumerate(up.members):
        if m not in down.members:
            return Isomorphism(False, {}, f"member {up.label(i)} has no counterpart")
        mapping[i] = down.members.index(m)
    if len(set(mapping.values())) != len(mapping):
        return Isomorphism(False, mapping, "matching is not a bijection")
    n = len(up.members)
    for a in range(n):
        for b in range(n):
            if up.leq(a, b) != down.leq(mapping[a], mapping[b]):
                return Isomorphism(False, mapping, "orders disagree")
    grammars = {calculus_grammar(m) for m in up.members + down.members}
    if len(grammars) != 1:
        return Isomorphism(False, mapping, "grammar is not constant across members")
    return Isomorphism(True, mapping)

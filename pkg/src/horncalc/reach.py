"""Grammar-constrained reachability in g-sequents.

``solve_reach`` decides whether some string derivable from a start symbol
spells a walk between two vertices.  Every symbol acts as a nonterminal whose
base facts are its own edges; productions are binarized and the span facts
are saturated with a worklist.  The same engine, run over string positions
instead of vertices, decides single-symbol membership exactly.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Hashable, Iterable

from .gsequent import GSequent
from .rewriting import ESystem, Production, Sym, Word, rewrite_once, sym

log = logging.getLogger(__name__)

Fact = tuple[Hashable, Hashable, Hashable]


class _Spans:
    def __init__(self, grammar: ESystem, nodes: Iterable[Hashable]):
        self.nodes = list(nodes)
        self.out: dict[Hashable, dict[Hashable, set]] = {}
        self.inn: dict[Hashable, dict[Hashable, set]] = {}
        self.prov: dict[Fact, tuple] = {}
        self.unit_by: dict[Hashable, list] = {}
        self.left_by: dict[Hashable, list] = {}
        self.right_by: dict[Hashable, list] = {}
        self.eps: list[Production] = []
        self.queue: deque[Fact] = deque()
        for p in grammar.sorted():
            self._compile(p)

    def _compile(self, p: Production) -> None:
        k = len(p.rhs)
        if k == 0:
            self.eps.append(p)
        elif k == 1:
            self.unit_by.setdefault(p.rhs[0], []).append((p.lhs, p))
        else:
            # x <= y1 rest1, rest_i <= y_{i+1} rest_{i+1}, last rest is y_{k-1} y_k
            heads = [p.lhs] + [("aux", p, i) for i in range(1, k - 1)]
            for i, head in enumerate(heads):
                left = p.rhs[i]
                right = p.rhs[k - 1] if i == k - 2 else ("aux", p, i + 1)
                info = p if i == 0 else None
                self.left_by.setdefault(left, []).append((head, right, info))
                self.right_by.setdefault(right, []).append((head, left, info))

    def has(self, key: Hashable, a: Hashable, b: Hashable) -> bool:
        return b in self.out.get(key, {}).get(a, ())

    def add(self, key: Hashable, a: Hashable, b: Hashable, reason: tuple) -> None:
        if self.has(key, a, b):
            return
        self.out.setdefault(key, {}).setdefault(a, set()).add(b)
        self.inn.setdefault(key, {}).setdefault(b, set()).add(a)
        self.prov[(key, a, b)] = reason
        self.queue.append((key, a, b))

    def run(self) -> None:
        for p in self.eps:
            for v in self.nodes:
                self.add(p.lhs, v, v, ("eps", p))
        while self.queue:
            k, a, b = self.queue.popleft()
            for head, p in self.unit_by.get(k, ()):
                self.add(head, a, b, ("unit", p, (k, a, b)))
            for head, right, p in self.left_by.get(k, ()):
                for c in list(self.out.get(right, {}).get(b, ())):
                    self.add(head, a, c, ("bin", p, (k, a, b), (right, b, c)))
            for head, left, p in self.right_by.get(k, ()):
                for c in list(self.inn.get(left, {}).get(a, ())):
                    self.add(head, c, b, ("bin", p, (left, c, a), (k, a, b)))

    def pairs(self, key: Hashable) -> set[tuple]:
        return {(a, b) for a, bs in self.out.get(key, {}).items() for b in bs}

    # -- witness reconstruction ----------------------------------------------

    def tree(self, fact: Fact) -> tuple:
        """Derivation tree ``(symbol, src, dst, production|None, children)``."""
        key, a, b = fact
        reason = self.prov[fact]
        tag = reason[0]
        if tag == "edge":
            return (key, a, b, None, [])
        if tag == "eps":
            return (key, a, b, reason[1], [])
        if tag == "unit":
            return (key, a, b, reason[1], [self.tree(reason[2])])
        return (key, a, b, reason[1], [self.tree(reason[2])] + self._flatten(reason[3]))

    def _flatten(self, fact: Fact) -> list:
        key = fact[0]
        if isinstance(key, tuple) and len(key) == 3 and key[0] == "aux":
            reason = self.prov[fact]
            return [self.tree(reason[2])] + self._flatten(reason[3])
        return [self.tree(fact)]


@dataclass(frozen=True)
class ReachQuery:
    gsequent: GSequent
    source: str
    target: str
    grammar: ESystem
    start: Sym
    alphabet: frozenset[str] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", sym(self.start))
        if self.source not in self.gsequent.vertices or self.target not in self.gsequent.vertices:
            raise ValueError("query endpoints must be vertices of the g-sequent")
        if self.alphabet is not None and self.start.name not in self.alphabet:
            raise ValueError(f"start symbol {self.start} is not in the alphabet")


@dataclass(frozen=True)
class ReachWitness:
    string: Word
    walk: tuple[str, ...]
    derivation: tuple[Word, ...]

    @property
    def derivation_length(self) -> int:
        return len(self.derivation) - 1


def _graph_spans(g: GSequent, grammar: ESystem) -> _Spans:
    sp = _Spans(grammar, sorted(g.vertices))
    for e in sorted(g.edges):
        sp.add(Sym(e.etype), e.src, e.dst, ("edge",))
        sp.add(Sym(e.etype, True), e.dst, e.src, ("edge",))
    sp.run()
    return sp


@lru_cache(maxsize=8192)
def reach_relation(g: GSequent, grammar: ESystem, start: Sym) -> frozenset[tuple[str, str]]:
    """All vertex pairs joined by a walk whose string lies in the language of ``start``."""
    return frozenset(_graph_spans(g, grammar).pairs(start))


def solve_reach(q: ReachQuery) -> bool:
    return (q.source, q.target) in reach_relation(q.gsequent, q.grammar, q.start)


def reach_witness(q: ReachQuery) -> ReachWitness | None:
    sp = _graph_spans(q.gsequent, q.grammar)
    fact = (q.start, q.source, q.target)
    if fact not in sp.prov:
        return None
    return _witness(sp.tree(fact))


def _witness(root: tuple) -> ReachWitness:
    leaves: list[tuple] = []

    def collect(node: tuple) -> None:
        if node[3] is None:
            leaves.append(node)
        for ch in node[4]:
            collect(ch)

    collect(root)
    walk = [root[1]] + [leaf[2] for leaf in leaves]
    forms: list[Word] = []
    form = [root]
    while True:
        forms.append(tuple(n[0] for n in form))
        idx = next((i for i, n in enumerate(form) if n[3] is not None), None)
        if idx is None:
            break
        form = form[:idx] + list(form[idx][4]) + form[idx + 1:]
    return ReachWitness(string=forms[-1], walk=tuple(walk), derivation=tuple(forms))


def member(grammar: ESystem, x: Sym, t: Word) -> bool:
    """Exact test of ``x ->* t`` by saturating spans over positions of ``t``."""
    sp = _Spans(grammar, range(len(t) + 1))
    for i, y in enumerate(t):
        sp.add(y, i, i + 1, ("edge",))
    sp.run()
    return sp.has(x, 0, len(t))


def brute_force_reach(q: ReachQuery, walk_bound: int, derivation_bound: int) -> bool:
    """Independent bounded oracle.

    Enumerates every string derivable from the start symbol in at most
    ``derivation_bound`` rewrites and of length at most ``walk_bound``, and
    checks whether one of them spells a walk from source to target.
    """
    start: Word = (q.start,)
    seen = {start}
    frontier = [start]
    for depth in range(derivation_bound):
        remaining = derivation_bound - depth - 1
        nxt = []
        for cur in frontier:
            for _, _, s in rewrite_once(q.grammar, cur):
                if s in seen or len(s) - remaining > walk_bound:
                    continue
                seen.add(s)
                nxt.append(s)
        frontier = nxt
    g = q.gsequent
    return any(len(s) <= walk_bound and q.target in g.reach_from(q.source, s) for s in seen)

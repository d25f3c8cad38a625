"""Edge-type strings, productions and converse-closed rewriting systems.

A symbol is an edge type read forwards (``a``) or backwards (``inv(a)``).
Strings over such symbols spell walks in a g-sequent.  An :class:`ESystem`
is a semi-Thue system whose left-hand sides are single symbols and which is
closed under taking converses; it generates, for every symbol ``x``, the
language of strings derivable from ``x``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple


class Sym(NamedTuple):
    name: str
    inv: bool = False

    def conv(self) -> Sym:
        return Sym(self.name, not self.inv)

    def __str__(self) -> str:
        return f"inv({self.name})" if self.inv else self.name


Word = tuple[Sym, ...]

_SYM_RE = re.compile(r"^(?:inv\(\s*([A-Za-z_][\w']*)\s*\)|([A-Za-z_][\w']*))$")


def sym(text: str | Sym) -> Sym:
    if isinstance(text, Sym):
        return text
    m = _SYM_RE.match(text.strip())
    if not m or text.strip() == "eps":
        raise ValueError(f"not an edge symbol: {text!r}")
    return Sym(m.group(1), True) if m.group(1) else Sym(m.group(2), False)


def word(text: str | Iterable[Sym | str]) -> Word:
    """Parse ``"a inv(b) c"``; ``"eps"`` and ``""`` give the empty string."""
    if isinstance(text, str):
        parts = text.split()
        if parts == ["eps"]:
            return ()
        return tuple(sym(p) for p in parts)
    return tuple(sym(p) for p in text)


def fmt_word(w: Word) -> str:
    return " ".join(str(x) for x in w) if w else "eps"


def converse_string(s: Word) -> Word:
    return tuple(x.conv() for x in reversed(s))


@dataclass(frozen=True, order=True)
class Production:
    lhs: Sym
    rhs: Word

    def conv(self) -> Production:
        return Production(self.lhs.conv(), converse_string(self.rhs))

    def __str__(self) -> str:
        return f"{self.lhs} -> {fmt_word(self.rhs)}"


def production(text: str) -> Production:
    if "->" not in text:
        raise ValueError(f"production needs '->': {text!r}")
    left, right = text.split("->", 1)
    lhs = word(left)
    if len(lhs) != 1:
        raise ValueError(f"left-hand side must be one symbol: {text!r}")
    return Production(lhs[0], word(right))


class ESystem:
    """Immutable converse-closed set of productions."""

    __slots__ = ("_prods", "_by_lhs", "_hash")

    def __init__(self, productions: Iterable[Production] = (), *, check: bool = True):
        prods = frozenset(productions)
        if check:
            for p in prods:
                if p.conv() not in prods:
                    raise ValueError(f"not converse-closed: missing {p.conv()}")
        self._prods = prods
        by_lhs: dict[Sym, list[Production]] = {}
        for p in sorted(prods):
            by_lhs.setdefault(p.lhs, []).append(p)
        self._by_lhs = {k: tuple(v) for k, v in by_lhs.items()}
        self._hash = hash(prods)

    @property
    def productions(self) -> frozenset[Production]:
        return self._prods

    def sorted(self) -> list[Production]:
        return sorted(self._prods)

    def from_symbol(self, x: Sym) -> tuple[Production, ...]:
        return self._by_lhs.get(x, ())

    def symbols(self) -> set[Sym]:
        out: set[Sym] = set()
        for p in self._prods:
            out.add(p.lhs)
            out.update(p.rhs)
        return out

    def edge_types(self) -> set[str]:
        return {x.name for x in self.symbols()}

    def __iter__(self) -> Iterator[Production]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self._prods)

    def __contains__(self, p: object) -> bool:
        return p in self._prods

    def __bool__(self) -> bool:
        return bool(self._prods)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ESystem) and self._prods == other._prods

    def __hash__(self) -> int:
        return self._hash

    def __le__(self, other: ESystem) -> bool:
        return self._prods <= other._prods

    def __or__(self, other: ESystem) -> ESystem:
        return grammar_union(self, other)

    def __sub__(self, other: ESystem) -> ESystem:
        return grammar_minus(self, other)

    def __and__(self, other: ESystem) -> ESystem:
        return ESystem(self._prods & other._prods, check=False)

    def __repr__(self) -> str:
        return "ESystem({" + ", ".join(str(p) for p in self.sorted()) + "})"


EMPTY = ESystem()


def close_under_converse(rules: Iterable[Production | str]) -> ESystem:
    prods: set[Production] = set()
    for r in rules:
        p = production(r) if isinstance(r, str) else r
        if not isinstance(p.lhs, Sym):
            raise ValueError("left-hand side must be a single symbol")
        prods.add(p)
        prods.add(p.conv())
    return ESystem(prods, check=False)


def grammar_union(g1: ESystem, g2: ESystem) -> ESystem:
    return ESystem(g1.productions | g2.productions, check=False)


def grammar_minus(g1: ESystem, g2: ESystem) -> ESystem:
    # the difference of two closed systems is closed
    return ESystem(g1.productions - g2.productions, check=False)


@dataclass(frozen=True, order=True)
class ProductionPair:
    """A production with unbarred left symbol together with its converse."""

    forward: Production
    converse: Production

    @staticmethod
    def of(p: Production) -> ProductionPair:
        return ProductionPair(p, p.conv()) if not p.lhs.inv else ProductionPair(p.conv(), p)

    @property
    def edge_type(self) -> str:
        return self.forward.lhs.name

    def grammar(self) -> ESystem:
        return ESystem((self.forward, self.converse), check=False)

    def __str__(self) -> str:
        return f"({self.forward} | {self.converse})"


def production_pairs(g: ESystem) -> frozenset[ProductionPair]:
    return frozenset(ProductionPair.of(p) for p in g.productions)


def grammar_of_pairs(pairs: Iterable[ProductionPair]) -> ESystem:
    prods: set[Production] = set()
    for pp in pairs:
        prods.add(pp.forward)
        prods.add(pp.converse)
    return ESystem(prods, check=False)


def rewrite_once(g: ESystem, s: Word) -> Iterator[tuple[int, Production, Word]]:
    for i, x in enumerate(s):
        for p in g.from_symbol(x):
            yield i, p, s[:i] + p.rhs + s[i + 1:]


def find_derivation(
    g: ESystem, s: Word, t: Word, max_steps: int
) -> list[tuple[int, Production]] | None:
    """Breadth-first search for a rewrite sequence from ``s`` to ``t``.

    Returns the list of (position, production) steps, or None.  Strings that
    can no longer shrink to ``len(t)`` in the remaining steps are pruned, which
    is sound because one step removes at most one symbol.
    """
    s, t = tuple(s), tuple(t)
    if s == t:
        return []
    parent: dict[Word, tuple[Word, int, Production]] = {}
    seen = {s}
    frontier = deque([(s, 0)])
    while frontier:
        cur, depth = frontier.popleft()
        if depth == max_steps:
            continue
        for i, p, nxt in rewrite_once(g, cur):
            if nxt in seen or len(nxt) - (max_steps - depth - 1) > len(t):
                continue
            seen.add(nxt)
            parent[nxt] = (cur, i, p)
            if nxt == t:
                steps = []
                node = nxt
                while node != s:
                    prev, i2, p2 = parent[node]
                    steps.append((i2, p2))
                    node = prev
                return steps[::-1]
            frontier.append((nxt, depth + 1))
    return None


def derives(g: ESystem, s: Word | str, t: Word | str, max_steps: int | None = None) -> bool:
    """Decide ``s ->* t``.

    With ``max_steps`` the check is a bounded search.  Without a bound only the
    single-symbol form is decided (exactly, by chart parsing); other unbounded
    queries are refused.
    """
    s = word(s) if isinstance(s, str) else tuple(s)
    t = word(t) if isinstance(t, str) else tuple(t)
    if max_steps is not None:
        return find_derivation(g, s, t, max_steps) is not None
    if s == t:
        return True
    if len(s) != 1:
        raise ValueError("unbounded derivability is only decided for a single-symbol source")
    from .reach import member

    return member(g, s[0], t)


def derivable_strings(g: ESystem, s: Word, max_steps: int) -> set[Word]:
    """All strings reachable from ``s`` in at most ``max_steps`` rewrites."""
    seen = {tuple(s)}
    frontier = [tuple(s)]
    for _ in range(max_steps):
        nxt_frontier = []
        for cur in frontier:
            for _, _, nxt in rewrite_once(g, cur):
                if nxt not in seen:
                    seen.add(nxt)
                    nxt_frontier.append(nxt)
        frontier = nxt_frontier
    return seen

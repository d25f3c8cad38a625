"""Graphs of sequents.

A g-sequent is a finite set of vertices, typed directed edges between them
(edge atoms) and a total labeling of vertices by opaque sequent labels.
Values are immutable; every "modification" returns a new g-sequent.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, NamedTuple

from .rewriting import Sym, Word, word

Label = Hashable


class Atom(NamedTuple):
    etype: str
    src: str
    dst: str

    def __str__(self) -> str:
        return f"{self.src} -{self.etype}-> {self.dst}"


class GSequent:
    __slots__ = ("_labels", "edges", "vertices", "_hash", "_succ")

    def __init__(self, labels: Mapping[str, Label], edges: Iterable[tuple[str, str, str]] = ()):
        self._labels = dict(labels)
        self.vertices = frozenset(self._labels)
        self.edges = frozenset(Atom(*e) for e in edges)
        for e in self.edges:
            if e.src not in self.vertices or e.dst not in self.vertices:
                raise ValueError(f"edge {e} has an endpoint outside the vertex set")
        self._hash = hash((self.edges, frozenset(self._labels.items())))
        self._succ: dict[Sym, dict[str, frozenset[str]]] | None = None

    # -- basic access -------------------------------------------------------

    def label(self, v: str) -> Label:
        return self._labels[v]

    @property
    def labels(self) -> dict[str, Label]:
        return dict(self._labels)

    def delta(self) -> frozenset[tuple[str, Label]]:
        return frozenset(self._labels.items())

    def edge_types(self) -> set[str]:
        return {e.etype for e in self.edges}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GSequent)
            and self._hash == other._hash
            and self.edges == other.edges
            and self._labels == other._labels
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        gam = ", ".join(str(e) for e in sorted(self.edges))
        dl = ", ".join(f"{v}:{self._labels[v]}" for v in sorted(self.vertices))
        return f"GSequent({gam} |- {dl})"

    # -- copy-on-write updates ----------------------------------------------

    def with_edges(self, *atoms: tuple[str, str, str]) -> GSequent:
        return GSequent(self._labels, self.edges | {Atom(*a) for a in atoms})

    def without_edges(self, *atoms: tuple[str, str, str]) -> GSequent:
        return GSequent(self._labels, self.edges - {Atom(*a) for a in atoms})

    def relabel(self, updates: Mapping[str, Label]) -> GSequent:
        labels = dict(self._labels)
        labels.update(updates)
        return GSequent(labels, self.edges)

    # -- walks ---------------------------------------------------------------

    def successors(self, x: Sym) -> dict[str, frozenset[str]]:
        """Map vertex -> vertices reachable by one step along symbol ``x``."""
        if self._succ is None:
            acc: dict[Sym, dict[str, set[str]]] = {}
            for e in self.edges:
                acc.setdefault(Sym(e.etype), {}).setdefault(e.src, set()).add(e.dst)
                acc.setdefault(Sym(e.etype, True), {}).setdefault(e.dst, set()).add(e.src)
            self._succ = {k: {v: frozenset(s) for v, s in d.items()} for k, d in acc.items()}
        return self._succ.get(x, {})

    def step(self, frontier: Iterable[str], x: Sym) -> set[str]:
        succ = self.successors(x)
        out: set[str] = set()
        for v in frontier:
            out |= succ.get(v, frozenset())
        return out

    def relation(self, s: Word) -> set[tuple[str, str]]:
        """All pairs (v, v') joined by a walk spelling ``s``."""
        return {(v, w) for v in self.vertices for w in self.reach_from(v, s)}

    def reach_from(self, v: str, s: Word) -> set[str]:
        frontier = {v}
        for x in s:
            frontier = self.step(frontier, x)
            if not frontier:
                break
        return frontier


def gsequent_size(g: GSequent) -> int:
    return len(g.edges) + len(g.vertices)


def path_holds(
    g: GSequent, u: str, w: str, s: Word | str, alphabet: Iterable[str] | None = None
) -> bool:
    s = word(s) if isinstance(s, str) else tuple(s)
    if u not in g.vertices or w not in g.vertices:
        raise ValueError("path endpoints must be vertices of the g-sequent")
    if alphabet is not None:
        names = set(alphabet)
        bad = [x for x in s if x.name not in names]
        if bad:
            raise ValueError(f"symbol {bad[0]} is not in the alphabet")
    return w in g.reach_from(u, s)


def is_polytree(g: GSequent) -> bool:
    """Connected and acyclic once edge types and directions are forgotten.

    Self-loops and parallel or antiparallel atoms count as cycles.  The
    edgeless single vertex is a polytree; the empty g-sequent is not.
    """
    n = len(g.vertices)
    if n == 0 or len(g.edges) != n - 1:
        return False
    parent = {v: v for v in g.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in g.edges:
        a, b = find(e.src), find(e.dst)
        if a == b:
            return False
        parent[a] = b
    return True


def fresh_vertex(used: Iterable[str], prefix: str = "v") -> str:
    taken = set(used)
    i = 1
    while f"{prefix}{i}" in taken:
        i += 1
    return f"{prefix}{i}"


def isomorphic(g1: GSequent, g2: GSequent) -> bool:
    """Equality up to vertex renaming (brute force; small g-sequents only)."""
    from itertools import permutations

    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    v1 = sorted(g1.vertices)
    for perm in permutations(sorted(g2.vertices)):
        m = dict(zip(v1, perm))
        if all(g1.label(v) == g2.label(m[v]) for v in v1) and {
            Atom(e.etype, m[e.src], m[e.dst]) for e in g1.edges
        } == g2.edges:
            return True
    return False

"""Dependency graphs over production pairs and Horn rules.

Pair ``p = x -> s`` points at pair ``p' = y -> t`` when ``y`` or its converse
occurs in ``s``.  A set of nodes is fracturable when no edge of the
reflexive-transitive closure leaves it; anti-fracturable sets are complements
of fracturable ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Generic, Hashable, Iterable, TypeVar

import networkx as nx

from .rewriting import ESystem, ProductionPair, production_pairs
from .rules import HornRule

N = TypeVar("N", bound=Hashable)


def depends(p: ProductionPair, q: ProductionPair) -> bool:
    """Base relation: the right-hand side of ``p`` mentions the edge type rewritten by ``q``."""
    return any(x.name == q.edge_type for x in p.forward.rhs)


@dataclass(frozen=True)
class DependencyGraph(Generic[N]):
    nodes: frozenset
    edges: frozenset  # base relation between distinct nodes
    name: Callable[[N], str] = str

    def closure(self) -> dict[N, frozenset]:
        """Node -> all nodes reachable along the base relation (including itself)."""
        g = self.digraph()
        return {n: frozenset(nx.descendants(g, n)) | {n} for n in self.nodes}

    def below(self, a: N, b: N) -> bool:
        """``a`` is below ``b`` in the reflexive-transitive order."""
        return b in self.closure()[a]

    def digraph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.nodes)
        g.add_edges_from(self.edges)
        return g

    def sort_key(self, subset: Iterable[N]) -> tuple:
        names = sorted(self.name(n) for n in subset)
        return (len(names), names)


def build_dg(g: ESystem) -> DependencyGraph[ProductionPair]:
    pairs = production_pairs(g)
    edges = {(p, q) for p in pairs for q in pairs if p != q and depends(p, q)}
    return DependencyGraph(frozenset(pairs), frozenset(edges), str)


def build_dg_horn(horns: Iterable[HornRule]) -> DependencyGraph[HornRule]:
    hs = list(horns)
    edges = {(h, k) for h in hs for k in hs if h != k and depends(h.pair, k.pair)}
    return DependencyGraph(frozenset(hs), frozenset(edges), lambda h: h.id)


def is_fracturable(dg: DependencyGraph, subset: Iterable) -> bool:
    s = set(subset)
    if not s <= dg.nodes:
        raise ValueError("subset is not within the graph's nodes")
    return all(b in s for a, b in dg.edges if a in s)


def is_anti_fracturable(dg: DependencyGraph, subset: Iterable) -> bool:
    s = set(subset)
    return is_fracturable(dg, dg.nodes - s)


def enumerate_fracturable(dg: DependencyGraph) -> list[frozenset]:
    """All successor-closed node sets, ordered by size and then by sorted names."""
    g = dg.digraph()
    cond = nx.condensation(g)
    members = cond.graph["mapping"]
    comps: dict[int, set] = {}
    for node, c in members.items():
        comps.setdefault(c, set()).add(node)
    # decide components sinks first so every successor is already settled
    order = list(reversed(list(nx.topological_sort(cond))))
    results: list[frozenset] = []

    def go(i: int, chosen: set[int]) -> None:
        if i == len(order):
            results.append(frozenset(n for c in chosen for n in comps[c]))
            return
        c = order[i]
        go(i + 1, chosen)
        if all(s in chosen for s in cond.successors(c)):
            chosen.add(c)
            go(i + 1, chosen)
            chosen.discard(c)

    go(0, set())
    return sorted(results, key=dg.sort_key)


def enumerate_anti_fracturable(dg: DependencyGraph) -> list[frozenset]:
    return sorted((dg.nodes - s for s in enumerate_fracturable(dg)), key=dg.sort_key)

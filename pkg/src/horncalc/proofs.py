"""Derivation trees, their metrics and validation."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator

from .calculus import Calculus
from .gsequent import GSequent, gsequent_size, is_polytree
from .rules import PW, InitialRule, Inst, NotEnumerable, apply_bottom_up, explain_instance

HYP = "hyp"  # open assumption leaf, only accepted when validating derivations


@dataclass(frozen=True)
class ProofStep:
    conclusion: GSequent
    rule_id: str
    inst: Inst = field(default_factory=Inst)
    premises: tuple[ProofStep, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "premises", tuple(self.premises))

    def walk(self) -> Iterator[ProofStep]:
        yield self
        for p in self.premises:
            yield from p.walk()

    def positions(self) -> Iterator[tuple[tuple[int, ...], ProofStep]]:
        """Preorder ``(path, step)`` pairs; a path lists premise indices from the root."""
        stack: list[tuple[tuple[int, ...], ProofStep]] = [((), self)]
        while stack:
            path, step = stack.pop()
            yield path, step
            for i in reversed(range(len(step.premises))):
                stack.append((path + (i,), step.premises[i]))

    def at(self, path: tuple[int, ...]) -> ProofStep:
        node = self
        for i in path:
            node = node.premises[i]
        return node

    def replace_at(self, path: tuple[int, ...], new: ProofStep) -> ProofStep:
        if not path:
            return new
        i = path[0]
        prem = list(self.premises)
        prem[i] = prem[i].replace_at(path[1:], new)
        return ProofStep(self.conclusion, self.rule_id, self.inst, tuple(prem))

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def rule_ids(self) -> set[str]:
        return {s.rule_id for s in self.walk()}


def hyp(g: GSequent) -> ProofStep:
    return ProofStep(g, HYP)


# a proof is simply its root step
Proof = ProofStep


def gsequents(d: ProofStep) -> set[GSequent]:
    return {s.conclusion for s in d.walk()}


def quantity(d: ProofStep) -> int:
    return len(gsequents(d))


def proof_size(d: ProofStep) -> int:
    gs = gsequents(d)
    return max(gsequent_size(g) for g in gs) * len(gs)


def is_complete(p: ProofStep) -> bool:
    g = p.conclusion
    return len(g.vertices) == 1 and not g.edges


def is_polytree_proof(p: ProofStep) -> bool:
    return all(is_polytree(g) for g in gsequents(p))


@dataclass(frozen=True)
class Diagnosis:
    ok: bool
    message: str = ""
    path: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate(
    p: ProofStep, c: Calculus, *, allow_pw: bool = False, allow_open: bool = False
) -> Diagnosis:
    """Re-check every step; leaves must be initial-rule applications."""
    for path, step in p.positions():
        if step.rule_id == HYP:
            if not allow_open:
                return Diagnosis(False, "open assumption in a proof", path)
            if step.premises:
                return Diagnosis(False, "assumption with premises", path)
            continue
        if step.rule_id == PW:
            if not allow_pw:
                return Diagnosis(False, "unknown rule 'pw'", path)
            rule = PW
        elif not c.has_rule(step.rule_id):
            return Diagnosis(False, f"unknown rule {step.rule_id!r}", path)
        else:
            rule = c.rule(step.rule_id)
        if not step.premises and not isinstance(rule, InitialRule):
            return Diagnosis(False, f"leaf {step.rule_id!r} is not an initial rule", path)
        why = explain_instance(rule, [q.conclusion for q in step.premises], step.conclusion, step.inst)
        if why is not None:
            return Diagnosis(False, f"{step.rule_id}: {why}", path)
    return Diagnosis(True)


# ---------------------------------------------------------------------------
# bounded proof search


@dataclass
class SearchConfig:
    max_depth: int = 8
    max_nodes: int = 200_000
    budget_secs: float | None = None


def search_proofs(
    goal: GSequent, c: Calculus, config: SearchConfig | None = None, limit: int | None = None
) -> list[ProofStep]:
    """All proofs of ``goal`` of height at most ``max_depth`` (up to ``limit``).

    Plain depth-first enumeration over ``apply_bottom_up``; rules that cannot
    be enumerated bottom-up are skipped.
    """
    cfg = config or SearchConfig()
    deadline = None if cfg.budget_secs is None else time.monotonic() + cfg.budget_secs
    nodes = [0]

    def prove(g: GSequent, depth: int) -> Iterator[ProofStep]:
        nodes[0] += 1
        if nodes[0] > cfg.max_nodes or (deadline and time.monotonic() > deadline):
            return
        if depth == 0:
            return
        for rule in c.rules:
            try:
                cands = apply_bottom_up(rule, g)
            except NotEnumerable:
                continue
            for prems, inst in cands:
                yield from _combine(rule.id, g, inst, prems, depth)

    def _combine(rid, g, inst, prems, depth) -> Iterator[ProofStep]:
        if not prems:
            yield ProofStep(g, rid, inst)
            return

        def rec(i: int, acc: list[ProofStep]) -> Iterator[ProofStep]:
            if i == len(prems):
                yield ProofStep(g, rid, inst, tuple(acc))
                return
            for sub in prove(prems[i], depth - 1):
                yield from rec(i + 1, acc + [sub])

        yield from rec(0, [])

    out: list[ProofStep] = []
    for pr in prove(goal, cfg.max_depth):
        out.append(pr)
        if limit is not None and len(out) >= limit:
            break
    return out


def find_proof(goal: GSequent, c: Calculus, config: SearchConfig | None = None) -> ProofStep | None:
    """Shallowest proof found by iterative deepening."""
    cfg = config or SearchConfig()
    for d in range(1, cfg.max_depth + 1):
        found = search_proofs(goal, c, SearchConfig(d, cfg.max_nodes, cfg.budget_secs), limit=1)
        if found:
            return found[0]
    return None

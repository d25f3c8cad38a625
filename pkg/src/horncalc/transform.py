"""Proof transformations.

Single-window rewrites (swapping a Horn step with the step above it,
absorbing Horn steps into an initial step, cancelling path weakenings) and
the translators that move whole proofs between calculi related by
absorbing or fracturing Horn rules.

All rewrites act on :class:`ProofStep` trees and keep the root conclusion.
A window is addressed by the lower step; its upper step(s) are the lower
step's premises.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

from .calculus import Calculus, f_op, g_op, horn_grammar, horn_rules
from .dependency import build_dg, build_dg_horn, is_anti_fracturable, is_fracturable
from .gsequent import Atom, GSequent
from .proofs import ProofStep, proof_size, validate
from .rules import (
    PW,
    ExpansionRule,
    HornRule,
    InitialRule,
    Inst,
    LocalRule,
    ReachabilityRule,
    Rule,
    absorb_rule,
    explain_instance,
    fracture_rule,
    pw_inst,
)

log = logging.getLogger(__name__)


class TransformError(Exception):
    """A window does not have the required shape or a hypothesis fails."""


@dataclass
class Trace:
    events: list[tuple[str, str]] = field(default_factory=list)

    def add(self, phase: str, detail: str = "") -> None:
        self.events.append((phase, detail))

    def phases(self) -> list[str]:
        out: list[str] = []
        for ph, _ in self.events:
            if not out or out[-1] != ph:
                out.append(ph)
        return out


@dataclass(frozen=True)
class TwoStepWindow:
    host: ProofStep
    path: tuple[int, ...]

    @property
    def lower(self) -> ProofStep:
        return self.host.at(self.path)

    def rewrite(self, new_lower: ProofStep) -> ProofStep:
        if new_lower.conclusion != self.lower.conclusion:
            raise TransformError("rewrite changed the window's conclusion")
        return self.host.replace_at(self.path, new_lower)


def _rule(c: Calculus, step: ProofStep) -> Rule | str:
    return PW if step.rule_id == PW else c.rule(step.rule_id)


def _wrap(rule_id: str, inst: Inst, atom: Atom, sub: ProofStep) -> ProofStep:
    """Apply a Horn step removing ``atom`` below ``sub``."""
    return ProofStep(sub.conclusion.without_edges(atom), rule_id, inst, (sub,))


def _check(rule: Rule | str, step: ProofStep) -> None:
    why = explain_instance(rule, [p.conclusion for p in step.premises], step.conclusion, step.inst)
    if why is not None:
        raise TransformError(f"rewritten step {step.rule_id!r} is invalid: {why}")


# ---------------------------------------------------------------------------
# Horn permutations


def _hoist_generic(step: ProofStep, c: Calculus, kinds: tuple[type, ...], what: str) -> ProofStep:
    h = c.rule(step.rule_id)
    if not isinstance(h, HornRule) or len(step.premises) != 1:
        raise TransformError(f"{what}: lower step is not a Horn application")
    upper = step.premises[0]
    x = _rule(c, upper)
    if not isinstance(x, kinds):
        raise TransformError(f"{what}: upper step has the wrong kind")
    atom = h.atom(step.inst["w"], step.inst["u"])
    prems = tuple(_wrap(h.id, step.inst, atom, q) for q in upper.premises)
    out = ProofStep(step.conclusion, upper.rule_id, upper.inst, prems)
    for q in prems:
        _check(h, q)
    _check(x, out)
    return out


def _sink_generic(step: ProofStep, c: Calculus, kinds: tuple[type, ...], what: str) -> ProofStep:
    x = _rule(c, step)
    if not isinstance(x, kinds) or not step.premises:
        raise TransformError(f"{what}: lower step has the wrong kind")
    first = step.premises[0]
    h = c.rule(first.rule_id)
    if not isinstance(h, HornRule):
        raise TransformError(f"{what}: upper steps are not Horn applications")
    for q in step.premises:
        if q.rule_id != first.rule_id or q.inst != first.inst:
            raise TransformError(f"{what}: upper Horn steps differ")
    atom = h.atom(first.inst["w"], first.inst["u"])
    mid = ProofStep(
        step.conclusion.with_edges(atom), step.rule_id, step.inst, tuple(q.premises[0] for q in step.premises)
    )
    out = ProofStep(step.conclusion, h.id, first.inst, (mid,))
    _check(x, mid)
    _check(h, out)
    return out


def permute_local_horn(step: ProofStep, c: Calculus) -> ProofStep:
    """Swap a Horn step and the local step above it, in either direction.

    Hoisting copies the Horn step onto every premise of the local step.
    """
    if isinstance(_rule(c, step), HornRule):
        return _hoist_generic(step, c, (LocalRule,), "local/Horn")
    return _sink_generic(step, c, (LocalRule,), "local/Horn")


def permute_horn_above_expansion(step: ProofStep, c: Calculus) -> ProofStep:
    return _hoist_generic(step, c, (ExpansionRule,), "expansion/Horn")


def permute_reach_horn(
    step: ProofStep, c: Calculus, absorbed: bool = True, target: ReachabilityRule | None = None
) -> ProofStep:
    """Hoist a Horn step above a reachability step (or sink it back below).

    Hoisting is only sound when every constraint grammar of the reachability
    rule used afterwards contains the Horn rule's productions.  ``target``
    names that rule when it differs from the original (e.g. its absorbed
    version from another calculus); it must be resolvable in ``c``.
    """
    if not absorbed:
        raise TransformError("reachability/Horn: the reachability rule must absorb the Horn grammar")
    lower = _rule(c, step)
    if not isinstance(lower, HornRule):
        return _sink_generic(step, c, (ReachabilityRule,), "reachability/Horn")
    if len(step.premises) != 1 or not isinstance(_rule(c, step.premises[0]), ReachabilityRule):
        raise TransformError("reachability/Horn: upper step is not a reachability application")
    upper = step.premises[0]
    rho = target or c.rule(upper.rule_id)
    assert isinstance(rho, ReachabilityRule)
    hg = lower.grammar()
    if not all(hg <= g for g, _ in rho.constraints):
        raise TransformError("reachability/Horn: rule does not absorb the Horn grammar")
    atom = lower.atom(step.inst["w"], step.inst["u"])
    prems = tuple(_wrap(lower.id, step.inst, atom, q) for q in upper.premises)
    out = ProofStep(step.conclusion, rho.id, upper.inst, prems)
    for q in prems:
        _check(lower, q)
    _check(rho, out)
    return out


def permute_horn_horn(step: ProofStep, c: Calculus, h_prime: Iterable[HornRule]) -> ProofStep:
    """Move a Horn step from outside ``h_prime`` above one from inside it.

    ``h_prime`` must be fracturable in the dependency graph of the
    calculus's Horn rules, which guarantees the upper step's path never uses
    the atom removed by the lower step.
    """
    hp = {h.key() for h in h_prime}
    dg = build_dg_horn(horn_rules(c))
    chosen = [h for h in horn_rules(c) if h.key() in hp]
    if len(chosen) != len(hp) or not is_fracturable(dg, chosen):
        raise TransformError("Horn/Horn: the given set is not fracturable")
    lower = c.rule(step.rule_id)
    if not isinstance(lower, HornRule) or lower.key() in hp:
        raise TransformError("Horn/Horn: lower step must use a rule outside the set")
    upper = step.premises[0] if len(step.premises) == 1 else None
    if upper is None or not isinstance(_rule(c, upper), HornRule) or c.rule(upper.rule_id).key() not in hp:
        raise TransformError("Horn/Horn: upper step must use a rule from the set")
    sigma = c.rule(upper.rule_id)
    atom = lower.atom(step.inst["w"], step.inst["u"])
    new_upper = _wrap(lower.id, step.inst, atom, upper.premises[0])
    out = ProofStep(step.conclusion, sigma.id, upper.inst, (new_upper,))
    _check(lower, new_upper)
    _check(sigma, out)
    return out


def absorb_initial_horn(
    step: ProofStep, c: Calculus, h_set: Iterable[HornRule], target: Calculus | None = None
) -> ProofStep:
    """Replace an initial step followed by a chain of Horn steps by one absorbed initial step.

    The rule of the result is ``i + G(h_set)``; when ``target`` is given it is
    looked up there (by structure) so the step carries the target's rule id.
    """
    hs = list(h_set)
    keys = {h.key() for h in hs}
    node = step
    while not isinstance(_rule(c, node), InitialRule):
        r = _rule(c, node)
        if not isinstance(r, HornRule) or r.key() not in keys:
            raise TransformError("initial/Horn: non-Horn step between initial step and chain end")
        node = node.premises[0]
    init = c.rule(node.rule_id)
    absorbed = absorb_rule(init, horn_grammar(hs))
    if target is not None:
        found = target.find(absorbed.key())
        if found is None:
            raise TransformError("initial/Horn: target calculus lacks the absorbed initial rule")
        absorbed = found
    out = ProofStep(step.conclusion, absorbed.id, node.inst)
    _check(absorbed, out)
    return out


# ---------------------------------------------------------------------------
# saturation and path weakening


def saturation_steps(
    g: GSequent, hs: Iterable[HornRule]
) -> tuple[GSequent, list[tuple[HornRule, str, str, Atom]]]:
    """Add inferred atoms until no Horn rule in ``hs`` can add another.

    Returns the saturated g-sequent and the additions in order; each addition
    is justified by a path in the g-sequent as it was just before it.
    """
    rules = sorted(hs, key=lambda h: h.id)
    cur = g
    steps: list[tuple[HornRule, str, str, Atom]] = []
    changed = True
    while changed:
        changed = False
        for h in rules:
            for w in sorted(cur.vertices):
                for u in sorted(cur.reach_from(w, h.rhs)):
                    atom = h.atom(w, u)
                    if atom not in cur.edges:
                        cur = cur.with_edges(atom)
                        steps.append((h, w, u, atom))
                        changed = True
    return cur, steps


def invhorn_saturate(g: GSequent, hs: Iterable[HornRule]) -> GSequent:
    return saturation_steps(g, hs)[0]


def _horn_chain(top: ProofStep, steps: list[tuple[HornRule, str, str, Atom]]) -> ProofStep:
    cur = top
    for h, w, u, atom in reversed(steps):
        cur = ProofStep(cur.conclusion.without_edges(atom), h.id, Inst.of(w=w, u=u), (cur,))
    return cur


def _weaken_chain(sub: ProofStep, atoms: Iterable[Atom]) -> ProofStep:
    cur = sub
    for atom in sorted(atoms):
        if atom in cur.conclusion.edges:
            continue
        cur = ProofStep(cur.conclusion.with_edges(atom), PW, pw_inst(atom), (cur,))
    return cur


def _pw_atom(step: ProofStep) -> Atom:
    return Atom(step.inst["a"], step.inst["w"], step.inst["u"])


def _push_pw(pw: ProofStep, c: Calculus, trace: Trace | None) -> ProofStep:
    """Eliminate one path weakening whose premise derivation is pw-free."""
    atom = _pw_atom(pw)
    x = pw.premises[0]
    if atom in x.conclusion.edges:
        return x
    rule = _rule(c, x)
    if isinstance(rule, InitialRule):
        if trace:
            trace.add("pw", "initial")
        out = ProofStep(pw.conclusion, x.rule_id, x.inst)
        _check(rule, out)
        return out
    if isinstance(rule, HornRule):
        beta = rule.atom(x.inst["w"], x.inst["u"])
        if beta == atom:
            if trace:
                trace.add("pw", "horn-cancel")
            return x.premises[0]
        if trace:
            trace.add("pw", "horn")
    elif trace:
        trace.add("pw", rule.kind)
    prems = tuple(
        _push_pw(ProofStep(q.conclusion.with_edges(atom), PW, pw.inst, (q,)), c, trace)
        for q in x.premises
    )
    out = ProofStep(pw.conclusion, x.rule_id, x.inst, prems)
    _check(rule, out)
    return out


def _first_postorder(p: ProofStep, pred) -> tuple[int, ...] | None:
    stack: list[tuple[tuple[int, ...], ProofStep, bool]] = [((), p, False)]
    while stack:
        path, node, expanded = stack.pop()
        if expanded:
            if pred(node):
                return path
            continue
        stack.append((path, node, True))
        for i in reversed(range(len(node.premises))):
            stack.append((path + (i,), node.premises[i], False))
    return None


def eliminate_pw(p: ProofStep, c: Calculus, trace: Trace | None = None) -> ProofStep:
    """Remove every path-weakening step, topmost first."""
    while True:
        path = _first_postorder(p, lambda s: s.rule_id == PW)
        if path is None:
            return p
        p = p.replace_at(path, _push_pw(p.at(path), c, trace))


# ---------------------------------------------------------------------------
# fracture simulations


def _check_fracturable_for(rule: Rule, hs: list[HornRule]) -> None:
    g = rule.grammar() | horn_grammar(hs)
    dg = build_dg(g)
    mine = {h.pair for h in hs}
    if not is_fracturable(dg, mine):
        raise TransformError("the Horn set is not fracturable for this rule's grammar")


def fracture_simulate_initial(
    step: ProofStep, c: Calculus, h_prime: Iterable[HornRule], target: Calculus | None = None
) -> ProofStep:
    """Simulate an initial step by its fractured version followed by Horn steps.

    The fractured rule concludes the saturation of the original conclusion
    under ``h_prime``; the Horn chain then removes the added atoms again.
    """
    hs = list(h_prime)
    rule = c.rule(step.rule_id)
    if not isinstance(rule, InitialRule) or step.premises:
        raise TransformError("fracture: step is not an initial application")
    _check_fracturable_for(rule, hs)
    frac = _fractured(rule, hs, target)
    sat, steps = saturation_steps(step.conclusion, hs)
    top = ProofStep(sat, frac.id, step.inst)
    _check(frac, top)
    return _horn_chain(top, steps)


def fracture_simulate_reachability(
    step: ProofStep, c: Calculus, h_prime: Iterable[HornRule], target: Calculus | None = None
) -> ProofStep:
    """Simulate a reachability step by pw steps, its fractured version and Horn steps."""
    hs = list(h_prime)
    rule = c.rule(step.rule_id)
    if not isinstance(rule, ReachabilityRule):
        raise TransformError("fracture: step is not a reachability application")
    _check_fracturable_for(rule, hs)
    frac = _fractured(rule, hs, target)
    sat, steps = saturation_steps(step.conclusion, hs)
    added = [a for *_, a in steps]
    prems = tuple(_weaken_chain(q, added) for q in step.premises)
    mid = ProofStep(sat, frac.id, step.inst, prems)
    _check(frac, mid)
    return _horn_chain(mid, steps)


def _fractured(rule: Rule, hs: list[HornRule], target: Calculus | None) -> Rule:
    frac = fracture_rule(rule, horn_grammar(hs))
    if target is None:
        return frac
    found = target.find(frac.key())
    if found is None:
        raise TransformError(f"target calculus lacks the fractured form of {rule.id!r}")
    return found


# ---------------------------------------------------------------------------
# translators


def _relabel(p: ProofStep, mapping: dict[str, str]) -> ProofStep:
    return ProofStep(
        p.conclusion,
        mapping.get(p.rule_id, p.rule_id),
        p.inst,
        tuple(_relabel(q, mapping) for q in p.premises),
    )


def _merge(target: Calculus, extra: Iterable[Rule]) -> Calculus:
    rules = list(target.rules)
    ids = {r.id for r in rules}
    for r in extra:
        if r.id in ids:
            raise TransformError(f"rule id {r.id!r} is used by both calculi")
        rules.append(r)
    return Calculus(target.alphabet, tuple(rules), target.name)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise TransformError(msg)


def _key_map(source: Calculus, target: Calculus, convert) -> dict[str, str]:
    mapping: dict[str, str] = {}
    for r in source.rules:
        conv = convert(r)
        if conv is None:
            continue
        found = target.find(conv.key())
        if found is None:
            raise TransformError(f"no counterpart of rule {r.id!r} in the target calculus")
        mapping[r.id] = found.id
    return mapping


def _hoist_all(step: ProofStep, work: Calculus, trace: Trace | None) -> ProofStep:
    """Push the Horn step at the root of ``step`` up until initial steps absorb it."""
    upper = step.premises[0]
    x = _rule(work, upper)
    if isinstance(x, InitialRule):
        if trace:
            trace.add("hoist", "initial")
        out = ProofStep(step.conclusion, upper.rule_id, upper.inst)
        _check(x, out)
        return out
    if isinstance(x, LocalRule):
        swapped = permute_local_horn(step, work)
    elif isinstance(x, ExpansionRule):
        swapped = permute_horn_above_expansion(step, work)
    elif isinstance(x, ReachabilityRule):
        swapped = permute_reach_horn(step, work)
    elif isinstance(x, HornRule):
        swapped = _swap_horn(step, work)
    else:
        raise TransformError(f"cannot move a Horn step above {upper.rule_id!r}")
    if trace:
        trace.add("hoist", x.kind)
    return ProofStep(
        swapped.conclusion,
        swapped.rule_id,
        swapped.inst,
        tuple(_hoist_all(q, work, trace) for q in swapped.premises),
    )


def _swap_horn(step: ProofStep, c: Calculus) -> ProofStep:
    lower = c.rule(step.rule_id)
    upper = step.premises[0]
    sigma = c.rule(upper.rule_id)
    atom = lower.atom(step.inst["w"], step.inst["u"])
    new_upper = _wrap(lower.id, step.inst, atom, upper.premises[0])
    out = ProofStep(step.conclusion, sigma.id, upper.inst, (new_upper,))
    _check(lower, new_upper)
    _check(sigma, out)
    return out


def translate_up(
    p: ProofStep, source: Calculus, target: Calculus, trace: Trace | None = None
) -> ProofStep:
    """Translate into a calculus obtained by absorbing some Horn rules.

    ``target`` must equal ``f(source, H)`` where ``H`` is the set of Horn
    rules of ``source`` missing from ``target``.  Each application of a rule
    in ``H`` is moved upwards, topmost first, until an initial step absorbs
    it; the result is never larger than the input.
    """
    tkeys = {r.key() for r in target.rules}
    elim = [h for h in horn_rules(source) if h.key() not in tkeys]
    _require(f_op(source, elim) == target, "target is not obtained from source by absorbing its Horn rules")
    _require(bool(validate(p, source)), "input proof is not valid in the source calculus")
    hg = horn_grammar(elim)
    ekeys = {h.key() for h in elim}
    mapping = _key_map(
        source,
        target,
        lambda r: None if r.key() in ekeys else absorb_rule(r, hg),
    )
    work = _merge(target, elim)
    cur = _relabel(p, mapping)
    if trace:
        trace.add("relabel", ",".join(f"{a}->{b}" for a, b in sorted(mapping.items()) if a != b))
    is_elim = lambda s: s.rule_id in {h.id for h in elim}  # noqa: E731
    while True:
        path = _first_postorder(cur, is_elim)
        if path is None:
            break
        cur = cur.replace_at(path, _hoist_all(cur.at(path), work, trace))
    diag = validate(cur, target)
    if not diag:
        raise TransformError(f"internal error, output invalid: {diag.message}")
    return cur


def translate_down(
    p: ProofStep, source: Calculus, target: Calculus, trace: Trace | None = None
) -> ProofStep:
    """Translate into a calculus obtained by fracturing grammars into Horn rules.

    ``target`` must equal ``g(source, P)`` for the production pairs ``P`` of
    the Horn rules it adds.  Initial and reachability steps are replaced by
    their fractured versions concluding saturated g-sequents, then the path
    weakenings introduced for reachability premises are eliminated.
    """
    skeys = {r.key() for r in source.rules}
    new = [h for h in horn_rules(target) if h.key() not in skeys]
    pairs = {h.pair for h in new}
    _require(g_op(source, pairs) == target, "target is not obtained from source by fracturing")
    _require(bool(validate(p, source)), "input proof is not valid in the source calculus")
    hg = horn_grammar(new)
    mapping = _key_map(source, target, lambda r: fracture_rule(r, hg))

    def go(step: ProofStep) -> ProofStep:
        rule = source.rule(step.rule_id)
        prems = tuple(go(q) for q in step.premises)
        if isinstance(rule, InitialRule) and new:
            if trace:
                trace.add("fracture", "initial")
            return fracture_simulate_initial(step, source, new, target)
        if isinstance(rule, ReachabilityRule) and new:
            if trace:
                trace.add("fracture", "reachability")
            rebuilt = ProofStep(step.conclusion, step.rule_id, step.inst, prems)
            return fracture_simulate_reachability(rebuilt, source, new, target)
        return ProofStep(step.conclusion, mapping[step.rule_id], step.inst, prems)

    cur = go(p)
    cur = eliminate_pw(cur, target, trace)
    diag = validate(cur, target)
    if not diag:
        raise TransformError(f"internal error, output invalid: {diag.message}")
    return cur


def translate_up_upward(
    p: ProofStep, frm: Calculus, to: Calculus, h_prime: Iterable[HornRule], trace: Trace | None = None
) -> ProofStep:
    hs = list(h_prime)
    _require(is_anti_fracturable(build_dg_horn(horn_rules(frm)), _members(frm, hs)),
             "Horn set is not anti-fracturable")
    _require(to == f_op(frm, hs), "target is not f(source, H')")
    return translate_up(p, frm, to, trace)


def translate_down_upward(
    p: ProofStep, frm: Calculus, to: Calculus, h_prime: Iterable[HornRule], trace: Trace | None = None
) -> ProofStep:
    hs = list(h_prime)
    _require(frm == f_op(to, hs), "source is not f(target, H')")
    _require(to == g_op(frm, {h.pair for h in hs}),
             "absorbing then fracturing does not restore the target (it is not explicit enough)")
    return translate_down(p, frm, to, trace)


def translate_down_downward(
    p: ProofStep, frm: Calculus, to: Calculus, p_prime, trace: Trace | None = None
) -> ProofStep:
    from .calculus import non_horn_grammar

    ps = set(p_prime)
    _require(is_fracturable(build_dg(non_horn_grammar(frm)), ps), "pair set is not fracturable")
    _require(to == g_op(frm, ps), "target is not g(source, P')")
    return translate_down(p, frm, to, trace)


def translate_up_downward(
    p: ProofStep, frm: Calculus, to: Calculus, p_prime, trace: Trace | None = None
) -> ProofStep:
    ps = set(p_prime)
    _require(frm == g_op(to, ps), "source is not g(target, P')")
    return translate_up(p, frm, to, trace)


def translate(
    p: ProofStep, source: Calculus, target: Calculus, trace: Trace | None = None
) -> ProofStep:
    """Pick the direction from how ``target`` relates to ``source``."""
    if source.alphabet != target.alphabet:
        raise TransformError("source and target calculi have different edge-type alphabets")
    tkeys = {r.key() for r in target.rules}
    skeys = {r.key() for r in source.rules}
    elim = [h for h in horn_rules(source) if h.key() not in tkeys]
    if f_op(source, elim) == target:
        return translate_up(p, source, target, trace)
    new = [h for h in horn_rules(target) if h.key() not in skeys]
    if g_op(source, {h.pair for h in new}) == target:
        return translate_down(p, source, target, trace)
    raise TransformError("target is neither above nor below the source calculus")


def _members(c: Calculus, hs: list[HornRule]) -> list[HornRule]:
    keys = {h.key() for h in hs}
    return [h for h in horn_rules(c) if h.key() in keys]


def size_ratio(before: ProofStep, after: ProofStep) -> float:
    return proof_size(after) / proof_size(before) ** 2


__all__ = [
    "Trace",
    "TransformError",
    "TwoStepWindow",
    "absorb_initial_horn",
    "eliminate_pw",
    "fracture_simulate_initial",
    "fracture_simulate_reachability",
    "invhorn_saturate",
    "permute_horn_above_expansion",
    "permute_horn_horn",
    "permute_local_horn",
    "permute_reach_horn",
    "saturation_steps",
    "size_ratio",
    "translate",
    "translate_down",
    "translate_down_downward",
    "translate_down_upward",
    "translate_up",
    "translate_up_downward",
    "translate_up_upward",
]

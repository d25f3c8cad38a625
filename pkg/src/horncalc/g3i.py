"""Labelled intuitionistic fragment used as the worked instance.

Vertex labels are sequents ``X => Y`` of intuitionistic formulas (multisets on
both sides).  The explicit calculus has the rules ``id``, ``orL``, ``impL``,
``impR`` plus the Horn rules ``ref`` (reflexivity) and ``tra``
(transitivity); the implicit calculus absorbs ``ref`` and ``tra`` into the
constraints of ``id`` and ``impL``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .calculus import Calculus, f_op, horn_rules
from .rewriting import EMPTY, Sym
from .rules import (
    ExpansionRule,
    HornRule,
    InitialRule,
    LocalRule,
    ReachabilityRule,
    SequentConstraint,
    register,
    two_vertex_constraint,
)

# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True, order=True)
class Formula:
    op: str  # "var", "bot", "or", "and", "imp"
    args: tuple = ()

    def __str__(self) -> str:
        if self.op == "var":
            return self.args[0]
        if self.op == "bot":
            return "bot"
        sym = {"or": "|", "and": "&", "imp": "->"}[self.op]
        return f"({self.args[0]} {sym} {self.args[1]})"


def var(name: str) -> Formula:
    return Formula("var", (name,))


BOT = Formula("bot")


def Or(a: Formula, b: Formula) -> Formula:
    return Formula("or", (a, b))


def And(a: Formula, b: Formula) -> Formula:
    return Formula("and", (a, b))


def Imp(a: Formula, b: Formula) -> Formula:
    return Formula("imp", (a, b))


_TOKEN = re.compile(r"\s*(->|\||&|\(|\)|[A-Za-z_][\w']*)")


def parse_formula(text: str) -> Formula:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot read formula at {text[pos:]!r}")
        toks.append(m.group(1))
        pos = m.end()
    f, rest = _parse_imp(toks)
    if rest:
        raise ValueError(f"trailing input in formula {text!r}")
    return f


def _parse_imp(toks):
    left, toks = _parse_or(toks)
    if toks and toks[0] == "->":
        right, toks = _parse_imp(toks[1:])
        return Imp(left, right), toks
    return left, toks


def _parse_or(toks):
    left, toks = _parse_and(toks)
    while toks and toks[0] == "|":
        right, toks = _parse_and(toks[1:])
        left = Or(left, right)
    return left, toks


def _parse_and(toks):
    left, toks = _parse_atom(toks)
    while toks and toks[0] == "&":
        right, toks = _parse_atom(toks[1:])
        left = And(left, right)
    return left, toks


def _parse_atom(toks):
    if not toks:
        raise ValueError("unexpected end of formula")
    t = toks[0]
    if t == "(":
        f, rest = _parse_imp(toks[1:])
        if not rest or rest[0] != ")":
            raise ValueError("missing ')'")
        return f, rest[1:]
    if t == "bot":
        return BOT, toks[1:]
    if re.fullmatch(r"[A-Za-z_][\w']*", t):
        return var(t), toks[1:]
    raise ValueError(f"unexpected token {t!r}")


# ---------------------------------------------------------------------------
# sequents


@dataclass(frozen=True, order=True)
class Sequent:
    """``X => Y`` with both sides kept as sorted tuples (canonical multisets)."""

    ant: tuple[Formula, ...] = ()
    suc: tuple[Formula, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "ant", tuple(sorted(self.ant)))
        object.__setattr__(self, "suc", tuple(sorted(self.suc)))

    def add_ant(self, *fs: Formula) -> Sequent:
        return Sequent(self.ant + fs, self.suc)

    def add_suc(self, *fs: Formula) -> Sequent:
        return Sequent(self.ant, self.suc + fs)

    def drop_ant(self, f: Formula) -> Sequent:
        return Sequent(_remove_one(self.ant, f), self.suc)

    def drop_suc(self, f: Formula) -> Sequent:
        return Sequent(self.ant, _remove_one(self.suc, f))

    def __str__(self) -> str:
        return f"{', '.join(map(str, self.ant))} => {', '.join(map(str, self.suc))}".strip()


def _remove_one(side: tuple[Formula, ...], f: Formula) -> tuple[Formula, ...]:
    i = side.index(f)
    return side[:i] + side[i + 1:]


def _split_top(text: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur)
    return [p for p in (q.strip() for q in parts) if p]


def parse_sequent(text: str) -> Sequent:
    if "=>" not in text:
        raise ValueError(f"sequent needs '=>': {text!r}")
    left, right = text.split("=>", 1)
    return Sequent(
        tuple(parse_formula(p) for p in _split_top(left)),
        tuple(parse_formula(p) for p in _split_top(right)),
    )


def seq(text: str) -> Sequent:
    return parse_sequent(text)


# ---------------------------------------------------------------------------
# sequent constraints


def _vars(side: tuple[Formula, ...]) -> set[Formula]:
    return {f for f in side if f.op == "var"}


def _id_check(labels, delta) -> bool:
    s1, s2 = labels
    return bool(_vars(s1.ant) & _vars(s2.suc))


def _principal(side: tuple[Formula, ...], op: str) -> list[Formula]:
    return sorted({f for f in side if f.op == op})


def _or_check(labels, delta) -> bool:
    s1, s2, s = labels
    return any(
        s1 == s.drop_ant(f).add_ant(f.args[0]) and s2 == s.drop_ant(f).add_ant(f.args[1])
        for f in _principal(s.ant, "or")
    )


def _or_synth(s: Sequent, delta) -> Iterator[tuple[Sequent, Sequent]]:
    for f in _principal(s.ant, "or"):
        rest = s.drop_ant(f)
        yield rest.add_ant(f.args[0]), rest.add_ant(f.args[1])


def _impr_check(labels, delta) -> bool:
    s1, s2, s = labels
    return any(
        s1 == s.drop_suc(f) and s2 == Sequent((f.args[0],), (f.args[1],))
        for f in _principal(s.suc, "imp")
    )


def _impr_synth(s: Sequent, delta) -> Iterator[tuple[Sequent, Sequent]]:
    for f in _principal(s.suc, "imp"):
        yield s.drop_suc(f), Sequent((f.args[0],), (f.args[1],))


def _impl_check(labels, delta) -> bool:
    s1, t1, s2, t2, s, t = labels
    return any(
        s1 == s and s2 == s and t1 == t.add_suc(f.args[0]) and t2 == t.add_ant(f.args[1])
        for f in _principal(s.ant, "imp")
    )


def _impl_synth(s: Sequent, t: Sequent, delta):
    for f in _principal(s.ant, "imp"):
        yield ((s, t.add_suc(f.args[0])), (s, t.add_ant(f.args[1])))


def _impl_merged(labels, delta) -> bool:
    s1, s2, s = labels
    return any(
        s1 == s.add_suc(f.args[0]) and s2 == s.add_ant(f.args[1]) for f in _principal(s.ant, "imp")
    )


def _impl_synth_merged(s: Sequent, delta):
    for f in _principal(s.ant, "imp"):
        yield (s.add_suc(f.args[0]), s.add_ant(f.args[1]))


ID = register(SequentConstraint("g3i.id", _id_check, arity=2))
OR_L = register(SequentConstraint("g3i.orL", _or_check, arity=3, synthesize=_or_synth))
IMP_R = register(SequentConstraint("g3i.impR", _impr_check, arity=3, synthesize=_impr_synth))
IMP_L = register(
    SequentConstraint(
        "g3i.impL",
        _impl_check,
        arity=6,
        synthesize=_impl_synth,
        merged=_impl_merged,
        synthesize_merged=_impl_synth_merged,
    )
)


def g3i_sequent_constraints() -> dict[str, SequentConstraint]:
    return {"id": ID, "orL": OR_L, "impL": IMP_L, "impR": IMP_R}


# ---------------------------------------------------------------------------
# calculi

E = Sym("E")


def build_g3i(explicit: bool = True) -> Calculus:
    rules = (
        InitialRule("id", two_vertex_constraint(EMPTY, E), ID),
        LocalRule("orL", OR_L, 2),
        ReachabilityRule("impL", ((EMPTY, E), (EMPTY, E)), IMP_L),
        ExpansionRule("impR", IMP_R, "E", True),
        HornRule("ref", "E", (), True),
        HornRule("tra", "E", (E, E), True),
    )
    c = Calculus(frozenset({"E"}), rules, "g3i-explicit")
    if explicit:
        return c
    top = f_op(c, horn_rules(c))
    return top.with_rules(top.rules, name="g3i-implicit")


class G3ICodec:
    name = "g3i"

    @staticmethod
    def parse(text: str) -> Sequent:
        return parse_sequent(text)

    @staticmethod
    def format(label: Sequent) -> str:
        return str(label)


def label_weight(s: Sequent) -> int:
    return sum(_weight(f) for f in s.ant + s.suc)


def _weight(f: Formula) -> int:
    return 1 + sum(_weight(a) for a in f.args if isinstance(a, Formula))


def count_formulas(s: Sequent) -> Counter:
    return Counter(s.ant) + Counter(s.suc)

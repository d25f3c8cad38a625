"""Line-oriented text formats for calculi, g-sequents, proofs and space reports.

Every document starts with ``format <kind> <version>``.  Blank lines and
lines starting with ``#`` are ignored.  Top-level records start in column 0
and their sub-records are indented.  The printers are canonical:
``print(parse(print(x))) == print(x)`` for every object.

Calculus::

    format horncalc-calculus 1
    name g3i-explicit
    alphabet E
    grammar G1
      E -> E E
      inv(E) -> inv(E) inv(E)
    end
    rule id initial relation=g3i.id
      vertex w
      vertex u
      edge w u grammar=G0 start=E
    rule orL local relation=g3i.orL premises=2
    rule impR expansion relation=g3i.impR type=E dir=forward
    rule tra horn type=E dir=forward rhs=E.E
    rule impL reachability relation=g3i.impL coincident=yes
      premise grammar=G0 start=E

``G0`` always names the empty grammar.  Horn right-hand sides join symbols
with ``.`` and write the empty string as ``eps``.

G-sequents and proofs encode vertex labels through a named codec
(``atom`` for plain strings, ``g3i`` for intuitionistic sequents); labels are
JSON string literals.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Any, Callable

from .calculus import Calculus
from .gsequent import GSequent
from .proofs import ProofStep
from .rewriting import EMPTY, ESystem, Production, close_under_converse, fmt_word, production, sym, word
from .rules import (
    ConstraintEdge,
    ExpansionRule,
    HornRule,
    InitialRule,
    Inst,
    LocalRule,
    ReachabilityRule,
    Rule,
    StructuralConstraint,
    lookup,
)

log = logging.getLogger(__name__)

VERSION = 1


class FormatError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line else ""
        super().__init__(where + message)


# ---------------------------------------------------------------------------
# label codecs


@dataclass(frozen=True)
class Codec:
    name: str
    parse: Callable[[str], Any]
    format: Callable[[Any], str]


def _g3i_codec() -> Codec:
    from .g3i import G3ICodec

    return Codec("g3i", G3ICodec.parse, G3ICodec.format)


_CODECS: dict[str, Callable[[], Codec]] = {
    "atom": lambda: Codec("atom", str, str),
    "g3i": _g3i_codec,
}


def get_codec(name: str) -> Codec:
    try:
        return _CODECS[name]()
    except KeyError:
        raise FormatError(f"unknown label codec {name!r}") from None


# ---------------------------------------------------------------------------
# tokenizing


@dataclass
class _Line:
    no: int
    indent: int
    text: str

    def fields(self) -> list[str]:
        return self.text.split()

    def opts(self, start: int) -> dict[str, str]:
        out: dict[str, str] = {}
        for tok in self.fields()[start:]:
            if "=" not in tok:
                raise FormatError(f"expected key=value, got {tok!r}", self.no, self._col(tok))
            k, v = tok.split("=", 1)
            out[k] = v
        return out

    def _col(self, tok: str) -> int:
        return self.indent + self.text.find(tok) + 1

    def fail(self, msg: str) -> FormatError:
        return FormatError(msg, self.no, self.indent + 1)


def _lines(text: str) -> list[_Line]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append(_Line(i, len(raw) - len(raw.lstrip()), stripped))
    return out


def _header(lines: list[_Line], kind: str) -> list[_Line]:
    if not lines:
        raise FormatError(f"empty document, expected 'format {kind} {VERSION}'")
    f = lines[0].fields()
    if f[:2] != ["format", kind]:
        raise lines[0].fail(f"expected 'format {kind} {VERSION}'")
    if len(f) != 3 or f[2] != str(VERSION):
        raise lines[0].fail(f"unsupported {kind} version {f[2:] or '?'}")
    return lines[1:]


def _need(opts: dict[str, str], key: str, line: _Line) -> str:
    if key not in opts:
        raise line.fail(f"missing {key}=")
    return opts[key]


def _bool(v: str, line: _Line) -> bool:
    if v not in ("yes", "no"):
        raise line.fail(f"expected yes or no, got {v!r}")
    return v == "yes"


def _dir(v: str, line: _Line) -> bool:
    if v not in ("forward", "backward"):
        raise line.fail(f"dir must be forward or backward, got {v!r}")
    return v == "forward"


# ---------------------------------------------------------------------------
# calculi


def parse_calculus(text: str, *, auto_close: bool = False) -> Calculus:
    lines = _header(_lines(text), "horncalc-calculus")
    name = ""
    alphabet: set[str] | None = None
    grammars: dict[str, ESystem] = {"G0": EMPTY}
    rules: list[Rule] = []
    i = 0

    def block(start: int) -> tuple[list[_Line], int]:
        j = start
        while j < len(lines) and lines[j].indent > 0:
            j += 1
        return lines[start:j], j

    while i < len(lines):
        ln = lines[i]
        if ln.indent:
            raise ln.fail("unexpected indented line")
        f = ln.fields()
        i += 1
        if f[0] == "name":
            name = " ".join(f[1:])
        elif f[0] == "alphabet":
            alphabet = set(f[1:])
        elif f[0] == "grammar":
            if len(f) != 2 or f[1] in grammars:
                raise ln.fail("grammar needs a new name")
            body, i = block(i)
            if i >= len(lines) or lines[i].text != "end":
                raise ln.fail(f"grammar {f[1]} is missing 'end'")
            i += 1
            prods: list[Production] = []
            for b in body:
                try:
                    prods.append(production(b.text))
                except ValueError as e:
                    raise b.fail(str(e)) from None
            try:
                grammars[f[1]] = ESystem(prods)
            except ValueError as e:
                if not auto_close:
                    raise ln.fail(f"grammar {f[1]}: {e}") from None
                log.warning("grammar %s was not converse-closed; closing it", f[1])
                grammars[f[1]] = close_under_converse(prods)
        elif f[0] == "rule":
            body, i = block(i)
            rules.append(_parse_rule(ln, body, grammars))
        else:
            raise ln.fail(f"unknown record {f[0]!r}")
    if alphabet is None:
        raise FormatError("missing 'alphabet' record")
    if not rules:
        raise FormatError("a calculus file must declare at least one rule")
    try:
        return Calculus(frozenset(alphabet), tuple(rules), name)
    except ValueError as e:
        raise FormatError(str(e)) from None


def _grammar(opts: dict[str, str], line: _Line, grammars: dict[str, ESystem]) -> ESystem:
    gname = _need(opts, "grammar", line)
    if gname not in grammars:
        raise line.fail(f"undeclared grammar {gname!r}")
    return grammars[gname]


def _relation(opts: dict[str, str], line: _Line):
    try:
        return lookup(opts.get("relation", "any"))
    except KeyError as e:
        raise line.fail(str(e.args[0])) from None


def _parse_rule(ln: _Line, body: list[_Line], grammars: dict[str, ESystem]) -> Rule:
    f = ln.fields()
    if len(f) < 3:
        raise ln.fail("rule needs an id and a kind")
    rid, kind = f[1], f[2]
    opts = ln.opts(3)
    try:
        if kind == "initial":
            vs: list[str] = []
            edges: list[ConstraintEdge] = []
            for b in body:
                bf = b.fields()
                if bf[0] == "vertex" and len(bf) == 2:
                    vs.append(bf[1])
                elif bf[0] == "edge" and len(bf) >= 3:
                    o = b.opts(3)
                    edges.append(ConstraintEdge(bf[1], bf[2], _grammar(o, b, grammars), sym(_need(o, "start", b))))
                else:
                    raise b.fail(f"unexpected {bf[0]!r} in an initial rule")
            return InitialRule(rid, StructuralConstraint(tuple(vs), tuple(edges)), _relation(opts, ln))
        if body and kind != "reachability":
            raise body[0].fail(f"{kind} rules take no sub-records")
        if kind == "local":
            return LocalRule(rid, _relation(opts, ln), int(_need(opts, "premises", ln)))
        if kind == "expansion":
            return ExpansionRule(
                rid, _relation(opts, ln), _need(opts, "type", ln), _dir(opts.get("dir", "forward"), ln)
            )
        if kind == "horn":
            rhs = _need(opts, "rhs", ln)
            return HornRule(
                rid, _need(opts, "type", ln), word(rhs.replace(".", " ")), _dir(opts.get("dir", "forward"), ln)
            )
        if kind == "reachability":
            cons = []
            for b in body:
                if b.fields()[0] != "premise":
                    raise b.fail("reachability rules list 'premise' records")
                o = b.opts(1)
                cons.append((_grammar(o, b, grammars), sym(_need(o, "start", b))))
            if not cons:
                raise ln.fail("reachability rule without premises")
            return ReachabilityRule(
                rid, tuple(cons), _relation(opts, ln), _bool(opts.get("coincident", "yes"), ln)
            )
    except FormatError:
        raise
    except ValueError as e:
        raise ln.fail(str(e)) from None
    raise ln.fail(f"unknown rule kind {kind!r}")


def print_calculus(c: Calculus) -> str:
    names: dict[ESystem, str] = {EMPTY: "G0"}
    order: list[ESystem] = []

    def gname(g: ESystem) -> str:
        if g not in names:
            names[g] = f"G{len(names)}"
            order.append(g)
        return names[g]

    body: list[str] = []
    for r in c.rules:
        if isinstance(r, InitialRule):
            body.append(f"rule {r.id} initial relation={r.relation.name}")
            body += [f"  vertex {v}" for v in r.constraint.vertices]
            for e in r.constraint.edges:
                body.append(f"  edge {e.src} {e.dst} grammar={gname(e.grammar)} start={e.start}")
        elif isinstance(r, LocalRule):
            body.append(f"rule {r.id} local relation={r.relation.name} premises={r.premises}")
        elif isinstance(r, ExpansionRule):
            d = "forward" if r.forward else "backward"
            body.append(f"rule {r.id} expansion relation={r.relation.name} type={r.etype} dir={d}")
        elif isinstance(r, HornRule):
            d = "forward" if r.forward else "backward"
            rhs = fmt_word(r.rhs).replace(" ", ".")
            body.append(f"rule {r.id} horn type={r.etype} dir={d} rhs={rhs}")
        elif isinstance(r, ReachabilityRule):
            co = "yes" if r.allow_coincident else "no"
            body.append(f"rule {r.id} reachability relation={r.relation.name} coincident={co}")
            for g, a in r.constraints:
                body.append(f"  premise grammar={gname(g)} start={a}")
        else:
            raise TypeError(f"cannot print rule {r!r}")
    out = [f"format horncalc-calculus {VERSION}"]
    if c.name:
        out.append(f"name {c.name}")
    out.append("alphabet " + " ".join(sorted(c.alphabet)))
    for g in order:
        out.append(f"grammar {names[g]}")
        out += [f"  {p}" for p in g.sorted()]
        out.append("end")
    return "\n".join(out + body) + "\n"


# ---------------------------------------------------------------------------
# g-sequents


def _parse_gs_body(body: list[_Line], codec: Codec) -> GSequent:
    labels: dict[str, Any] = {}
    edges: list[tuple[str, str, str]] = []
    for b in body:
        f = b.fields()
        if f[0] == "vertex" and len(f) >= 3:
            raw = b.text[len("vertex"):].strip()[len(f[1]):].strip()
            try:
                labels[f[1]] = codec.parse(json.loads(raw))
            except (ValueError, TypeError) as e:
                raise b.fail(f"bad label for vertex {f[1]}: {e}") from None
        elif f[0] == "edge" and len(f) == 4:
            edges.append((f[1], f[2], f[3]))
        else:
            raise b.fail(f"unexpected record {f[0]!r} in a g-sequent")
    try:
        return GSequent(labels, edges)
    except ValueError as e:
        raise (body[0].fail(str(e)) if body else FormatError(str(e))) from None


def _print_gs_body(g: GSequent, codec: Codec, indent: str) -> list[str]:
    out = [f"{indent}vertex {v} {json.dumps(codec.format(g.label(v)))}" for v in sorted(g.vertices)]
    out += [f"{indent}edge {a.etype} {a.src} {a.dst}" for a in sorted(g.edges)]
    return out


def parse_gsequent(text: str) -> GSequent:
    lines = _header(_lines(text), "horncalc-gsequent")
    if not lines or lines[0].fields()[0] != "codec":
        raise FormatError("expected a 'codec' record")
    codec = get_codec(lines[0].fields()[1])
    return _parse_gs_body(lines[1:], codec)


def print_gsequent(g: GSequent, codec: str = "atom") -> str:
    cd = get_codec(codec)
    out = [f"format horncalc-gsequent {VERSION}", f"codec {cd.name}"] + _print_gs_body(g, cd, "")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# proofs


def parse_proof(text: str) -> ProofStep:
    lines = _header(_lines(text), "horncalc-proof")
    if not lines or lines[0].fields()[0] != "codec":
        raise FormatError("expected a 'codec' record")
    codec = get_codec(lines[0].fields()[1])
    steps: dict[str, ProofStep] = {}
    root: str | None = None
    i = 1
    while i < len(lines):
        ln = lines[i]
        f = ln.fields()
        i += 1
        if f[0] == "root" and len(f) == 2:
            root = f[1]
            continue
        if f[0] != "step" or len(f) < 2:
            raise ln.fail(f"unexpected record {f[0]!r}")
        j = i
        while j < len(lines) and lines[j].indent > 0:
            j += 1
        body, i = lines[i:j], j
        opts = ln.opts(2)
        inst = {}
        for pair in filter(None, opts.get("inst", "").split(",")):
            if ":" not in pair:
                raise ln.fail(f"bad instantiation entry {pair!r}")
            k, v = pair.split(":", 1)
            inst[k] = v
        prems = []
        for pid in filter(None, opts.get("premises", "").split(",")):
            if pid not in steps:
                raise ln.fail(f"premise {pid!r} is not defined above")
            prems.append(steps[pid])
        steps[f[1]] = ProofStep(_parse_gs_body(body, codec), _need(opts, "rule", ln), Inst.of(inst), tuple(prems))
    if root is None or root not in steps:
        raise FormatError("missing or unknown 'root' record")
    return steps[root]


def print_proof(p: ProofStep, codec: str = "atom") -> str:
    cd = get_codec(codec)
    out = [f"format horncalc-proof {VERSION}", f"codec {cd.name}"]
    counter = [0]

    def emit(step: ProofStep) -> str:
        ids = [emit(q) for q in step.premises]
        sid = f"s{counter[0]}"
        counter[0] += 1
        head = f"step {sid} rule={step.rule_id}"
        if step.inst.binding:
            head += " inst=" + ",".join(f"{k}:{v}" for k, v in step.inst.binding)
        if ids:
            head += " premises=" + ",".join(ids)
        out.append(head)
        out.extend(_print_gs_body(step.conclusion, cd, "  "))
        return sid

    out.append(f"root {emit(p)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# space reports


def print_space(space) -> str:
    from .calculus import is_explicit, is_implicit

    out = [f"format horncalc-space {VERSION}", f"direction {space.direction}", f"members {len(space.members)}"]
    for i, m in enumerate(space.members):
        flags = []
        if is_explicit(m):
            flags.append("explicit")
        if is_implicit(m):
            flags.append("implicit")
        rules = ",".join(sorted(r.id for r in m.rules))
        out.append(f"member {i} {space.label(i)} rules={rules}" + (" " + " ".join(flags) if flags else ""))
    for a, b in sorted(space.hasse()):
        out.append(f"cover {a} {b}")
    return "\n".join(out) + "\n"


def document_codec(text: str) -> str:
    """Codec name declared by a g-sequent or proof document."""
    for ln in _lines(text)[1:2]:
        f = ln.fields()
        if f[0] == "codec" and len(f) == 2:
            return f[1]
    raise FormatError("expected a 'codec' record after the format line")

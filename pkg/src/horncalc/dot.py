"""Graphviz DOT export for g-sequents, proofs, dependency graphs and spaces."""

from __future__ import annotations

import json

from .dependency import DependencyGraph
from .formats import get_codec
from .gsequent import GSequent
from .proofs import ProofStep


def _q(text: str) -> str:
    # JSON string escaping is a valid DOT quoted string
    return json.dumps(str(text))


def gsequent_dot(g: GSequent, codec: str = "atom", name: str = "gsequent") -> str:
    cd = get_codec(codec)
    out = [f"digraph {_q(name)} {{"]
    for v in sorted(g.vertices):
        out.append(f"  {_q(v)} [label={_q(v + ': ' + cd.format(g.label(v)))}];")
    for a in sorted(g.edges):
        out.append(f"  {_q(a.src)} -> {_q(a.dst)} [label={_q(a.etype)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def _gs_text(g: GSequent, codec) -> str:
    rel = ", ".join(f"{a.src}{a.etype}{a.dst}" for a in sorted(g.edges))
    seqs = ", ".join(f"{v}:{codec.format(g.label(v))}" for v in sorted(g.vertices))
    return f"{rel} |- {seqs}" if rel else f"|- {seqs}"


def proof_dot(p: ProofStep, codec: str = "atom", name: str = "proof") -> str:
    """Proof tree with the root at the bottom; edges run from premise to conclusion."""
    cd = get_codec(codec)
    out = [f"digraph {_q(name)} {{", "  rankdir=BT;", "  node [shape=box];"]
    for path, step in p.positions():
        # root is "n", its premises "n0", "n1", then "n0_0" and so on
        nid = "n" + "_".join(map(str, path))
        out.append(f"  {nid} [label={_q(step.rule_id + ': ' + _gs_text(step.conclusion, cd))}];")
        for i in range(len(step.premises)):
            out.append(f"  {nid}_{i} -> {nid};" if path else f"  n{i} -> n;")
    out.append("}")
    return "\n".join(out) + "\n"


def dependency_dot(dg: DependencyGraph, name: str = "dependencies") -> str:
    out = [f"digraph {_q(name)} {{"]
    for n in sorted(dg.nodes, key=dg.name):
        out.append(f"  {_q(dg.name(n))};")
    for a, b in sorted(dg.edges, key=lambda e: (dg.name(e[0]), dg.name(e[1]))):
        out.append(f"  {_q(dg.name(a))} -> {_q(dg.name(b))};")
    out.append("}")
    return "\n".join(out) + "\n"


def hasse_dot(space, name: str = "space") -> str:
    """Hasse diagram with edges drawn from each member to the members covering it."""
    out = [f"digraph {_q(name)} {{", "  rankdir=BT;"]
    for i in range(len(space.members)):
        out.append(f"  m{i} [label={_q(space.label(i))}];")
    for a, b in sorted(space.hasse()):
        out.append(f"  m{a} -> m{b};")
    out.append("}")
    return "\n".join(out) + "\n"

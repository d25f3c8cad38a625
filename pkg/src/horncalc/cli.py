"""Command-line interface.

Exit status: 0 on success, 1 when a verification fails (invalid proof,
unreachable target, failed translation), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import dot
from .calculus import Calculus, horn_rules, non_horn_grammar
from .dependency import build_dg, build_dg_horn
from .formats import (
    FormatError,
    document_codec,
    parse_calculus,
    parse_gsequent,
    parse_proof,
    print_gsequent,
    print_proof,
    print_space,
)
from .lattice import SpaceConfig, explicate, implicate
from .proofs import validate
from .reach import ReachQuery, reach_witness
from .rewriting import close_under_converse, fmt_word, production, sym
from .transform import Trace, TransformError, invhorn_saturate, translate

log = logging.getLogger("horncalc")


class UsageError(Exception):
    pass


def _read(path: str | None, what: str) -> str:
    if path is None:
        raise UsageError(f"--{what} is required")
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {what} file: {e}") from None


def _calculus(args, flag: str = "calculus") -> Calculus:
    return parse_calculus(_read(getattr(args, flag), flag), auto_close=args.auto_close)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _space_config(args) -> SpaceConfig:
    return SpaceConfig(horn_cap=args.horn_cap, budget_secs=args.budget_secs)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args) -> int:
    c = _calculus(args)
    text = _read(args.proof, "proof")
    p = parse_proof(text)
    diag = validate(p, c, allow_open=args.allow_open)
    if diag:
        print(f"ok: proof of {len(p.conclusion.vertices)}-vertex g-sequent validates in {c.name or 'calculus'}")
        return 0
    where = "/".join(map(str, diag.path)) or "root"
    print(f"invalid at {where}: {diag.message}", file=sys.stderr)
    return 1


def cmd_reach(args) -> int:
    g = parse_gsequent(_read(args.gsequent, "gsequent"))
    prods = [production(t) for t in args.grammar.split(";") if t.strip()] if args.grammar else []
    grammar = close_under_converse(prods)
    q = ReachQuery(g, args.source, args.dest, grammar, sym(args.start))
    wit = reach_witness(q)
    if wit is None:
        print(f"unreachable: no {args.start}-path from {args.source} to {args.dest}")
        return 1
    print(f"reachable: string {fmt_word(wit.string)} walk {' '.join(wit.walk)}")
    return 0


def cmd_saturate(args) -> int:
    text = _read(args.gsequent, "gsequent")
    g = parse_gsequent(text)
    c = _calculus(args)
    hs = horn_rules(c)
    if args.horn:
        wanted = set(args.horn.split(","))
        hs = [h for h in hs if h.id in wanted]
        missing = wanted - {h.id for h in hs}
        if missing:
            raise UsageError(f"unknown Horn rules: {', '.join(sorted(missing))}")
    _emit(print_gsequent(invhorn_saturate(g, hs), document_codec(text)), args.out)
    return 0


def _space(args, fn) -> int:
    c = _calculus(args)
    space = fn(c, _space_config(args))
    _emit(print_space(space), args.out)
    if args.dot:
        Path(args.dot).write_text(dot.hasse_dot(space))
    return 0


def cmd_implicate(args) -> int:
    return _space(args, implicate)


def cmd_explicate(args) -> int:
    return _space(args, explicate)


def cmd_transform(args) -> int:
    src = _calculus(args)
    tgt = _calculus(args, "target")
    text = _read(args.proof, "proof")
    p = parse_proof(text)
    trace = Trace() if args.trace else None
    try:
        out = translate(p, src, tgt, trace)
    except TransformError as e:
        print(f"transform failed: {e}", file=sys.stderr)
        return 1
    if trace:
        for phase, detail in trace.events:
            print(f"trace: {phase} {detail}".rstrip(), file=sys.stderr)
    _emit(print_proof(out, document_codec(text)), args.out)
    return 0


def cmd_export_dot(args) -> int:
    kind = args.kind
    if kind == "proof":
        text = _read(args.proof, "proof")
        _emit(dot.proof_dot(parse_proof(text), document_codec(text)), args.out)
    elif kind == "gsequent":
        text = _read(args.gsequent, "gsequent")
        _emit(dot.gsequent_dot(parse_gsequent(text), document_codec(text)), args.out)
    elif kind == "dependencies":
        c = _calculus(args)
        dg = build_dg_horn(horn_rules(c)) if horn_rules(c) else build_dg(non_horn_grammar(c))
        _emit(dot.dependency_dot(dg), args.out)
    else:
        c = _calculus(args)
        fn = implicate if kind == "upward" else explicate
        _emit(dot.hasse_dot(fn(c, _space_config(args))), args.out)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="horncalc", description="Labelled calculi with Horn rules")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--calculus", help="calculus file")
    common.add_argument("--proof", help="proof file")
    common.add_argument("--target", help="target calculus file")
    common.add_argument("--gsequent", help="g-sequent file")
    common.add_argument("--out", help="write the result here instead of standard output")
    common.add_argument("--horn-cap", type=int, default=10, help="largest Horn set a space may start from")
    common.add_argument("--budget-secs", type=float, default=None, help="wall-clock budget for space computations")
    common.add_argument("--trace", action="store_true", help="print translation phases to standard error")
    common.add_argument("--auto-close", action="store_true", help="close grammars under converse instead of failing")
    common.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="validate a proof")
    s.add_argument("--allow-open", action="store_true", help="accept open assumption leaves")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("reach", parents=[common], help="grammar-constrained reachability query")
    s.add_argument("--grammar", default="", help="productions separated by ';' (closed under converse)")
    s.add_argument("--start", required=True, help="start symbol")
    s.add_argument("--from", dest="source", required=True, help="source vertex")
    s.add_argument("--to", dest="dest", required=True, help="target vertex")
    s.set_defaults(fn=cmd_reach)

    s = sub.add_parser("saturate", parents=[common], help="saturate a g-sequent under Horn rules")
    s.add_argument("--horn", help="comma-separated Horn rule ids (default: all)")
    s.set_defaults(fn=cmd_saturate)

    for name, fn in (("implicate", cmd_implicate), ("explicate", cmd_explicate)):
        s = sub.add_parser(name, parents=[common], help=f"compute the {name} space")
        s.add_argument("--dot", help="also write the Hasse diagram as DOT")
        s.set_defaults(fn=fn)

    s = sub.add_parser("transform", parents=[common], help="translate a proof to a related calculus")
    s.set_defaults(fn=cmd_transform)

    s = sub.add_parser("export-dot", parents=[common], help="export DOT")
    s.add_argument("kind", choices=["proof", "gsequent", "dependencies", "upward", "downward"])
    s.set_defaults(fn=cmd_export_dot)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.fn(args)
    except (UsageError, FormatError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except TimeoutError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

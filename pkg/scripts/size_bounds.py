"""Measure proof sizes before and after translation across space edges.

For every generated proof we record the up-translation ratio
``size(out) / size(in)`` (must stay <= 1) and the down-translation ratio
``size(out) / size(in)**2``; the largest down ratio is the constant ``c``.

    python3 scripts/size_bounds.py --seed 0 --count 200
"""

from __future__ import annotations

import argparse
import json
import random
from dataclasses import dataclass, field

from horncalc.calculus import Calculus
from horncalc.formats import parse_calculus
from horncalc.g3i import build_g3i
from horncalc.generators import random_g3i_proof, synthetic_proof
from horncalc.lattice import implicate
from horncalc.proofs import ProofStep, proof_size, quantity
from horncalc.transform import translate_down, translate_up

try:
    from importlib.resources import files
except ImportError:  # pragma: no cover
    files = None


@dataclass
class SizeReport:
    cases: int = 0
    up_max: float = 0.0
    down_max: float = 0.0
    up_violations: list = field(default_factory=list)
    worst_down: tuple = ()


def example_space():
    text = (files("horncalc") / "fixtures" / "four_rule.calc").read_text()
    return implicate(parse_calculus(text))


def _edges(space) -> list[tuple[Calculus, Calculus]]:
    # all comparable pairs, not just covers
    n = len(space.members)
    return [(space.members[a], space.members[b]) for a in range(n) for b in range(n) if a != b and space.leq(a, b)]


def proof_pool(seed: int, count: int) -> list[tuple[ProofStep, Calculus, list]]:
    """Half G3I proofs, half synthetic proofs over the example calculus; quantity <= 30."""
    rng = random.Random(seed)
    ex, im = build_g3i(True), build_g3i(False)
    g3i_pairs = [(ex, im)]
    sp = example_space()
    ex_pairs = _edges(sp)
    pool = []
    while len(pool) < count:
        if len(pool) % 2 == 0:
            p = random_g3i_proof(rng, ex)
            if p is not None and quantity(p) <= 30:
                pool.append((p, ex, g3i_pairs))
        else:
            lo, _ = rng.choice(ex_pairs)
            p = synthetic_proof(rng, lo, n_vertices=rng.randint(2, 5), n_edges=rng.randint(1, 7))
            if p is not None and quantity(p) <= 30:
                pool.append((p, lo, [pr for pr in ex_pairs if pr[0] == lo]))
    return pool


def measure(seed: int, count: int) -> SizeReport:
    rep = SizeReport()
    rng = random.Random(seed + 1)
    for p, lo, pairs in proof_pool(seed, count):
        _, hi = rng.choice(pairs)
        up = translate_up(p, lo, hi)
        down = translate_down(up, hi, lo)
        rep.cases += 1
        r_up = proof_size(up) / proof_size(p)
        r_down = proof_size(down) / proof_size(up) ** 2
        if r_up > 1:
            rep.up_violations.append((proof_size(p), proof_size(up)))
        rep.up_max = max(rep.up_max, r_up)
        if r_down > rep.down_max:
            rep.down_max = r_down
            rep.worst_down = (proof_size(up), proof_size(down), quantity(up))
    return rep


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=200)
    args = ap.parse_args()
    rep = measure(args.seed, args.count)
    print(json.dumps(rep.__dict__, indent=2))


if __name__ == "__main__":
    main()

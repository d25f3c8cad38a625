"""Search for G3I proofs in both variants and compare them.

For each random goal, finds a proof in the explicit calculus and one in the
implicit calculus, then reports sizes, how many implicit proofs are
polytrees, and the sizes of the proofs translated between the variants.

    python3 scripts/g3i_search.py --seed 0 --goals 50
"""

from __future__ import annotations

import argparse
import random
import statistics

from horncalc.g3i import build_g3i
from horncalc.generators import random_g3i_goal
from horncalc.proofs import SearchConfig, find_proof, is_polytree_proof, proof_size
from horncalc.transform import translate_down, translate_up


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--goals", type=int, default=50)
    ap.add_argument("--depth", type=int, default=6)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    ex, im = build_g3i(True), build_g3i(False)
    cfg = SearchConfig(max_depth=args.depth, budget_secs=2.0)
    rows = []
    unprovable = 0
    for _ in range(args.goals):
        goal = random_g3i_goal(rng)
        pe = find_proof(goal, ex, cfg)
        pi = find_proof(goal, im, cfg)
        if pe is None or pi is None:
            unprovable += 1
            continue
        up = translate_up(pe, ex, im)
        down = translate_down(pi, im, ex)
        rows.append((proof_size(pe), proof_size(pi), proof_size(up), proof_size(down), is_polytree_proof(pi)))

    print(f"goals: {args.goals}, proved in both variants: {len(rows)}, not found: {unprovable}")
    if not rows:
        return
    cols = list(zip(*rows))
    for name, col in zip(("explicit", "implicit", "explicit->implicit", "implicit->explicit"), cols[:4]):
        print(f"  size {name:20s} mean {statistics.mean(col):7.1f}  max {max(col)}")
    print(f"  implicit proofs that are polytrees: {sum(cols[4])}/{len(rows)}")


if __name__ == "__main__":
    main()

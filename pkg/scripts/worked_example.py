"""Print the upward space of the bundled four-rule calculus and its dual.

    python3 scripts/worked_example.py [--dot out.dot]
"""

from __future__ import annotations

import argparse
import time
from importlib.resources import files

from horncalc.dot import hasse_dot
from horncalc.formats import parse_calculus
from horncalc.lattice import explicate, implicate, space_isomorphism


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dot", help="write the upward Hasse diagram here")
    args = ap.parse_args()

    c = parse_calculus((files("horncalc") / "fixtures" / "four_rule.calc").read_text())
    t0 = time.perf_counter()
    up = implicate(c)
    down = explicate(up.members[up.top()])
    iso = space_isomorphism(up, down)
    elapsed = time.perf_counter() - t0

    print(f"upward space: {len(up.members)} members")
    for a, b in sorted(up.hasse()):
        print(f"  {up.label(a)}  <  {up.label(b)}")
    print(f"downward space from the top: {len(down.members)} members")
    for a, b in sorted(down.hasse()):
        print(f"  {down.label(a)}  <  {down.label(b)}")
    print(f"isomorphic: {bool(iso)} {iso.reason}".rstrip())
    print(f"time: {elapsed:.3f}s")
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(hasse_dot(up))


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""Census of negative walls near the diagonal positive 3-plane of U^3.

Enumerates indivisible dual functionals of fixed negative square inside
growing majorant balls and cross-checks each count against the box oracle.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from hkgeom import standard_lattice
from hkgeom.walls import brute_force_walls, enumerate_walls_near

SPAN = [[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0], [0, 0, 0, 0, 1, 1]]


def main() -> int:
    lattice = standard_lattice("U3")
    print("square  radius  walls  oracle-agrees")
    for d in (-2, -4, -6):
        for radius in (2, 4, 8):
            walls = enumerate_walls_near(lattice, SPAN, d, radius)
            oracle = brute_force_walls(lattice, SPAN, d, radius, box=6)
            agrees = [w.coords for w in walls] == [w.coords for w in oracle]
            print(f"{d:6d}  {radius:6d}  {len(walls):5d}  {agrees}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

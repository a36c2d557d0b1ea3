#!/usr/bin/env python3
"""Trace the low-lying spectrum of H(s) along the anneal.

Quick look at where the minimum gap sits for a seeded instance; useful for
choosing excursion depths s' that stay on the adiabatic side of the
crossing.

Usage:
    python scripts/gap_trace.py --graph ring:6 --seed 5 --levels 4
"""

import argparse
import sys

import numpy as np

from qals import Schedule
from qals import ising, qsim
from qals.cli import _parse_graph


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graph", default="ring:6", help="path:N|ring:N|complete:N|king:RxC")
    ap.add_argument("--dist", default="pm_one", choices=ising.DISTRIBUTIONS)
    ap.add_argument("--seed", type=int, default=5)
    ap.add_argument("--levels", type=int, default=3)
    ap.add_argument("--points", type=int, default=41)
    args = ap.parse_args(argv)

    prob = ising.random_instance(_parse_graph(args.graph), args.dist, args.seed)
    sch = Schedule()
    grid = np.linspace(0.0, 1.0, args.points)
    rows = qsim.spectrum_trace(prob, sch, grid, args.levels)

    header = ["s"] + [f"lambda_{i}" for i in range(args.levels)] + ["gap_01"]
    print(",".join(header))
    min_gap, min_s = float("inf"), None
    for row in rows:
        gap = row[2] - row[1]
        if gap < min_gap:
            min_gap, min_s = gap, row[0]
        print(",".join(repr(v) for v in row) + f",{gap!r}")
    print(f"# min gap {min_gap:.6g} at s = {min_s:.4g}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Re-derive the height-level matrices from scratch and compare them with
the stored tables up to the allowed row operations.

    python scripts/rederive_matrices.py A3 B3 C4 D5 G2 F4 E6

The rank-7 comparison also works but takes several minutes.
"""

import argparse
import sys
import time

from idealarr.bases import paper_matrices
from idealarr.matsolver import solve_chain
from idealarr.rootsys import LieType, build

DEFAULT_TYPES = ["A2", "A3", "A4", "A5", "B2", "B3", "B4",
                 "C2", "C3", "C4", "D4", "D5", "G2", "F4", "E6"]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("types", nargs="*", default=DEFAULT_TYPES)
    args = parser.parse_args()

    bad = 0
    for tag in args.types or DEFAULT_TYPES:
        rs = build(LieType.parse(tag))
        t0 = time.time()
        _, reports = solve_chain(rs, reference=paper_matrices(rs.lie_type))
        wrong = [r.m for r in reports if not r.equivalent]
        bad += len(wrong)
        verdict = "all equivalent" if not wrong else f"NOT equivalent at {wrong}"
        print(f"{tag:4} {len(reports):2} levels: {verdict}  ({time.time() - t0:6.1f}s)")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Certification campaign over one or more Lie types.

Exhaustive exact runs for the small types, sweep-backed randomized runs for
the rank 6-8 systems.  Prints one summary row per type and exits nonzero on
any failure.

    python scripts/run_certification.py A3 B3 C3 D4 G2 F4
    python scripts/run_certification.py E6 --mode random
    python scripts/run_certification.py E8 --mode random --sample 50 --structured
"""

import argparse
import sys
import time

from idealarr.bases import default_basis
from idealarr.ideals import LowerIdeal, height_ideal
from idealarr.rootsys import LieType, build, lambda_set
from idealarr.saito import verify_type

DEFAULT_TYPES = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4",
                 "C2", "C3", "C4", "D4", "D5", "G2", "F4"]


def structured_ideals(rs):
    out = []
    for m in range(0, rs.height + 1):
        trunc = height_ideal(rs, m)
        out.append(trunc)
        if m < rs.height:
            for j in sorted(lambda_set(rs, m + 1)):
                out.append(LowerIdeal(trunc.members | {(j, j + m + 1)}))
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("types", nargs="*", default=DEFAULT_TYPES)
    parser.add_argument("--mode", choices=["exact", "random"])
    parser.add_argument("--sample", type=int)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--structured", action="store_true",
                        help="force all height truncations and extensions into the sample")
    args = parser.parse_args()

    failures = 0
    for tag in args.types or DEFAULT_TYPES:
        t = LieType.parse(tag)
        rs = build(t)
        psi = default_basis(rs)
        mode = args.mode or ("random" if t.family == "E" else "exact")
        extras = structured_ideals(rs) if args.structured else ()
        t0 = time.time()
        reports = list(
            verify_type(rs, psi, mode=mode, sample=args.sample, seed=args.seed,
                        extra_ideals=extras)
        )
        bad = [r for r in reports if not r.ok]
        failures += len(bad)
        print(f"{tag:4} {mode:6} {len(reports) - len(bad):5}/{len(reports):<5} passed"
              f"  ({time.time() - t0:7.1f}s)")
        for r in bad:
            print(f"     FAIL h={r.h}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

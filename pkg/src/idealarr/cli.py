"""Command-line front end.

Subcommands: roots, ideals, basis, verify, solve-matrices, cohomology.
Exit codes: 0 all checks pass, 1 a mathematical check failed or an
internal error occurred, 2 usage error.  JSON output is deterministic for
a fixed (command, seed, version).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bases import default_basis, paper_matrices
from .cohomology import generators
from .exactmath import format_rational
from .ideals import HessenbergFunction, enumerate_lower_ideals, hessenberg_from_ideal
from .matsolver import solve_chain
from .rootsys import LieType, build
from .saito import verify_ideal, verify_type

USAGE_ERROR = 2
CHECK_FAILED = 1

# `basis --json` refuses to expand rank-8 families past this height.
BASIS_EMIT_CAP_RANK8 = 8


def _parse_type(tag: str) -> LieType:
    try:
        return LieType.parse(tag)
    except ValueError as exc:
        raise SystemExit(_usage(str(exc)))


def _usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return USAGE_ERROR


def _parse_h(text: str) -> HessenbergFunction:
    try:
        return HessenbergFunction.of(int(v) for v in text.split(","))
    except ValueError:
        raise SystemExit(_usage(f"malformed h-value list {text!r}"))


def _emit(obj, as_json: bool) -> None:
    if as_json:
        print(json.dumps(obj, sort_keys=True))
    else:
        print(obj)


def cmd_roots(args) -> int:
    t = _parse_type(args.type)
    rs = build(t)
    doc = {
        "type": str(t),
        "roots": [
            {"i": i, "j": j, "form": [format_rational(c) for c in rs.raw_roots[(i, j)]]}
            for (i, j) in rs.root_indices()
        ],
        "covers": [
            [{"i": a[0], "j": a[1]}, {"i": b[0], "j": b[1]}]
            for a, b in sorted(rs.covers)
        ],
    }
    print(json.dumps(doc, sort_keys=True))
    return 0


def cmd_ideals(args) -> int:
    t = _parse_type(args.type)
    rs = build(t)
    if args.count:
        print(sum(1 for _ in enumerate_lower_ideals(rs)))
        return 0
    for ideal in enumerate_lower_ideals(rs):
        h = hessenberg_from_ideal(rs, ideal)
        print(json.dumps(list(h.values)))
    return 0


def cmd_basis(args) -> int:
    t = _parse_type(args.type)
    rs = build(t)
    if args.matrices:
        doc = {"type": str(t), "matrices": paper_matrices(t).to_obj()}
        print(json.dumps(doc, sort_keys=True))
        return 0
    psi = default_basis(rs)
    cap = BASIS_EMIT_CAP_RANK8 if rs.rank >= 8 else rs.height
    entries = []
    for (i, j) in psi.grid():
        if j - i > cap:
            continue
        entries.append({"i": i, "j": j, **psi.entry(i, j).to_obj()})
    doc = {"type": str(t), "source": psi.source, "derivations": entries}
    if cap < rs.height:
        doc["height_cap"] = cap
    print(json.dumps(doc, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    t = _parse_type(args.type)
    rs = build(t)
    psi = default_basis(rs)
    mode = args.mode or ("random" if t.family == "E" else "exact")
    if args.h and args.all_ideals:
        raise SystemExit(_usage("--h and --all-ideals are mutually exclusive"))
    if args.h:
        h = _parse_h(args.h)
        from .ideals import ideal_from_hessenberg

        try:
            ideal_from_hessenberg(rs, h)
        except ValueError as exc:
            raise SystemExit(_usage(str(exc)))
        reports = [verify_ideal(rs, psi, h, mode=mode, seed=args.seed)]
    else:
        reports = list(
            verify_type(rs, psi, mode=mode, sample=args.sample, seed=args.seed)
        )
    ok = all(r.ok for r in reports)
    if args.json:
        manifest = {
            "command": "verify",
            "type": str(t),
            "mode": mode,
            "seed": args.seed,
            "sample": args.sample,
            "version": __version__,
            "items": [r.to_obj() for r in reports],
            "pass": ok,
        }
        print(json.dumps(manifest, sort_keys=True))
    else:
        for r in reports:
            mark = "ok" if r.ok else "FAIL"
            print(f"h={','.join(map(str, r.h))} {mark} ({r.saito_mode}, {r.elapsed:.2f}s)")
        print(f"{sum(r.ok for r in reports)}/{len(reports)} passed")
    return 0 if ok else CHECK_FAILED


def cmd_solve_matrices(args) -> int:
    t = _parse_type(args.type)
    rs = build(t)
    reference = paper_matrices(t) if args.compare_paper else None
    fam, reports = solve_chain(rs, reference=reference)
    levels = []
    ok = True
    for rep in reports:
        item = {
            "m": rep.m,
            "index": list(rep.lam),
            "P": [[format_rational(c) for c in row] for row in rep.solved],
        }
        if args.compare_paper:
            item["equivalent"] = rep.equivalent
            ok = ok and rep.equivalent
        levels.append(item)
    doc = {
        "command": "solve-matrices",
        "type": str(t),
        "version": __version__,
        "levels": levels,
        "pass": ok,
    }
    print(json.dumps(doc, sort_keys=True))
    return 0 if ok else CHECK_FAILED


def cmd_cohomology(args) -> int:
    t = _parse_type(args.type)
    rs = build(t)
    if not args.h:
        raise SystemExit(_usage("cohomology requires --h"))
    h = _parse_h(args.h)
    psi = default_basis(rs)
    try:
        pres = generators(rs, psi, h)
    except ValueError as exc:
        raise SystemExit(_usage(str(exc)))
    if args.json:
        doc = pres.to_obj()
        if not args.poincare:
            doc.pop("poincare")
        print(json.dumps(doc, sort_keys=True))
    else:
        for idx, g in enumerate(pres.generators):
            print(f"f[{idx}] = {g!r}")
        if args.poincare:
            print("poincare:", pres.poincare)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="idealarr",
        description="Exact uniform bases for ideal subarrangements of Weyl "
        "arrangements: construction, certification, and cohomology output.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("roots", help="emit the positive-root table as JSON")
    p.add_argument("type")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("ideals", help="enumerate lower ideals")
    p.add_argument("type")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--count", action="store_true")
    g.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_ideals)

    p = sub.add_parser("basis", help="emit the uniform basis or its matrices")
    p.add_argument("type")
    p.add_argument("--json", action="store_true")
    p.add_argument("--matrices", action="store_true")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("verify", help="certify the basis over lower ideals")
    p.add_argument("type")
    p.add_argument("--all-ideals", action="store_true")
    p.add_argument("--h")
    p.add_argument("--mode", choices=["exact", "random"])
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve-matrices", help="re-derive the level matrices")
    p.add_argument("type")
    p.add_argument("--compare-paper", action="store_true")
    p.set_defaults(func=cmd_solve_matrices)

    p = sub.add_parser("cohomology", help="emit presentation generators")
    p.add_argument("type")
    p.add_argument("--h")
    p.add_argument("--poincare", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cohomology)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except BrokenPipeError:
        return 0
    except Exception as exc:  # surface module errors as exit 1
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())

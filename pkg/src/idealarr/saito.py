"""Certification of uniform bases: exact and randomized determinant tests.

For an ideal with tuple h, the candidate basis is (psi(i, h(i)))_i.  Exact
mode checks membership root by root, the degree sum against the ideal
size, and that the determinant of the pairing matrix against the simple
roots is a nonzero constant multiple of the product of the ideal's
defining forms.  Randomized mode replaces only the determinant step: the
matrix is evaluated at several integer points and the ratio to the
evaluated product must be one shared nonzero constant.

Large matrix-form bases (the rank 6-8 systems) are never expanded.
Membership of psi(i, j) against a fixed root alpha is decided by running
the defining recursion inside the quotient by alpha: one sweep per root
settles every grid entry at once, exactly, over scaled integers.  The
same recursion evaluated at a rational point produces the matrix entries
for the randomized determinant.  Sweeps and point tables are cached on
the RecursionOracle, so campaigns over many ideals stay cheap.
"""

from __future__ import annotations

import os
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Optional, Sequence

from ._linalg import det as _num_det
from .bases import UniformBasis
from .derivation import apply, divide_by_linear
from .exactmath import (
    Mono,
    PolyMatrix,
    Polynomial,
    QuotientSpec,
    determinant,
    evaluate,
    proportionality,
)
from .ideals import (
    HessenbergFunction,
    LowerIdeal,
    enumerate_lower_ideals,
    hessenberg_from_ideal,
    ideal_from_hessenberg,
)
from .rootsys import RootIndex, RootSystem

Q = Fraction

POINT_BOUND = 10**6
DEFAULT_POINTS = 5


@dataclass
class VerificationReport:
    h: tuple[int, ...]
    membership_ok: bool
    degree_sum_ok: bool
    saito_mode: str
    saito_ok: bool
    constant: Optional[Q]
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.membership_ok and self.degree_sum_ok and self.saito_ok

    def to_obj(self) -> dict:
        from .exactmath import format_rational

        return {
            "h": list(self.h),
            "membership_ok": self.membership_ok,
            "degree_sum_ok": self.degree_sum_ok,
            "saito_mode": self.saito_mode,
            "saito_ok": self.saito_ok,
            "constant": None if self.constant is None else format_rational(self.constant),
            "ok": self.ok,
        }


# -- recursion oracle -------------------------------------------------------


def _lin_mul(lin: dict[Mono, int], poly: dict[Mono, int]) -> dict[Mono, int]:
    out: dict[Mono, int] = {}
    for mt, ct in lin.items():
        for mp, cp in poly.items():
            m = tuple(a + b for a, b in zip(mt, mp))
            s = out.get(m, 0) + ct * cp
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def _add_scaled(acc: dict[Mono, int], poly: dict[Mono, int], c: int) -> None:
    for m, v in poly.items():
        s = acc.get(m, 0) + c * v
        if s:
            acc[m] = s
        else:
            del acc[m]


def _int_terms(terms: dict[Mono, Q], scale: int) -> dict[Mono, int]:
    return {m: int(c * scale) for m, c in terms.items()}


class RecursionOracle:
    """Exact sweep- and evaluation-based access to a matrix-form basis."""

    def __init__(self, psi: UniformBasis):
        if psi.view is None:
            raise ValueError("oracle needs a basis with a recursion view")
        self.psi = psi
        self.rs = psi.rs
        self.view = psi.view
        self._flags: dict[RootIndex, dict[RootIndex, bool]] = {}
        self._captures: dict[RootIndex, dict[int, Polynomial]] = {}
        self._points: dict[tuple, dict[RootIndex, tuple[Q, ...]]] = {}

    # membership ------------------------------------------------------

    def _sweep(self, root_key: RootIndex) -> None:
        if root_key in self._flags:
            return
        # capture the level paired against this root by the step-by-step
        # construction, so one full sweep serves both uses of the root
        capture = root_key[1] - root_key[0] - 2
        flags, values = self._run_sweep(root_key, capture_level=capture)
        self._flags[root_key] = flags
        self._captures[root_key] = {"level": capture, "values": values}

    def divisible(self, key: RootIndex, root_key: RootIndex) -> bool:
        self._sweep(root_key)
        return self._flags[root_key][key]

    def release_capture(self, root_key: RootIndex) -> None:
        """Drop the cached level values for a root (the zero flags stay)."""
        self._captures.pop(root_key, None)

    def sweep_spec(self, root_key: RootIndex) -> QuotientSpec:
        view = self.view
        forms = [list(rel) for rel in view.quotient.relations]
        forms.append(list(self.rs.raw_roots[root_key]))
        return QuotientSpec.from_relations(self.rs.ambient_dim, forms)

    def sweep_level_values(self, root_key: RootIndex, level: int) -> dict[int, Polynomial]:
        """psi(i, i+level) paired with the root, reduced modulo the root,
        up to one nonzero rational scale shared across the level."""
        cached = self._captures.get(root_key)
        if cached is not None and cached["level"] == level:
            return cached["values"]
        _, values = self._run_sweep(root_key, capture_level=level, stop_at_capture=True)
        return values

    def _run_sweep(
        self,
        root_key: RootIndex,
        capture_level: Optional[int] = None,
        stop_at_capture: bool = False,
    ):
        view = self.view
        alpha = self.rs.raw_roots[root_key]
        spec = self.sweep_spec(root_key)
        zero_mono = (0,) * self.rs.ambient_dim

        base_consts = {
            i: sum(a * b for a, b in zip(vec, alpha))
            for i, vec in view.base_vectors.items()
        }
        scale = lcm(*(c.denominator for c in base_consts.values()))
        values: dict[int, dict[Mono, int]] = {}
        flags: dict[RootIndex, bool] = {}
        for i, c in base_consts.items():
            values[i] = {zero_mono: int(c * scale)} if c else {}
            flags[(i, i)] = not values[i]
        captured: dict[int, Polynomial] = {}
        if capture_level == 0:
            captured = {
                i: Polynomial({m: Q(c) for m, c in v.items()}, spec, _normal=True)
                for i, v in values.items()
            }
        top = view.max_level
        if stop_at_capture and capture_level is not None:
            top = min(capture_level, view.max_level)
        for m in range(1, top + 1):
            lam, p = view.levels[m]
            reduced = {
                j: Polynomial.linear_form(view.parent_raw_roots[(j, j + m)], spec).terms
                for j in lam
            }
            den_r = lcm(
                *(c.denominator for t in reduced.values() for c in t.values())
            ) if any(reduced.values()) else 1
            den_p = lcm(*(p[a][b].denominator for a in range(len(lam)) for b in range(len(lam))))
            prods = {
                j: _lin_mul(_int_terms(reduced[j], den_r), values[j]) for j in lam
            }
            nxt: dict[int, dict[Mono, int]] = {}
            for a, i in enumerate(lam):
                acc: dict[Mono, int] = {}
                for b, j in enumerate(lam):
                    c = p[a][b]
                    if c:
                        _add_scaled(acc, prods[j], int(c * den_p))
                nxt[i] = acc
                flags[(i, i + m)] = not acc
            values = nxt
            if capture_level == m:
                captured = {
                    i: Polynomial({mm: Q(c) for mm, c in v.items()}, spec, _normal=True)
                    for i, v in values.items()
                }
        return flags, captured

    # point evaluation --------------------------------------------------

    def full_point(self, pt: Sequence[Q]) -> tuple[Q, ...]:
        spec = self.view.quotient
        free = spec.free_vars
        if len(pt) != len(free):
            raise ValueError("point must be given on the free coordinates")
        full = [Q(0)] * spec.ambient_dim
        for k, v in zip(free, pt):
            full[k] = Q(v)
        for var, row in zip(spec.eliminated, spec.relations):
            full[var] = -sum(c * full[k] for k, c in enumerate(row) if k != var)
        return tuple(full)

    def point_vectors(self, pt: tuple[Q, ...]) -> dict[RootIndex, tuple[Q, ...]]:
        """Coefficient vectors of every grid derivation evaluated at pt."""
        cached = self._points.get(pt)
        if cached is not None:
            return cached
        view = self.view
        full = self.full_point(pt)
        table: dict[RootIndex, tuple[Q, ...]] = {}
        values = {}
        for i, vec in view.base_vectors.items():
            values[i] = tuple(vec)
            table[(i, i)] = values[i]
        for m in range(1, view.max_level + 1):
            lam, p = view.levels[m]
            rvals = {
                j: sum(c * x for c, x in zip(view.parent_raw_roots[(j, j + m)], full))
                for j in lam
            }
            nxt = {}
            for a, i in enumerate(lam):
                acc = [Q(0)] * self.rs.ambient_dim
                for b, j in enumerate(lam):
                    c = p[a][b]
                    if c:
                        cv = c * rvals[j]
                        prev = values[j]
                        for k in range(len(acc)):
                            acc[k] += cv * prev[k]
                nxt[i] = tuple(acc)
                table[(i, i + m)] = nxt[i]
            values = nxt
        self._points[pt] = table
        return table


# -- verification -----------------------------------------------------------


def _member_ok(psi: UniformBasis, key, root_key, rs: RootSystem) -> bool:
    cache = psi._div_cache
    pair = (key, root_key)
    hit = cache.get(pair)
    if hit is None:
        root = rs.positive_roots[root_key]
        hit = divide_by_linear(apply(psi.entry(*key), root), root) is not None
        cache[pair] = hit
    return hit


def random_points(rs: RootSystem, seed: int, count: int) -> list[tuple[Q, ...]]:
    """Seeded integer points on the free coordinates, off the arrangement."""
    rng = random.Random(seed)
    free = rs.quotient.free_vars
    points = []
    while len(points) < count:
        pt = tuple(Q(rng.randint(-POINT_BOUND, POINT_BOUND)) for _ in free)
        if all(evaluate(poly, pt) != 0 for poly in rs.positive_roots.values()):
            points.append(pt)
    return points


def verify_ideal(
    rs: RootSystem,
    psi: UniformBasis,
    h: HessenbergFunction,
    mode: str = "exact",
    seed: int = 0,
    points: Optional[Sequence[tuple[Q, ...]]] = None,
    oracle: Optional[RecursionOracle] = None,
) -> VerificationReport:
    """Run the three checks for one ideal; raises on an invalid h."""
    if mode not in ("exact", "random"):
        raise ValueError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    ideal = ideal_from_hessenberg(rs, h)
    keys = [(i, v) for i, v in zip(rs.rows, h.values)]
    members = ideal.sorted_members()
    if oracle is None and psi.view is not None:
        oracle = RecursionOracle(psi)

    if oracle is not None:
        membership_ok = all(
            oracle.divisible(key, r) for key in keys for r in members
        )
        # matrix-form entries are homogeneous of their grid height by
        # construction (one linear factor per level)
        degree_sum_ok = sum(j - i for (i, j) in keys) == len(ideal)
    else:
        membership_ok = all(_member_ok(psi, key, r, rs) for key in keys for r in members)
        degree_sum_ok = (
            sum(0 if i == j else psi.entry(i, j).degree for (i, j) in keys)
            == len(ideal)
        )

    if mode == "exact":
        entries = [
            apply(psi.entry(i, j), rs.simple_roots[k])
            for (i, j) in keys
            for k in rs.rows
        ]
        det = determinant(PolyMatrix(rs.rank, rs.rank, entries))
        product = Polynomial.constant(1, rs.quotient)
        for r in members:
            product = product * rs.positive_roots[r]
        constant = proportionality(det, product)
        saito_ok = constant is not None
    else:
        pts = list(points) if points is not None else random_points(rs, seed, DEFAULT_POINTS)
        if len(pts) < DEFAULT_POINTS:
            raise ValueError(f"randomized mode needs at least {DEFAULT_POINTS} points")
        simple_vecs = {k: rs.simple_roots[k].linear_coefficients() for k in rs.rows}
        constant = None
        saito_ok = True
        for pt in pts:
            if oracle is not None:
                table = oracle.point_vectors(pt)
                coeff_vals = {key: table[key] for key in keys}
            else:
                coeff_vals = {
                    key: [evaluate(c, pt) for c in psi.entry(*key).coeffs]
                    for key in keys
                }
            mat = [
                [
                    sum(a * b for a, b in zip(coeff_vals[key], simple_vecs[k]))
                    for k in rs.rows
                ]
                for key in keys
            ]
            det_val = _num_det(mat)
            prod_val = Q(1)
            for r in members:
                prod_val *= evaluate(rs.positive_roots[r], pt)
            ratio = det_val / prod_val
            if ratio == 0:
                saito_ok = False
                break
            if constant is None:
                constant = ratio
            elif ratio != constant:
                saito_ok = False
                break
        if not saito_ok:
            constant = None

    return VerificationReport(
        h.values,
        membership_ok,
        degree_sum_ok,
        mode,
        saito_ok,
        constant,
        time.perf_counter() - start,
    )


def verify_type(
    rs: RootSystem,
    psi: UniformBasis,
    mode: str = "exact",
    sample: Optional[int] = None,
    seed: int = 0,
    extra_ideals: Iterable[LowerIdeal] = (),
    oracle: Optional[RecursionOracle] = None,
) -> Iterator[VerificationReport]:
    """Verify every lower ideal, or a seeded sample plus any forced extras.

    Reports stream in the canonical ideal order.  Randomized-mode points
    are drawn once per campaign from the seed, so the oracle's sweep and
    point tables are shared across ideals.
    """
    ideals = list(enumerate_lower_ideals(rs))
    if sample is not None and sample < len(ideals):
        rng = random.Random(seed)
        chosen = rng.sample(range(len(ideals)), sample)
        picked = [ideals[k] for k in sorted(chosen)]
    else:
        picked = ideals
    forced = {frozenset(i.members) for i in extra_ideals}
    if forced:
        have = {frozenset(i.members) for i in picked}
        picked += [LowerIdeal(f) for f in forced - have]
        picked.sort(key=lambda i: (len(i.members), i.sorted_members()))
    points = random_points(rs, seed, DEFAULT_POINTS) if mode == "random" else None
    if oracle is None and psi.view is not None:
        oracle = RecursionOracle(psi)
    hs = [hessenberg_from_ideal(rs, ideal) for ideal in picked]
    threads = int(os.environ.get("IDEALARR_THREADS", "1"))
    if threads > 1 and oracle is None:
        yield from _verify_parallel(rs, psi, hs, mode, seed, threads)
        return
    for h in hs:
        yield verify_ideal(rs, psi, h, mode=mode, seed=seed, points=points, oracle=oracle)


def _verify_parallel(rs, psi, hs, mode, seed, threads):
    from concurrent.futures import ProcessPoolExecutor

    tags = [(str(rs.lie_type), psi.source, h.values, mode, seed) for h in hs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        yield from pool.map(_verify_worker, tags, chunksize=4)


_WORKER_CACHE: dict = {}


def _verify_worker(tag):
    type_tag, source, h_values, mode, seed = tag
    key = (type_tag, source)
    if key not in _WORKER_CACHE:
        from .bases import build_from_matrices, closed_form, default_basis, paper_matrices
        from .rootsys import LieType, build

        rs = build(LieType.parse(type_tag))
        if source == "closed-form":
            psi = closed_form(rs)
        elif source == "matrix-recursion":
            psi = build_from_matrices(rs, paper_matrices(rs.lie_type))
        else:
            psi = default_basis(rs)
        _WORKER_CACHE[key] = (rs, psi)
    rs, psi = _WORKER_CACHE[key]
    points = random_points(rs, seed, DEFAULT_POINTS) if mode == "random" else None
    return verify_ideal(rs, psi, HessenbergFunction.of(h_values), mode, seed, points)


def value_sweep(
    view,
    spec: QuotientSpec,
    base_consts: dict[int, Q],
    top: int,
) -> dict[RootIndex, Polynomial]:
    """Run the recursion on scalar values with prescribed level-0 constants,
    reducing everything in the given quotient; returns the exact value of
    every (i, i+m) slot up to the requested level.

    With base p_i at row k and zero elsewhere this computes the projection
    of every basis derivation paired against the k-th simple root.
    """
    zero_mono = (0,) * spec.ambient_dim
    scale = lcm(*(Q(c).denominator for c in base_consts.values()))
    values: dict[int, dict[Mono, int]] = {}
    out: dict[RootIndex, Polynomial] = {}
    for i, c in base_consts.items():
        c = Q(c)
        values[i] = {zero_mono: int(c * scale)} if c else {}
        out[(i, i)] = Polynomial({m: Q(v, scale) for m, v in values[i].items()}, spec, _normal=True)
    for m in range(1, min(top, view.max_level) + 1):
        lam, p = view.levels[m]
        reduced = {
            j: Polynomial.linear_form(view.parent_raw_roots[(j, j + m)], spec).terms
            for j in lam
        }
        den_r = lcm(*(c.denominator for t in reduced.values() for c in t.values())) if any(
            reduced.values()
        ) else 1
        den_p = lcm(*(p[a][b].denominator for a in range(len(lam)) for b in range(len(lam))))
        prods = {j: _lin_mul(_int_terms(reduced[j], den_r), values[j]) for j in lam}
        scale *= den_r * den_p
        nxt: dict[int, dict[Mono, int]] = {}
        for a, i in enumerate(lam):
            acc: dict[Mono, int] = {}
            for b, j in enumerate(lam):
                c = p[a][b]
                if c:
                    _add_scaled(acc, prods[j], int(c * den_p))
            nxt[i] = acc
            out[(i, i + m)] = Polynomial(
                {mm: Q(v, scale) for mm, v in acc.items()}, spec, _normal=True
            )
        values = nxt
    return out

"""Root system data: positive roots in chain coordinates, poset, exponents.

Every supported system carries a fixed decomposition of the positive roots
into disjoint maximal chains, one chain per simple root.  The pair (i, j)
with i < j <= i + e_i names the j-th root of chain i; its height is j - i
and (i, i+1) is the i-th simple root.  E7 and E6 are generated from the E8
tables by restriction to the reflection subgroup orthogonal to the dropped
fundamental coweights, which keeps a single transcribed source of truth.

Roots are stored twice: as raw ambient coefficient vectors (orthogonal to
the quotient relations, used for inner products and restriction) and as
normalized polynomials in the quotient ring.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import tables
from ._linalg import rref
from .exactmath import Polynomial, QuotientSpec

Q = Fraction
RootIndex = tuple[int, int]

_VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 4,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class LieType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _VALID_RANKS:
            raise ValueError(f"unknown family {self.family!r}")
        if not _VALID_RANKS[self.family](self.rank):
            raise ValueError(f"unsupported type {self.family}{self.rank}")

    @classmethod
    def parse(cls, tag: str) -> "LieType":
        m = re.fullmatch(r"([A-Ga-g])(\d+)", tag.strip())
        if not m:
            raise ValueError(f"cannot parse Lie type {tag!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


class RootSystem:
    """Immutable bundle of per-type root data; build via :func:`build`."""

    def __init__(
        self,
        lie_type: LieType,
        ambient_dim: int,
        quotient: QuotientSpec,
        rows: tuple[int, ...],
        raw_simple: dict[int, tuple[Q, ...]],
        raw_roots: dict[RootIndex, tuple[Q, ...]],
    ):
        self.lie_type = lie_type
        self.ambient_dim = ambient_dim
        self.quotient = quotient
        self.rows = rows
        self.raw_simple = raw_simple
        self.raw_roots = raw_roots
        self.exponents = {
            i: max(j for (a, j) in raw_roots if a == i) - i for i in rows
        }
        self.simple_roots = {
            i: Polynomial.linear_form(v, quotient) for i, v in raw_simple.items()
        }
        self.positive_roots = {
            ij: Polynomial.linear_form(v, quotient) for ij, v in raw_roots.items()
        }
        self.coweights = self._solve_coweights()
        self.covers = self._regenerate_covers()
        self._validate()

    # -- construction helpers ------------------------------------------

    def _solve_coweights(self) -> dict[int, tuple[Q, ...]]:
        n = self.ambient_dim
        base_rows = [list(rel) for rel in self.quotient.relations]
        out: dict[int, tuple[Q, ...]] = {}
        for i in self.rows:
            aug = [row + [Q(0)] for row in base_rows]
            for j in self.rows:
                aug.append(list(self.raw_simple[j]) + [Q(1) if i == j else Q(0)])
            red, pivots = rref(aug)
            if pivots != list(range(n)) or len(red) < n:
                raise ValueError("simple roots and relations do not span")
            out[i] = tuple(red[k][-1] for k in range(n))
        return out

    def _regenerate_covers(self) -> frozenset[tuple[RootIndex, RootIndex]]:
        by_vec = {v: ij for ij, v in self.raw_roots.items()}
        covers = set()
        for ij, v in self.raw_roots.items():
            for s in self.rows:
                below = tuple(a - b for a, b in zip(v, self.raw_simple[s]))
                if below in by_vec:
                    covers.add((by_vec[below], ij))
        return frozenset(covers)

    def _validate(self) -> None:
        seen = set(self.raw_roots.values())
        if len(seen) != len(self.raw_roots):
            raise AssertionError("duplicate positive roots in table")
        for i in self.rows:
            if self.raw_roots[(i, i + 1)] != self.raw_simple[i]:
                raise AssertionError(f"chain {i} does not start at the simple root")
            for j in range(i + 1, i + self.exponents[i]):
                if ((i, j), (i, j + 1)) not in self.covers:
                    raise AssertionError(f"chain {i} broken between {j} and {j + 1}")
        for ij in self.raw_roots:
            if self.height_of(ij) != ij[1] - ij[0]:
                raise AssertionError(f"height mismatch at {ij}")
        for i in self.rows:
            for j in self.rows:
                pair = sum(
                    c * a for c, a in zip(self.coweights[i], self.raw_simple[j])
                )
                if pair != (1 if i == j else 0):
                    raise AssertionError("coweights fail the duality test")

    # -- queries ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def n_positive(self) -> int:
        return len(self.raw_roots)

    @property
    def height(self) -> int:
        return max(self.exponents.values())

    def root_indices(self) -> list[RootIndex]:
        return sorted(self.raw_roots)

    def height_of(self, r: RootIndex) -> int:
        if r not in self.raw_roots:
            raise KeyError(f"unknown root index {r}")
        vec = self.raw_roots[r]
        total = Q(0)
        for i in self.rows:
            total += sum(c * a for c, a in zip(self.coweights[i], vec))
        if total.denominator != 1:
            raise AssertionError(f"non-integral height at {r}")
        return int(total)

    def simple_coefficients(self, r: RootIndex) -> dict[int, Q]:
        vec = self.raw_roots[r]
        return {
            i: sum(c * a for c, a in zip(self.coweights[i], vec))
            for i in self.rows
        }

    def norm_sq(self, i: int) -> Q:
        v = self.raw_simple[i]
        return sum(c * c for c in v)

    def leq(self, a: RootIndex, b: RootIndex) -> bool:
        """a <= b in the root order: b - a is a nonnegative simple combination."""
        diff = tuple(x - y for x, y in zip(self.raw_roots[b], self.raw_roots[a]))
        for i in self.rows:
            c = sum(w * d for w, d in zip(self.coweights[i], diff))
            if c < 0 or c.denominator != 1:
                return False
        return True

    def lower_covers(self, r: RootIndex) -> list[RootIndex]:
        return sorted(a for (a, b) in self.covers if b == r)


def lambda_set(rs: RootSystem, m: int) -> set[int]:
    """Rows whose chain reaches height m (all rows at m = 0)."""
    if m < 0 or m > rs.height:
        raise ValueError(f"level {m} out of range 0..{rs.height}")
    if m == 0:
        return set(rs.rows)
    return {i for i in rs.rows if rs.exponents[i] >= m}


def height_of(rs: RootSystem, r: RootIndex) -> int:
    return rs.height_of(r)


def i_slice(rs: RootSystem, m: int) -> dict[int, Polynomial]:
    """The height-m root of each chain that reaches height m."""
    if m < 1 or m > rs.height:
        raise ValueError(f"level {m} out of range 1..{rs.height}")
    return {i: rs.positive_roots[(i, i + m)] for i in sorted(lambda_set(rs, m))}


# -- per-type tables ------------------------------------------------------


def _classical_tables(t: LieType):
    n = t.rank
    fam = t.family

    def unit(k: int, n_amb: int, c=1) -> list[Q]:
        v = [Q(0)] * n_amb
        v[k - 1] = Q(c)
        return v

    if fam == "A":
        amb = n + 1
        quotient = QuotientSpec.from_relations(amb, [[1] * amb])
        roots = {}
        for i in range(1, n + 1):
            for j in range(i + 1, amb + 1):
                v = unit(i, amb)
                v[j - 1] -= 1
                roots[(i, j)] = tuple(v)
        simple = {i: roots[(i, i + 1)] for i in range(1, n + 1)}
        return amb, quotient, tuple(range(1, n + 1)), simple, roots

    amb = n
    quotient = QuotientSpec.trivial(amb)
    roots = {}
    if fam == "B":
        for i in range(1, n + 1):
            for j in range(i + 1, 2 * n + 2 - i):
                v = unit(i, amb)
                if j <= n:
                    v[j - 1] -= 1
                elif j >= n + 2:
                    v[2 * n + 2 - j - 1] += 1
                roots[(i, j)] = tuple(v)
        simple = {i: roots[(i, i + 1)] for i in range(1, n + 1)}
    elif fam == "C":
        for i in range(1, n + 1):
            for j in range(i + 1, 2 * n + 2 - i):
                if j == 2 * n + 1 - i:
                    v = unit(i, amb, 2)
                else:
                    v = unit(i, amb)
                    if j <= n:
                        v[j - 1] -= 1
                    else:
                        v[2 * n + 1 - j - 1] += 1
                roots[(i, j)] = tuple(v)
        simple = {i: roots[(i, i + 1)] for i in range(1, n + 1)}
    elif fam == "D":
        for i in range(1, n):
            for j in range(i + 1, 2 * n - i):
                v = unit(i, amb)
                if j <= n:
                    v[j - 1] -= 1
                else:
                    v[2 * n - j - 1] += 1
                roots[(i, j)] = tuple(v)
        for j in range(n + 1, 2 * n):
            v = unit(2 * n - j, amb)
            v[n - 1] += 1
            roots[(n, j)] = tuple(v)
        simple = {i: roots[(i, i + 1)] for i in range(1, n + 1)}
    else:
        raise ValueError(f"not a classical family: {fam}")
    return amb, quotient, tuple(range(1, n + 1)), simple, roots


def _g2_tables():
    quotient = QuotientSpec.from_relations(3, [[1, 1, 1]])
    roots = {
        (1, 2): (Q(1), Q(-1), Q(0)),
        (1, 3): (Q(-1), Q(0), Q(1)),
        (1, 4): (Q(0), Q(-1), Q(1)),
        (1, 5): (Q(1), Q(-2), Q(1)),
        (1, 6): (Q(-1), Q(-1), Q(2)),
        (2, 3): (Q(-2), Q(1), Q(1)),
    }
    simple = {1: roots[(1, 2)], 2: roots[(2, 3)]}
    return 3, quotient, (1, 2), simple, roots


def _f4_tables():
    quotient = QuotientSpec.trivial(4)
    roots = {ij: tuple(Q(c) for c in vec) for ij, vec in tables.F4_ROOTS.items()}
    simple = {i: roots[(i, i + 1)] for i in (1, 2, 3, 4)}
    return 4, quotient, (1, 2, 3, 4), simple, roots


def _e8_tables():
    quotient = QuotientSpec.trivial(8)
    roots = tables.e8_root_table()
    simple = {i: roots[(i, i + 1)] for i in range(1, 9)}
    return 8, quotient, tuple(range(1, 9)), simple, roots


def restrict_root_system(rs: RootSystem, keep: set[int], child_type: LieType) -> RootSystem:
    """Subsystem orthogonal to the coweights of the dropped rows.

    Keeps the surviving roots under their original (i, j) names; each
    surviving chain must be a prefix of the parent chain.
    """
    dropped = [i for i in rs.rows if i not in keep]
    if not keep or not dropped:
        raise ValueError("restriction must drop a proper nonempty row set")
    forms = [list(rel) for rel in rs.quotient.relations]
    forms += [list(rs.coweights[i]) for i in dropped]
    quotient = QuotientSpec.from_relations(rs.ambient_dim, forms)

    def survives(vec) -> bool:
        return all(
            sum(c * a for c, a in zip(rs.coweights[i], vec)) == 0 for i in dropped
        )

    roots = {}
    for i in sorted(keep):
        js = sorted(j for (a, j) in rs.raw_roots if a == i and survives(rs.raw_roots[(a, j)]))
        if js != list(range(i + 1, i + 1 + len(js))):
            raise AssertionError(f"restricted chain {i} is not a prefix")
        for j in js:
            roots[(i, j)] = rs.raw_roots[(i, j)]
    simple = {i: roots[(i, i + 1)] for i in sorted(keep)}
    return RootSystem(child_type, rs.ambient_dim, quotient, tuple(sorted(keep)), simple, roots)


_CACHE: dict[LieType, RootSystem] = {}


def build(t: LieType) -> RootSystem:
    """Construct (and cache) the root system for a supported Lie type."""
    if t in _CACHE:
        return _CACHE[t]
    if t.family in "ABCD":
        amb, quotient, rows, simple, roots = _classical_tables(t)
        rs = RootSystem(t, amb, quotient, rows, simple, roots)
    elif t.family == "G":
        amb, quotient, rows, simple, roots = _g2_tables()
        rs = RootSystem(t, amb, quotient, rows, simple, roots)
    elif t.family == "F":
        amb, quotient, rows, simple, roots = _f4_tables()
        rs = RootSystem(t, amb, quotient, rows, simple, roots)
    elif t.family == "E":
        e8 = build(LieType("E", 8)) if t.rank < 8 else None
        if t.rank == 8:
            amb, quotient, rows, simple, roots = _e8_tables()
            rs = RootSystem(t, amb, quotient, rows, simple, roots)
        elif t.rank == 7:
            rs = restrict_root_system(e8, {1, 3, 4, 5, 6, 7, 8}, t)
        else:
            rs = restrict_root_system(e8, {1, 4, 5, 6, 7, 8}, t)
    else:  # pragma: no cover
        raise ValueError(f"unsupported type {t}")
    _CACHE[t] = rs
    return rs

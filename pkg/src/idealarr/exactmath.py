"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial lives in a quotient of Q[x_1,...,x_N] by a set of independent
linear relations (a ``QuotientSpec``).  Each relation eliminates one pivot
variable, so the normal form of every polynomial mentions free variables
only; equality is then a plain term-map comparison.

Representation:

  Mono        = tuple[int, ...]       one exponent per ambient variable
  Polynomial  . terms : dict[Mono, Fraction], no zero coefficients
              . spec  : the active QuotientSpec

Monomials are ordered graded-lexicographically (total degree first, then
the exponent tuple), which fixes the serialization order and the leading
term used by exact division.  No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Optional, Sequence

Mono = tuple[int, ...]
Q = Fraction


def grlex_key(mono: Mono) -> tuple[int, Mono]:
    """Sort key for the graded lexicographic monomial order."""
    return (sum(mono), mono)


def _as_fraction_vector(form: Sequence, n: int) -> tuple[Q, ...]:
    vec = tuple(Q(c) for c in form)
    if len(vec) != n:
        raise ValueError(f"linear form has length {len(vec)}, expected {n}")
    return vec


@dataclass(frozen=True)
class QuotientSpec:
    """Ambient dimension plus reduced linear relations.

    Relations are stored fully reduced: each has pivot coefficient 1 at its
    eliminated variable, eliminated indices are strictly decreasing, and no
    relation mentions another's pivot.  ``substitutions[e]`` gives the
    free-variable linear form that replaces x_e.
    """

    ambient_dim: int
    relations: tuple[tuple[Q, ...], ...]
    eliminated: tuple[int, ...]

    @classmethod
    def trivial(cls, n: int) -> "QuotientSpec":
        return cls(n, (), ())

    @classmethod
    def from_relations(cls, n: int, forms: Iterable[Sequence]) -> "QuotientSpec":
        rows = [list(_as_fraction_vector(f, n)) for f in forms]
        reduced: list[list[Q]] = []
        pivots: list[int] = []
        for row in rows:
            for piv, red in zip(pivots, reduced):
                if row[piv] != 0:
                    c = row[piv]
                    row = [a - c * b for a, b in zip(row, red)]
            nz = [k for k, a in enumerate(row) if a != 0]
            if not nz:
                raise ValueError("dependent or zero relation")
            piv = nz[-1]
            c = row[piv]
            row = [a / c for a in row]
            # re-reduce earlier rows against the new pivot
            for i, red in enumerate(reduced):
                if red[piv] != 0:
                    d = red[piv]
                    reduced[i] = [a - d * b for a, b in zip(red, row)]
            reduced.append(row)
            pivots.append(piv)
        order = sorted(range(len(pivots)), key=lambda i: -pivots[i])
        rel = tuple(tuple(reduced[i]) for i in order)
        elim = tuple(pivots[i] for i in order)
        if len(set(elim)) != len(elim):
            raise ValueError("relations do not have distinct pivots")
        return cls(n, rel, elim)

    @property
    def free_vars(self) -> tuple[int, ...]:
        dead = set(self.eliminated)
        return tuple(k for k in range(self.ambient_dim) if k not in dead)

    def substitution(self, var: int) -> dict[Mono, Q]:
        """Terms of the free-variable form replacing x_var (x_var = -rest)."""
        i = self.eliminated.index(var)
        row = self.relations[i]
        out: dict[Mono, Q] = {}
        for k, c in enumerate(row):
            if k == var or c == 0:
                continue
            mono = [0] * self.ambient_dim
            mono[k] = 1
            out[tuple(mono)] = -c
        return out


class Polynomial:
    """Immutable sparse polynomial in normal form w.r.t. its QuotientSpec."""

    __slots__ = ("terms", "spec", "_scaled_cache")

    def __init__(self, terms: Mapping[Mono, Q], spec: QuotientSpec, _normal: bool = False):
        if _normal:
            self.terms = dict(terms)
        else:
            self.terms = _normalize_terms(terms, spec)
        self.spec = spec
        self._scaled_cache: Optional[tuple[dict[Mono, int], int]] = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, spec: QuotientSpec) -> "Polynomial":
        return cls({}, spec, _normal=True)

    @classmethod
    def constant(cls, c, spec: QuotientSpec) -> "Polynomial":
        c = Q(c)
        if c == 0:
            return cls.zero(spec)
        return cls({(0,) * spec.ambient_dim: c}, spec, _normal=True)

    @classmethod
    def variable(cls, k: int, spec: QuotientSpec) -> "Polynomial":
        mono = [0] * spec.ambient_dim
        mono[k] = 1
        return cls({tuple(mono): Q(1)}, spec)

    @classmethod
    def linear_form(cls, coeffs: Sequence, spec: QuotientSpec) -> "Polynomial":
        vec = _as_fraction_vector(coeffs, spec.ambient_dim)
        terms: dict[Mono, Q] = {}
        for k, c in enumerate(vec):
            if c != 0:
                mono = [0] * spec.ambient_dim
                mono[k] = 1
                terms[tuple(mono)] = c
        return cls(terms, spec)

    # -- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def leading(self) -> tuple[Mono, Q]:
        mono = max(self.terms, key=grlex_key)
        return mono, self.terms[mono]

    def linear_coefficients(self) -> tuple[Q, ...]:
        """Ambient coefficient vector of a polynomial of degree <= 1."""
        if self.degree() > 1:
            raise ValueError("not a linear polynomial")
        vec = [Q(0)] * self.spec.ambient_dim
        for mono, c in self.terms.items():
            if sum(mono) == 0:
                continue
            vec[mono.index(1)] = c
        return tuple(vec)

    def constant_term(self) -> Q:
        return self.terms.get((0,) * self.spec.ambient_dim, Q(0))

    # -- arithmetic ---------------------------------------------------

    def _require_same_spec(self, other: "Polynomial") -> None:
        if self.spec != other.spec:
            raise ValueError("mixed quotient specs")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._require_same_spec(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Q(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out, self.spec, _normal=True)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._require_same_spec(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Q(0)) - c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(out, self.spec, _normal=True)

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()}, self.spec, _normal=True)

    def scale(self, c) -> "Polynomial":
        c = Q(c)
        if c == 0:
            return Polynomial.zero(self.spec)
        return Polynomial({m: c * v for m, v in self.terms.items()}, self.spec, _normal=True)

    def _int_scaled(self) -> tuple[dict[Mono, int], int]:
        """Integer-coefficient copy plus the common denominator."""
        if self._scaled_cache is None:
            den = 1
            for c in self.terms.values():
                den = lcm(den, c.denominator)
            self._scaled_cache = ({m: int(c * den) for m, c in self.terms.items()}, den)
        return self._scaled_cache

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._require_same_spec(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.spec)
        at, ad = self._int_scaled()
        bt, bd = other._int_scaled()
        if len(at) > len(bt):
            at, bt = bt, at
        out: dict[Mono, int] = {}
        for m1, c1 in at.items():
            for m2, c2 in bt.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        den = ad * bd
        terms = {m: Q(c, den) for m, c in out.items() if c}
        return Polynomial(terms, self.spec, _normal=True)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.spec == other.spec
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.spec, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "Polynomial(0)"
        bits = []
        for m in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                f"x{k + 1}" + (f"^{e}" if e > 1 else "")
                for k, e in enumerate(m)
                if e
            )
            bits.append(f"{c}" + (f"*{mono}" if mono else ""))
        return "Polynomial(" + " + ".join(bits) + ")"

    # -- serialization ------------------------------------------------

    def to_obj(self) -> list[dict]:
        return [
            {"e": list(m), "c": format_rational(self.terms[m])}
            for m in sorted(self.terms, key=grlex_key, reverse=True)
        ]


def format_rational(c: Q) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_rational(s: str) -> Q:
    num, _, den = s.partition("/")
    return Q(int(num), int(den) if den else 1)


def _normalize_terms(raw: Mapping[Mono, Q], spec: QuotientSpec) -> dict[Mono, Q]:
    terms: dict[Mono, Q] = {}
    for m, c in raw.items():
        c = Q(c)
        if c == 0:
            continue
        m = tuple(m)
        if len(m) != spec.ambient_dim:
            raise ValueError("monomial length does not match ambient dimension")
        s = terms.get(m, Q(0)) + c
        if s:
            terms[m] = s
        else:
            terms.pop(m, None)
    for var in spec.eliminated:
        if any(m[var] for m in terms):
            terms = _substitute_var(terms, var, spec)
    return terms


def _substitute_var(terms: dict[Mono, Q], var: int, spec: QuotientSpec) -> dict[Mono, Q]:
    repl = spec.substitution(var)
    max_pow = max((m[var] for m in terms), default=0)
    powers: list[dict[Mono, Q]] = [{(0,) * spec.ambient_dim: Q(1)}]
    for _ in range(max_pow):
        prev = powers[-1]
        nxt: dict[Mono, Q] = {}
        for m1, c1 in prev.items():
            for m2, c2 in repl.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = nxt.get(m, Q(0)) + c1 * c2
                if s:
                    nxt[m] = s
                else:
                    nxt.pop(m, None)
        powers.append(nxt)
    out: dict[Mono, Q] = {}
    for m, c in terms.items():
        k = m[var]
        if k == 0:
            s = out.get(m, Q(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
            continue
        base = list(m)
        base[var] = 0
        for pm, pc in powers[k].items():
            mm = tuple(a + b for a, b in zip(base, pm))
            s = out.get(mm, Q(0)) + c * pc
            if s:
                out[mm] = s
            else:
                out.pop(mm, None)
    return out


def normalize(raw: Mapping[Mono, Q], spec: QuotientSpec) -> Polynomial:
    """Normal form of a raw term map: eliminated variables substituted out."""
    return Polynomial(raw, spec)


def divide_by_linear(p: Polynomial, ell: Polynomial) -> Optional[Polynomial]:
    """Exact quotient p / ell for a linear form ell, or None if ell does not divide p.

    ell must be homogeneous of degree 1 and nonzero in the quotient;
    a divisor that normalizes to zero raises ValueError.
    """
    if ell.is_zero():
        raise ValueError("degenerate divisor")
    if ell.degree() != 1 or not ell.is_homogeneous():
        raise ValueError("divisor is not a homogeneous linear form")
    if p.is_zero():
        return p
    p._require_same_spec(ell)
    vec = ell.linear_coefficients()
    pivot = max(k for k, c in enumerate(vec) if c != 0)
    c_piv = vec[pivot]
    rest = dict(ell.terms)
    piv_mono = tuple(1 if k == pivot else 0 for k in range(len(vec)))
    del rest[piv_mono]
    rest_poly = Polynomial(rest, p.spec, _normal=True)

    quotient = Polynomial.zero(p.spec)
    r = p
    while not r.is_zero():
        top = max(m[pivot] for m in r.terms)
        if top == 0:
            return None
        layer = {
            tuple(e - 1 if k == pivot else e for k, e in enumerate(m)): c / c_piv
            for m, c in r.terms.items()
            if m[pivot] == top
        }
        q_k = Polynomial(layer, p.spec, _normal=True)
        quotient = quotient + q_k
        r = r - (ell * q_k)
    return quotient


def exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Exact division p / q; raises ArithmeticError when q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if p.is_zero():
        return p
    p._require_same_spec(q)
    lt_q, c_q = q.leading()
    out: dict[Mono, Q] = {}
    r = dict(p.terms)
    while r:
        lt_r = max(r, key=grlex_key)
        mono = tuple(a - b for a, b in zip(lt_r, lt_q))
        if any(e < 0 for e in mono):
            raise ArithmeticError("inexact polynomial division")
        coef = r[lt_r] / c_q
        out[mono] = out.get(mono, Q(0)) + coef
        for m2, c2 in q.terms.items():
            mm = tuple(a + b for a, b in zip(mono, m2))
            s = r.get(mm, Q(0)) - coef * c2
            if s:
                r[mm] = s
            else:
                r.pop(mm, None)
    return Polynomial(out, p.spec, _normal=True)


@dataclass
class PolyMatrix:
    """Row-major matrix of polynomials over one QuotientSpec."""

    rows: int
    cols: int
    entries: list[Polynomial]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        specs = {e.spec for e in self.entries}
        if len(specs) > 1:
            raise ValueError("mixed quotient specs in matrix")

    def at(self, i: int, j: int) -> Polynomial:
        return self.entries[i * self.cols + j]


def determinant(m: PolyMatrix) -> Polynomial:
    """Exact determinant via fraction-free Bareiss elimination.

    Rows are pre-sorted by maximal entry degree (with sign tracking) so the
    early minors stay small.
    """
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    spec = m.entries[0].spec
    if n == 0:
        return Polynomial.constant(1, spec)
    order = sorted(range(n), key=lambda i: max(m.at(i, j).degree() for j in range(n)))
    sign = _permutation_sign(order)
    a = [[m.at(order[i], j) for j in range(n)] for i in range(n)]
    prev = Polynomial.constant(1, spec)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(spec)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = exact_div(num, prev)
            a[i][k] = Polynomial.zero(spec)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det.scale(sign) if sign < 0 else det


def _permutation_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def proportionality(p: Polynomial, q: Polynomial) -> Optional[Q]:
    """The constant c with p = c*q (c != 0), or None; (0, 0) maps to 1."""
    if p.is_zero() and q.is_zero():
        return Q(1)
    if p.is_zero() or q.is_zero():
        return None
    if len(p.terms) != len(q.terms):
        return None
    mono, cq = q.leading()
    cp = p.terms.get(mono)
    if cp is None:
        return None
    c = cp / cq
    for m, v in q.terms.items():
        if p.terms.get(m) != c * v:
            return None
    return c


def evaluate(p: Polynomial, point: Sequence) -> Q:
    """Exact evaluation at a rational point.

    The point either has ambient length (and must satisfy the quotient
    relations) or gives values for the free variables only, in increasing
    variable order; eliminated coordinates are then filled in from the
    relations.
    """
    spec = p.spec
    vals = [Q(v) for v in point]
    free = spec.free_vars
    if len(vals) == spec.ambient_dim:
        full = vals
        for row in spec.relations:
            if sum(c * v for c, v in zip(row, full)) != 0:
                raise ValueError("point does not satisfy the quotient relations")
    elif len(vals) == len(free):
        full = [Q(0)] * spec.ambient_dim
        for k, v in zip(free, vals):
            full[k] = v
        for var, row in zip(spec.eliminated, spec.relations):
            full[var] = -sum(c * full[k] for k, c in enumerate(row) if k != var)
    else:
        raise ValueError("point has wrong length")

    max_deg = [0] * spec.ambient_dim
    for m in p.terms:
        for k, e in enumerate(m):
            if e > max_deg[k]:
                max_deg[k] = e
    powers = []
    for k in range(spec.ambient_dim):
        row = [Q(1)]
        for _ in range(max_deg[k]):
            row.append(row[-1] * full[k])
        powers.append(row)
    total = Q(0)
    for m, c in p.terms.items():
        v = c
        for k, e in enumerate(m):
            if e:
                v *= powers[k][e]
        total += v
    return total

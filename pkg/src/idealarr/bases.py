"""Uniform derivation bases, built two independent ways.

Closed-form families exist for A, B, C, D and G2; every type also has a
height-level matrix family P_0, ..., P_ht driving the recursion

    psi(i, i)     = P_0[i,i] * (dual basis vector i)
    psi(i, i+m)   = sum_j P_m[i,j] * root(j, j+m) * psi(j, j+m-1)

over the rows j whose chain reaches height m.  Type D contributes two
extra ingredients outside the (i, j) grid: the column derivations
``d_psi0`` and the correctors ``d_xi`` appearing in its closed-form
recursion.  E7 and E6 bases are produced from the E8 family by restriction
to the subsystem, mirroring how their root data are generated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import tables
from ._linalg import det as _det
from .derivation import Derivation
from .exactmath import Polynomial, QuotientSpec, divide_by_linear
from .ideals import HessenbergFunction, check_bounds
from .rootsys import LieType, RootIndex, RootSystem, build, lambda_set

Q = Fraction
Level = tuple[tuple[int, ...], tuple[tuple[Q, ...], ...]]


@dataclass
class MatrixFamily:
    """One invertible rational matrix per height level, indexed by the rows
    whose chains reach that level (in increasing row order)."""

    lie_type: LieType
    levels: dict[int, Level]

    def validate(self) -> None:
        lam0, p0 = self.levels[0]
        for a, row in enumerate(p0):
            for b, c in enumerate(row):
                if (a == b) == (c == 0):
                    raise ValueError("P_0 must be diagonal with nonzero entries")
        for m, (lam, p) in self.levels.items():
            if len(p) != len(lam) or any(len(row) != len(lam) for row in p):
                raise ValueError(f"P_{m} is not square over its index set")
            if _det(p) == 0:
                raise ValueError(f"singular P_{m}")

    def to_obj(self) -> list[dict]:
        from .exactmath import format_rational

        return [
            {
                "m": m,
                "index": list(lam),
                "rows": [[format_rational(Q(c)) for c in row] for row in p],
            }
            for m, (lam, p) in sorted(self.levels.items())
        ]


@dataclass
class RecursionView:
    """Everything needed to re-run the defining recursion of a matrix-form
    basis under substitutions, without expanding its coefficients: the
    level matrices and chain roots of the generating system, the level-0
    tangent vectors (zero for rows dropped by a restriction), and the
    quotient the values live in."""

    levels: dict[int, Level]
    parent_raw_roots: dict[RootIndex, tuple]
    base_vectors: dict[int, tuple]
    quotient: QuotientSpec
    max_level: int


# Expanding a rank-8 basis past this height is not feasible in memory.
_EXPAND_CAP_RANK8 = 12


@dataclass
class UniformBasis:
    rs: RootSystem
    derivs: dict[RootIndex, Derivation]
    source: str
    matrices: Optional[MatrixFamily] = None
    view: Optional[RecursionView] = None
    _div_cache: dict = field(default_factory=dict, repr=False)

    def grid(self) -> list[RootIndex]:
        return sorted(
            (i, j)
            for i in self.rs.rows
            for j in range(i, i + self.rs.exponents[i] + 1)
        )

    def entry(self, i: int, j: int) -> Derivation:
        if (i, j) not in self.derivs:
            if self.view is None:
                raise KeyError(f"no derivation stored at {(i, j)}")
            self.materialize_to(j - i)
        return self.derivs[(i, j)]

    def materialize_to(self, m_top: int) -> None:
        """Expand the recursion into stored derivations up to height m_top."""
        view = self.view
        if view is None:
            return
        if self.rs.rank >= 8 and m_top > _EXPAND_CAP_RANK8:
            raise ValueError(
                f"expanding this basis past height {_EXPAND_CAP_RANK8} is not "
                "feasible; use the sweep-based checks instead"
            )
        spec = view.quotient
        lam0, p0 = view.levels[0]
        for a, i in enumerate(lam0):
            if (i, i) not in self.derivs:
                vec = view.base_vectors[i]
                self.derivs[(i, i)] = Derivation.from_vector(vec, spec)
        for m in range(1, min(m_top, view.max_level) + 1):
            lam, p = view.levels[m]
            if all((i, i + m) in self.derivs for i in lam):
                continue
            prods = {
                j: self.derivs[(j, j + m - 1)].times(
                    Polynomial.linear_form(view.parent_raw_roots[(j, j + m)], spec)
                )
                for j in lam
            }
            for a, i in enumerate(lam):
                theta = Derivation.zero(spec)
                for b, j in enumerate(lam):
                    if p[a][b] != 0:
                        theta = theta + prods[j].scale(p[a][b])
                self.derivs[(i, i + m)] = theta


def _lower_ones(lam: tuple[int, ...]) -> tuple[tuple[Q, ...], ...]:
    n = len(lam)
    return tuple(tuple(Q(1) if b <= a else Q(0) for b in range(n)) for a in range(n))


def _diag(values) -> tuple[tuple[Q, ...], ...]:
    n = len(values)
    return tuple(
        tuple(Q(values[a]) if a == b else Q(0) for b in range(n)) for a in range(n)
    )


def _levels_from_table(rs: RootSystem, table: dict[int, tuple]) -> dict[int, Level]:
    levels = {}
    for m in range(rs.height + 1):
        lam = tuple(sorted(lambda_set(rs, m)))
        levels[m] = (lam, table[m])
    return levels


def _d_matrix(rs: RootSystem, m: int) -> tuple[tuple[Q, ...], ...]:
    n = rs.lie_type.rank
    lam = tuple(sorted(lambda_set(rs, m)))
    if m >= n:
        return _lower_ones(lam)
    half = Q(1, 2)
    sign_n = Q((-1) ** (m % 2))          # multiplies row n's leading block
    sign_last = Q((-1) ** ((m + 1) % 2)) * half   # column-n entry of middle rows
    rows = []
    for i in lam:
        row = {j: Q(0) for j in lam}
        if i < n - m - 1:
            for j in lam:
                if j <= i:
                    row[j] = Q(1)
        elif i == n - m - 1:
            for j in lam:
                if j <= i:
                    row[j] = Q(1)
            row[n - m] = -half
            row[n] = sign_last
        elif i != n:
            for j in lam:
                if j <= i and j != n - m:
                    row[j] = Q(1)
            row[n - m] = half
            row[n] = sign_last
        else:
            for j in lam:
                if j < n - m:
                    row[j] = sign_n
            row[n - m] = sign_n * half
            row[n] = half
        rows.append(tuple(row[j] for j in lam))
    return tuple(rows)


def paper_matrices(t: LieType) -> MatrixFamily:
    """The published height-level matrices for every supported type."""
    rs = build(t)
    n = t.rank
    if t.family in "AB":
        levels = {0: (rs.rows, _diag([1] * n))}
        for m in range(1, rs.height + 1):
            lam = tuple(sorted(lambda_set(rs, m)))
            levels[m] = (lam, _lower_ones(lam))
    elif t.family == "C":
        # The long-root chain tops occur at odd heights only: the doubled
        # last row applies there, the even levels recurse plainly.
        levels = {0: (rs.rows, _diag([1] * (n - 1) + [2]))}
        for m in range(1, rs.height + 1):
            lam = tuple(sorted(lambda_set(rs, m)))
            rows = [list(r) for r in _lower_ones(lam)]
            if m % 2 == 1:
                for b in range(len(lam) - 1):
                    rows[-1][b] = Q(2)
            levels[m] = (lam, tuple(tuple(r) for r in rows))
    elif t.family == "D":
        levels = {0: (rs.rows, _diag([1] * (n - 2) + [2, 2]))}
        for m in range(1, rs.height + 1):
            lam = tuple(sorted(lambda_set(rs, m)))
            levels[m] = (lam, _d_matrix(rs, m))
    elif t.family == "G":
        table = {0: _diag([1, 1]), 1: ((Q(1), Q(0)), (Q(1), Q(1)))}
        table.update({m: ((Q(1),),) for m in range(2, 6)})
        levels = _levels_from_table(rs, table)
    elif t.family == "F":
        levels = _levels_from_table(rs, tables.F4_P)
    elif t.rank == 8:
        levels = _levels_from_table(rs, tables.E8_P)
    elif t.rank == 7:
        levels = _levels_from_table(rs, tables.E7_P)
    else:
        levels = _levels_from_table(rs, tables.E6_P)
    fam = MatrixFamily(t, levels)
    fam.validate()
    return fam


def build_from_matrices(
    rs: RootSystem, fam: MatrixFamily, expand: Optional[bool] = None
) -> UniformBasis:
    """Set up the height-level recursion; raises on a singular level matrix.

    Coefficients are expanded eagerly for the small types; large systems
    stay lazy and are consumed through the recursion view.
    """
    fam.validate()
    lam0, p0 = fam.levels[0]
    if lam0 != rs.rows:
        raise ValueError("level-0 index set must be the full row set")
    for m in range(1, rs.height + 1):
        lam, _ = fam.levels[m]
        if set(lam) != lambda_set(rs, m):
            raise ValueError(f"level {m} index set mismatch")
    base = {
        i: tuple(p0[a][a] * c for c in rs.coweights[i]) for a, i in enumerate(lam0)
    }
    view = RecursionView(fam.levels, rs.raw_roots, base, rs.quotient, rs.height)
    psi = UniformBasis(rs, {}, "matrix-recursion", fam, view)
    if expand is None:
        expand = rs.n_positive <= 30
    if expand:
        psi.materialize_to(rs.height)
    return psi


# -- closed forms -----------------------------------------------------------


def _x(rs: RootSystem, k: int) -> Polynomial:
    return Polynomial.variable(k - 1, rs.quotient)


def _prod(rs: RootSystem, factors) -> Polynomial:
    out = Polynomial.constant(1, rs.quotient)
    for f in factors:
        out = out * f
    return out


def _deriv(rs: RootSystem, coeffs: dict[int, Polynomial]) -> Derivation:
    zero = Polynomial.zero(rs.quotient)
    return Derivation(
        [coeffs.get(k, zero) for k in range(1, rs.ambient_dim + 1)], rs.quotient
    )


def _closed_form_a(rs: RootSystem) -> dict[RootIndex, Derivation]:
    n = rs.ambient_dim
    base = {
        k: Derivation.from_vector(
            [Q(1 if a == k else 0) - Q(1, n) for a in range(1, n + 1)], rs.quotient
        )
        for k in range(1, n + 1)
    }
    derivs = {}
    for i in rs.rows:
        for j in range(i, i + rs.exponents[i] + 1):
            theta = Derivation.zero(rs.quotient)
            for k in range(1, i + 1):
                poly = _prod(rs, (_x(rs, k) - _x(rs, ell) for ell in range(i + 1, j + 1)))
                theta = theta + base[k].times(poly)
            derivs[(i, j)] = theta
    return derivs


def _product_entry(rs: RootSystem, i: int, j: int) -> Derivation:
    coeffs = {
        k: _prod(rs, (rs.positive_roots[(k, ell)] for ell in range(i + 1, j + 1)))
        for k in range(1, i + 1)
    }
    return _deriv(rs, coeffs)


def _closed_form_bc(rs: RootSystem) -> dict[RootIndex, Derivation]:
    n = rs.lie_type.rank
    is_c = rs.lie_type.family == "C"
    derivs = {}
    for i in rs.rows:
        for j in range(i, i + rs.exponents[i] + 1):
            if is_c and j == 2 * n + 1 - i:
                # chain top in type C: doubled carry from the previous chain
                prev = (
                    _product_entry(rs, i - 1, j - 1)
                    if i > 1
                    else Derivation.zero(rs.quotient)
                )
                derivs[(i, j)] = prev.scale(2) + derivs[(i, j - 1)].times(
                    rs.positive_roots[(i, j)]
                )
            else:
                derivs[(i, j)] = _product_entry(rs, i, j)
    return derivs


def _closed_form_g2(rs: RootSystem) -> dict[RootIndex, Derivation]:
    v = Derivation.from_vector([0, -1, 1], rs.quotient)
    psi22 = Derivation.from_vector([Q(-1, 3), Q(-1, 3), Q(2, 3)], rs.quotient)
    derivs = {(1, 1): v, (2, 2): psi22}
    for j in range(2, 7):
        poly = _prod(rs, (rs.positive_roots[(1, ell)] for ell in range(2, j + 1)))
        derivs[(1, j)] = v.times(poly)
    coeffs = {}
    for k in (1, 2, 3):
        vec = [Q(-1, 3)] * 3
        vec[k - 1] += 1
        coeffs[k] = Derivation.from_vector(vec, rs.quotient).times(_x(rs, k))
    derivs[(2, 3)] = coeffs[1] + coeffs[2] + coeffs[3]
    return derivs


def _hat_products(rs: RootSystem, lo: int, hi: int) -> dict[int, Polynomial]:
    """x_lo ... x_hi with one factor omitted, for each omitted index."""
    return {
        k: _prod(rs, (_x(rs, ell) for ell in range(lo, hi + 1) if ell != k))
        for k in range(lo, hi + 1)
    }


def _closed_form_d(rs: RootSystem) -> dict[RootIndex, Derivation]:
    n = rs.lie_type.rank
    derivs: dict[RootIndex, Derivation] = {}
    for i in range(1, n):
        for j in range(i, min(n - 1, i + rs.exponents[i] + 1)):
            if j > n - 2:
                break
            coeffs = {
                k: _prod(rs, (_x(rs, k) - _x(rs, ell) for ell in range(i + 1, j + 1)))
                for k in range(1, i + 1)
            }
            derivs[(i, j)] = _deriv(rs, coeffs)
        derivs[(i, n - 1)] = _d_psi_col(rs, i, minus_rows=True)
        for jj in range(0, n - i):
            derivs[(i, n + jj)] = _d_psi_plus(rs, i, jj)
    for r in range(0, n):
        derivs[(n, 2 * n - 1 - r)] = _d_psi_row_n(rs, r)
    return derivs


def _d_psi_col(rs: RootSystem, i: int, minus_rows: bool) -> Derivation:
    """The column-(n-1) derivation of chain i in type D."""
    n = rs.lie_type.rank
    sign = Q((-1) ** ((n - i) % 2))
    tail = _prod(rs, (_x(rs, ell) for ell in range(i + 1, n + 1)))
    coeffs: dict[int, Polynomial] = {}
    for k in range(1, i + 1):
        head = _prod(rs, (_x(rs, k) - _x(rs, ell) for ell in range(i + 1, n)))
        num = head * (_x(rs, k) + _x(rs, n)) + tail.scale(sign)
        coeffs[k] = _must_divide(num, _x(rs, k))
    hats = _hat_products(rs, i + 1, n)
    for k in range(i + 1, n + 1):
        coeffs[k] = hats[k].scale(sign)
    return _deriv(rs, coeffs)


def _d_psi_plus(rs: RootSystem, i: int, jj: int) -> Derivation:
    """The column-(n+jj) derivation of chain i in type D, 0 <= jj <= n-1-i."""
    n = rs.lie_type.rank
    sign = Q((-1) ** ((n - i + 1) % 2))
    sq_tail = _prod(rs, (_x(rs, ell) for ell in range(i + 1, n - jj))) * _prod(
        rs, (_x(rs, ell) * _x(rs, ell) for ell in range(n - jj, n + 1))
    )
    coeffs: dict[int, Polynomial] = {}
    for k in range(1, i + 1):
        head = _prod(rs, (_x(rs, k) - _x(rs, ell) for ell in range(i + 1, n + 1)))
        plus = _prod(rs, (_x(rs, k) + _x(rs, ell) for ell in range(n - jj, n + 1)))
        coeffs[k] = _must_divide(head * plus + sq_tail.scale(sign), _x(rs, k))
    outer = _prod(rs, (_x(rs, ell) for ell in range(n - jj, n + 1))).scale(sign)
    hats = _hat_products(rs, i + 1, n)
    for k in range(i + 1, n + 1):
        coeffs[k] = outer * hats[k]
    return _deriv(rs, coeffs)


def _d_psi_row_n(rs: RootSystem, r: int) -> Derivation:
    """The (n, 2n-1-r) derivation in type D, 0 <= r <= n-1."""
    n = rs.lie_type.rank
    sign = Q((-1) ** ((n - r + 1) % 2))
    tail = _prod(rs, (_x(rs, ell) for ell in range(r + 1, n + 1)))
    coeffs: dict[int, Polynomial] = {}
    for k in range(1, r + 1):
        head = _prod(rs, (_x(rs, k) - _x(rs, ell) for ell in range(r + 1, n + 1)))
        coeffs[k] = _must_divide(head.scale(sign) + tail, _x(rs, k))
    hats = _hat_products(rs, r + 1, n)
    for k in range(r + 1, n + 1):
        coeffs[k] = hats[k]
    return _deriv(rs, coeffs)


def _must_divide(p: Polynomial, ell: Polynomial) -> Polynomial:
    q = divide_by_linear(p, ell)
    if q is None:
        raise AssertionError("expected exact divisibility in type-D formulas")
    return q


def d_psi0(rs: RootSystem, j: int) -> Derivation:
    """Type-D auxiliary column derivation (index 0), defined for 1 <= j <= 2n-3."""
    n = rs.lie_type.rank
    if rs.lie_type.family != "D":
        raise ValueError("d_psi0 is specific to type D")
    if not 1 <= j <= 2 * n - 3:
        raise ValueError(f"j = {j} out of range")
    if j <= n - 2:
        return Derivation.zero(rs.quotient)
    sign = Q((-1) ** (n % 2))
    hats = _hat_products(rs, 1, n)
    base = _deriv(rs, {k: hats[k].scale(sign) for k in range(1, n + 1)})
    if j == n - 1:
        return base
    outer = _prod(rs, (_x(rs, ell) for ell in range(2 * n - j, n + 1)))
    return base.times(outer).scale(-1)


def d_xi(rs: RootSystem, i: int) -> Derivation:
    """Type-D corrector derivation, defined for 0 <= i <= n-2."""
    n = rs.lie_type.rank
    if rs.lie_type.family != "D":
        raise ValueError("d_xi is specific to type D")
    if not 0 <= i <= n - 2:
        raise ValueError(f"i = {i} out of range")
    if i == 0:
        return d_psi0(rs, n - 1)
    sign = Q((-1) ** ((n - i) % 2))
    tail = _prod(rs, (_x(rs, ell) for ell in range(i + 1, n + 1)))
    coeffs: dict[int, Polynomial] = {}
    for k in range(1, i + 1):
        head = _prod(rs, (_x(rs, k) - _x(rs, ell) for ell in range(i + 1, n)))
        coeffs[k] = _must_divide(head * _x(rs, n) + tail.scale(sign), _x(rs, k))
    hats = _hat_products(rs, i + 1, n)
    for k in range(i + 1, n + 1):
        coeffs[k] = hats[k].scale(sign)
    return _deriv(rs, coeffs)


def closed_form_d_recursive(rs: RootSystem) -> dict[RootIndex, Derivation]:
    """The same type-D family generated by its defining recursion (used as a
    cross-check of the explicit formulas)."""
    n = rs.lie_type.rank
    derivs: dict[RootIndex, Derivation] = {}
    ones = lambda upto: Derivation.from_vector(
        [1 if k <= upto else 0 for k in range(1, n + 1)], rs.quotient
    )
    for i in range(1, n - 1):
        derivs[(i, i)] = ones(i)
    derivs[(n - 1, n - 1)] = Derivation.from_vector(
        [1] * (n - 1) + [-1], rs.quotient
    )
    derivs[(n, n)] = Derivation.from_vector([1] * n, rs.quotient)

    def psi(i: int, j: int) -> Derivation:
        if i == 0:
            if 1 <= j <= 2 * n - 3:
                return d_psi0(rs, j)
            return Derivation.zero(rs.quotient)
        return derivs[(i, j)]

    for i in range(1, n):
        for j in range(i + 1, 2 * n - i):
            theta = psi(i - 1, j - 1) + derivs[(i, j - 1)].times(rs.positive_roots[(i, j)])
            if j == n - 1:
                theta = theta + d_xi(rs, i)
            derivs[(i, j)] = theta
    for j in range(n + 1, 2 * n):
        theta = derivs[(n, j - 1)].times(rs.positive_roots[(n, j)])
        other = derivs[(2 * n - j, n)].scale((-1) ** ((j - n) % 2))
        derivs[(n, j)] = theta + other
    return derivs


def closed_form(rs: RootSystem) -> UniformBasis:
    """Explicit closed-form family; defined for A, B, C, D and G2."""
    fam = rs.lie_type.family
    if fam == "A":
        derivs = _closed_form_a(rs)
    elif fam in "BC":
        derivs = _closed_form_bc(rs)
    elif fam == "D":
        derivs = _closed_form_d(rs)
    elif fam == "G":
        derivs = _closed_form_g2(rs)
    else:
        raise ValueError(f"no closed form for family {fam}")
    return UniformBasis(rs, derivs, "closed-form")


# -- subsystem restriction --------------------------------------------------

_E_CHAINS = {
    (8, frozenset({1, 3, 4, 5, 6, 7, 8})): LieType("E", 7),
    (8, frozenset({1, 4, 5, 6, 7, 8})): LieType("E", 6),
    (7, frozenset({1, 4, 5, 6, 7, 8})): LieType("E", 6),
}


def restrict_basis(rs: RootSystem, keep: set[int], psi: UniformBasis) -> UniformBasis:
    """Basis for the subsystem orthogonal to the dropped fundamental
    coweights: same level matrices and (projected) chain roots, level-0
    vectors replaced by the child dual basis and zeroed on dropped rows."""
    if not keep or not set(keep) <= set(rs.rows):
        raise ValueError("row subset out of range")
    if set(keep) == set(rs.rows):
        return psi
    if psi.matrices is None:
        raise ValueError("restriction needs a matrix-form basis")
    adjacent = {
        (a, b)
        for a in rs.rows
        for b in rs.rows
        if a != b
        and sum(x * y for x, y in zip(rs.raw_simple[a], rs.raw_simple[b])) != 0
    }
    comp = {min(keep)}
    while True:
        grown = comp | {b for (a, b) in adjacent if a in comp and b in keep}
        if grown == comp:
            break
        comp = grown
    if comp != set(keep):
        raise ValueError("unsupported restriction: subsystem is reducible")
    child_type = _E_CHAINS.get((rs.lie_type.rank, frozenset(keep)))
    if child_type is None or rs.lie_type.family != "E":
        raise ValueError("unsupported restriction")
    child = build(child_type)

    lam0, p0 = psi.matrices.levels[0]
    zero_vec = (Q(0),) * rs.ambient_dim
    base = {}
    for a, i in enumerate(lam0):
        if i in keep:
            base[i] = tuple(p0[a][a] * c for c in child.coweights[i])
        else:
            base[i] = zero_vec
    view = RecursionView(
        psi.matrices.levels,
        rs.raw_roots,
        base,
        child.quotient,
        max(child.exponents.values()),
    )
    return UniformBasis(child, {}, "subsystem-restriction", None, view)


def basis_for_ideal(psi: UniformBasis, h: HessenbergFunction) -> list[Derivation]:
    check_bounds(psi.rs, h)
    return [psi.entry(i, v) for i, v in zip(psi.rs.rows, h.values)]


_DEFAULT_CACHE: dict[LieType, UniformBasis] = {}


def default_basis(rs: RootSystem) -> UniformBasis:
    """The preferred family per type: closed form where one exists, the
    published matrices for F4/E8, restriction from E8 for E7/E6."""
    t = rs.lie_type
    if t in _DEFAULT_CACHE:
        return _DEFAULT_CACHE[t]
    if t.family in "ABCDG":
        psi = closed_form(rs)
    elif t.family == "F" or (t.family == "E" and t.rank == 8):
        psi = build_from_matrices(rs, paper_matrices(t))
    else:
        e8 = build(LieType("E", 8))
        keep = {1, 3, 4, 5, 6, 7, 8} if t.rank == 7 else {1, 4, 5, 6, 7, 8}
        psi = restrict_basis(e8, keep, default_basis(e8))
    _DEFAULT_CACHE[t] = psi
    return psi

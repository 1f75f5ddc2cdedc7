"""Re-derivation of the height-level matrices from first principles.

Going from the height-m ideal to the height-(m+1) ideal, each new root beta
induces a restriction of the old arrangement onto ker(beta); hyperplanes
that collide under this restriction are grouped into classes.  The product
of the non-representative defining forms is the polynomial b_nu, and pairing
the carried derivations against the new roots modulo beta yields a rational
coefficient matrix of full column rank.  Any left inverse P of that matrix
(completed by kernel rows) yields the next layer of the basis; P is unique
up to row scalings and additions of rows that die at the next level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ._linalg import det as _det
from ._linalg import inverse, kernel_basis, rref
from .bases import MatrixFamily
from .derivation import Derivation, apply, dual_basis
from .exactmath import Polynomial, divide_by_linear, proportionality
from .ideals import LowerIdeal, height_ideal
from .rootsys import RootIndex, RootSystem, lambda_set

Q = Fraction


@dataclass(frozen=True)
class RestrictionChoice:
    """Partition of an ideal by equal restriction onto ker(beta), plus the
    chosen representative (lexicographically least index) of each class."""

    target: RootIndex
    classes: tuple[tuple[RootIndex, ...], ...]
    representatives: tuple[RootIndex, ...]

    def non_representatives(self) -> list[RootIndex]:
        out = []
        for cls, rep in zip(self.classes, self.representatives):
            out.extend(r for r in cls if r != rep)
        return out


@dataclass
class CoefficientMatrix:
    row_index: tuple[int, ...]
    col_index: tuple[int, ...]
    entries: tuple[tuple[Q, ...], ...]

    def rank(self) -> int:
        from ._linalg import rank

        return rank(self.entries)


def reduce_mod_linear(p: Polynomial, ell: Polynomial) -> Polynomial:
    """Canonical representative of p modulo the linear form ell: substitute
    out the pivot (largest-index) variable of ell."""
    if ell.degree() != 1 or not ell.is_homogeneous():
        raise ValueError("modulus must be a homogeneous linear form")
    vec = ell.linear_coefficients()
    pivot = max(k for k, c in enumerate(vec) if c != 0)
    c_piv = vec[pivot]
    if not any(m[pivot] for m in p.terms):
        return p
    repl = {}
    for k, c in enumerate(vec):
        if k != pivot and c != 0:
            mono = [0] * len(vec)
            mono[k] = 1
            repl[tuple(mono)] = -c / c_piv
    out = Polynomial.zero(p.spec)
    repl_poly = Polynomial(repl, p.spec, _normal=True)
    power = Polynomial.constant(1, p.spec)
    powers = [power]
    top = max(m[pivot] for m in p.terms)
    for _ in range(top):
        powers.append(powers[-1] * repl_poly)
    for m, c in p.terms.items():
        k = m[pivot]
        base = list(m)
        base[pivot] = 0
        out = out + powers[k].scale(c) * Polynomial(
            {tuple(base): Q(1)}, p.spec, _normal=True
        )
    return out


def restriction_classes(rs: RootSystem, iprime: LowerIdeal, beta: RootIndex) -> RestrictionChoice:
    """Group the ideal's forms by equal restriction onto ker(beta).

    Linear forms restrict equally iff their reductions modulo beta are
    proportional; the reduction of a normalized form is a plain vector
    operation on its free coordinates."""
    if beta in iprime:
        raise ValueError("target root already belongs to the ideal")
    beta_vec = rs.positive_roots[beta].linear_coefficients()
    pivot = max(k for k, c in enumerate(beta_vec) if c != 0)
    c_piv = beta_vec[pivot]
    buckets: dict[tuple, list[RootIndex]] = {}
    for r in iprime.sorted_members():
        vec = rs.positive_roots[r].linear_coefficients()
        f = vec[pivot] / c_piv
        red = tuple(v - f * b for v, b in zip(vec, beta_vec))
        lead = next((c for c in red if c != 0), None)
        if lead is None:
            raise ValueError("ideal member proportional to the target root")
        buckets.setdefault(tuple(c / lead for c in red), []).append(r)
    classes = sorted(buckets.values(), key=lambda c: c[0])
    return RestrictionChoice(
        beta,
        tuple(tuple(c) for c in classes),
        tuple(min(c) for c in classes),
    )


def b_nu(
    rs: RootSystem,
    iprime: LowerIdeal,
    beta: RootIndex,
    choice: Optional[RestrictionChoice] = None,
) -> Polynomial:
    """Product of the non-representative forms of the restriction classes."""
    if choice is None:
        choice = restriction_classes(rs, iprime, beta)
    out = Polynomial.constant(1, rs.quotient)
    for r in choice.non_representatives():
        out = out * rs.positive_roots[r]
    return out


def _constant_against_factors(
    value: Polynomial, factors: list[Polynomial], beta_poly: Polynomial
) -> Q:
    """The constant c with (value mod beta) = c * prod(factors mod beta).

    Divides out the reduced factors one at a time, so the product is never
    expanded; raises when a division fails.
    """
    r = reduce_mod_linear(value, beta_poly)
    if r.is_zero():
        return Q(0)
    for f in factors:
        fr = reduce_mod_linear(f, beta_poly)
        nxt = divide_by_linear(r, fr)
        if nxt is None:
            raise ArithmeticError("Proposition 2.3 violated")
        r = nxt
    if r.degree() > 0:
        raise ArithmeticError("Proposition 2.3 violated")
    return r.constant_term()


def c_matrix(
    rs: RootSystem,
    theta: dict[int, Derivation],
    m: int,
    ideal: Optional[LowerIdeal] = None,
) -> CoefficientMatrix:
    """Pair the degree-m carries against the height-(m+1) roots.

    theta maps each row of the level-m index set to the carried derivation
    root(i, i+m) * psi(i, i+m-1); entry (i, j) is the constant relating
    theta_i(alpha_{j,j+m+1}) to b_nu modulo that root.
    """
    lam_m = tuple(sorted(lambda_set(rs, m)))
    lam_m1 = tuple(sorted(lambda_set(rs, m + 1)))
    if set(theta) != set(lam_m):
        raise ValueError("carried derivations must be indexed by the level set")
    if ideal is None:
        ideal = height_ideal(rs, m)
    rows = {i: [] for i in lam_m}
    for j in lam_m1:
        beta = (j, j + m + 1)
        beta_poly = rs.positive_roots[beta]
        choice = restriction_classes(rs, ideal, beta)
        factors = [rs.positive_roots[r] for r in choice.non_representatives()]
        if len(factors) != m:
            raise ArithmeticError("Proposition 2.4 violated")
        for i in lam_m:
            value = apply(theta[i], beta_poly)
            rows[i].append(_constant_against_factors(value, factors, beta_poly))
    c = CoefficientMatrix(
        lam_m, lam_m1, tuple(tuple(rows[i]) for i in lam_m)
    )
    if c.rank() != len(lam_m1):
        raise ArithmeticError("Proposition 2.5 violated")
    return c


def solve_P(c: CoefficientMatrix) -> tuple[tuple[Q, ...], ...]:
    """An invertible P with P*C equal to the identity pattern on the next
    level's columns; rows outside the next level come from the kernel."""
    lam_m, lam_m1 = c.row_index, c.col_index
    p_rows: dict[int, list[Q]] = {}
    transpose = [
        [c.entries[a][b] for a in range(len(lam_m))] for b in range(len(lam_m1))
    ]
    if len(rref(c.entries)[1]) != len(lam_m1):
        raise ValueError("rank-deficient coefficient matrix")
    for b, j in enumerate(lam_m1):
        rhs = [Q(1) if jj == j else Q(0) for jj in lam_m1]
        from ._linalg import solve

        x = solve(transpose, rhs)
        if x is None:
            raise ValueError("rank-deficient coefficient matrix")
        p_rows[j] = x
    kern = kernel_basis(transpose, len(lam_m))
    extra = [i for i in lam_m if i not in lam_m1]
    if len(kern) != len(extra):
        raise ValueError("kernel dimension mismatch")
    for i, vec in zip(extra, kern):
        p_rows[i] = vec
    p = tuple(tuple(p_rows[i]) for i in lam_m)
    if _det(p) == 0:
        raise ValueError("assembled P is singular")
    return p


def equivalent(
    p: tuple[tuple[Q, ...], ...],
    q: tuple[tuple[Q, ...], ...],
    lam_m: tuple[int, ...],
    lam_m1: tuple[int, ...],
) -> bool:
    """Whether q arises from p by row scalings plus additions of rows whose
    index dies at the next level: q * p^{-1} must fix (up to nonzero scale)
    every column indexed by the next level."""
    if _det(p) == 0 or _det(q) == 0:
        raise ValueError("equivalence is defined for invertible matrices only")
    from ._linalg import mat_mul

    t = mat_mul(q, inverse(p))
    surviving = set(lam_m1)
    for b, j in enumerate(lam_m):
        if j not in surviving:
            continue
        for a, i in enumerate(lam_m):
            if i == j:
                if t[a][b] == 0:
                    return False
            elif t[a][b] != 0:
                return False
    return True


@dataclass
class LevelReport:
    m: int
    lam: tuple[int, ...]
    solved: tuple[tuple[Q, ...], ...]
    reference: Optional[tuple[tuple[Q, ...], ...]] = None
    equivalent: Optional[bool] = None


def solve_chain(
    rs: RootSystem,
    reference: Optional[MatrixFamily] = None,
) -> tuple[MatrixFamily, list[LevelReport]]:
    """Solve P_1 .. P_ht along the height filtration.

    With a reference family, each level is solved on top of the reference's
    previous layers and compared for equivalence (level-by-level uniqueness);
    without one, the solver consumes its own solutions.
    """
    from .bases import paper_matrices

    base = reference if reference is not None else paper_matrices(rs.lie_type)
    lam0, p0 = base.levels[0]
    derivs: dict[RootIndex, Derivation] = {}
    for a, i in enumerate(lam0):
        derivs[(i, i)] = dual_basis(rs, i).scale(p0[a][a])
    levels: dict[int, tuple[tuple[int, ...], tuple[tuple[Q, ...], ...]]] = {
        0: (lam0, p0)
    }
    reports: list[LevelReport] = []
    ht = rs.height
    for m in range(1, ht + 1):
        lam = tuple(sorted(lambda_set(rs, m)))
        theta = {
            i: derivs[(i, i + m - 1)].times(rs.positive_roots[(i, i + m)])
            for i in lam
        }
        if m == ht:
            solved: tuple[tuple[Q, ...], ...] = ((Q(1),),)
        else:
            c = c_matrix(rs, theta, m)
            solved = solve_P(c)
        rep = LevelReport(m, lam, solved)
        if reference is not None:
            ref_lam, ref_p = reference.levels[m]
            lam_m1 = tuple(sorted(lambda_set(rs, m + 1))) if m < ht else ()
            rep.reference = ref_p
            rep.equivalent = equivalent(solved, ref_p, lam, lam_m1)
            use = ref_p
        else:
            use = solved
        levels[m] = (lam, use)
        for a, i in enumerate(lam):
            out = Derivation.zero(rs.quotient)
            for b, j in enumerate(lam):
                if use[a][b] != 0:
                    out = out + theta[j].scale(use[a][b])
            derivs[(i, i + m)] = out
        reports.append(rep)
    fam = MatrixFamily(rs.lie_type, levels)
    return fam, reports


@dataclass
class ChainLevelReport:
    m: int
    b_degrees_ok: bool
    prop23_ok: bool
    rank_ok: bool

    @property
    def ok(self) -> bool:
        return self.b_degrees_ok and self.prop23_ok and self.rank_ok


def chain_propositions(rs: RootSystem, psi=None, oracle=None) -> list[ChainLevelReport]:
    """Check, along the whole height filtration, that every restriction
    count matches the level, that each pairing against a new root reduces
    to a constant multiple of the class product, and that the resulting
    constant matrix has full column rank."""
    from .exactmath import Polynomial
    from .derivation import apply

    reports = []
    for m in range(1, rs.height):
        lam_m = tuple(sorted(lambda_set(rs, m)))
        lam_m1 = tuple(sorted(lambda_set(rs, m + 1)))
        ideal = height_ideal(rs, m)
        b_ok = True
        prop23_ok = True
        cols: list[list[Q]] = []
        for j in lam_m1:
            beta = (j, j + m + 1)
            choice = restriction_classes(rs, ideal, beta)
            factor_keys = choice.non_representatives()
            if len(factor_keys) != m:
                b_ok = False
            col = []
            if oracle is not None:
                spec = oracle.sweep_spec(beta)
                vals = oracle.sweep_level_values(beta, m - 1)
                # one shared expansion of the class product per new root
                b_bar = Polynomial.constant(1, spec)
                for r in factor_keys:
                    b_bar = b_bar * Polynomial.linear_form(rs.raw_roots[r], spec)
                for i in lam_m:
                    r_val = (
                        Polynomial.linear_form(rs.raw_roots[(i, i + m)], spec)
                        * vals[i]
                    )
                    if r_val.is_zero():
                        col.append(Q(0))
                        continue
                    ratio = proportionality(r_val, b_bar)
                    if ratio is None:
                        prop23_ok = False
                        col.append(Q(0))
                    else:
                        col.append(ratio)
                oracle.release_capture(beta)
            else:
                beta_poly = rs.positive_roots[beta]
                factors = [rs.positive_roots[r] for r in factor_keys]
                for i in lam_m:
                    theta = psi.entry(i, i + m - 1).times(rs.positive_roots[(i, i + m)])
                    try:
                        col.append(
                            _constant_against_factors(apply(theta, beta_poly), factors, beta_poly)
                        )
                    except ArithmeticError:
                        prop23_ok = False
                        col.append(Q(0))
            cols.append(col)
        entries = tuple(
            tuple(cols[b][a] for b in range(len(lam_m1))) for a in range(len(lam_m))
        )
        c = CoefficientMatrix(lam_m, lam_m1, entries)
        reports.append(
            ChainLevelReport(m, b_ok, prop23_ok, c.rank() == len(lam_m1))
        )
    return reports


"""Cohomology presentations of regular nilpotent Hessenberg varieties.

The inner-product identification of tangent vectors with linear forms
sends a derivation sum f_k d_k to sum f_k x_k; applying it to the basis
attached to an ideal yields the generators of the presentation ideal.
The graded Betti numbers of the quotient ring are predicted by the
product of truncated geometric series in the h-gaps, and a small-rank
exact-rank oracle checks that prediction degree by degree.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from dataclasses import dataclass

from ._linalg import rank as _rank
from .bases import UniformBasis, basis_for_ideal, _x, _prod
from .derivation import Derivation, dual_basis
from .exactmath import Polynomial
from .ideals import HessenbergFunction, check_bounds
from .rootsys import LieType, RootSystem

Q = Fraction


@dataclass
class Presentation:
    lie_type: LieType
    h: tuple[int, ...]
    generators: list[Polynomial]
    poincare: list[int]

    def to_obj(self) -> dict:
        return {
            "type": str(self.lie_type),
            "h": list(self.h),
            "generators": [g.to_obj() for g in self.generators],
            "poincare": list(self.poincare),
        }


def q_map(theta: Derivation) -> Polynomial:
    """sum f_k x_k, normalized in the quotient."""
    out = Polynomial.zero(theta.spec)
    for k, coeff in enumerate(theta.coeffs):
        if not coeff.is_zero():
            out = out + coeff * Polynomial.variable(k, theta.spec)
    return out


def fundamental_weight(rs: RootSystem, i: int) -> Polynomial:
    """Normalized so the i-th dual basis vector maps to 2/|alpha_i|^2 times it."""
    return q_map(dual_basis(rs, i)).scale(rs.norm_sq(i) / 2)


def poincare_coefficients(rs: RootSystem, h: HessenbergFunction) -> list[int]:
    coeffs = [1]
    for i, v in zip(rs.rows, h.values):
        gap = v - i
        out = [0] * (len(coeffs) + gap)
        for d, c in enumerate(coeffs):
            for e in range(gap + 1):
                out[d + e] += c
        coeffs = out
    return coeffs


def generators(rs: RootSystem, psi: UniformBasis, h: HessenbergFunction) -> Presentation:
    check_bounds(rs, h)
    gens = [q_map(theta) for theta in basis_for_ideal(psi, h)]
    return Presentation(rs.lie_type, h.values, gens, poincare_coefficients(rs, h))


def g_closed_form_D(rs: RootSystem, i: int, j: int) -> Polynomial:
    """Closed-form presentation generators for type D, all four index zones."""
    if rs.lie_type.family != "D":
        raise ValueError("g_closed_form_D is specific to type D")
    n = rs.lie_type.rank
    if i not in rs.rows or not i <= j <= i + rs.exponents[i]:
        raise ValueError(f"index ({i}, {j}) outside the grid")
    if i == n:
        r = 2 * n - 1 - j
        sign = Q((-1) ** ((n - r + 1) % 2))
        out = _prod(rs, (_x(rs, ell) for ell in range(r + 1, n + 1))).scale(n)
        for k in range(1, r + 1):
            out = out + _prod(
                rs, (_x(rs, k) - _x(rs, ell) for ell in range(r + 1, n + 1))
            ).scale(sign)
        return out
    if j <= n - 2:
        out = Polynomial.zero(rs.quotient)
        for k in range(1, i + 1):
            out = out + _prod(
                rs, (_x(rs, k) - _x(rs, ell) for ell in range(i + 1, j + 1))
            ) * _x(rs, k)
        return out
    if j == n - 1:
        sign = Q((-1) ** ((n - i) % 2))
        out = _prod(rs, (_x(rs, ell) for ell in range(i + 1, n + 1))).scale(sign * n)
        for k in range(1, i + 1):
            out = out + _prod(
                rs, (_x(rs, k) - _x(rs, ell) for ell in range(i + 1, n))
            ) * (_x(rs, k) + _x(rs, n))
        return out
    jj = j - n
    sign = Q((-1) ** ((n - i + 1) % 2))
    tail = _prod(rs, (_x(rs, ell) for ell in range(i + 1, n - jj))) * _prod(
        rs, (_x(rs, ell) * _x(rs, ell) for ell in range(n - jj, n + 1))
    )
    out = tail.scale(sign * n)
    for k in range(1, i + 1):
        out = out + _prod(
            rs, (_x(rs, k) - _x(rs, ell) for ell in range(i + 1, n + 1))
        ) * _prod(rs, (_x(rs, k) + _x(rs, ell) for ell in range(n - jj, n + 1)))
    return out


def graded_rank_oracle(gens: list[Polynomial], up_to_degree: int) -> list[int]:
    """Dimension of each graded piece of the quotient by the generated ideal,
    computed by exact rank over the monomial basis.  Guardrails: at most 3
    free variables and degree cap 8."""
    if not gens:
        raise ValueError("need at least one generator (possibly zero)")
    spec = gens[0].spec
    free = spec.free_vars
    if len(free) > 3:
        raise ValueError("oracle guardrail: more than 3 free variables")
    if up_to_degree > 8:
        raise ValueError("oracle guardrail: degree cap is 8")
    dims = []
    for d in range(up_to_degree + 1):
        monos = [
            _mono_of(combo, free, spec.ambient_dim)
            for combo in combinations_with_replacement(free, d)
        ]
        index = {m: a for a, m in enumerate(monos)}
        rows = []
        for g in gens:
            if g.is_zero():
                continue
            e = g.degree()
            if e > d or not g.is_homogeneous():
                if not g.is_homogeneous():
                    raise ValueError("oracle expects homogeneous generators")
                continue
            for combo in combinations_with_replacement(free, d - e):
                shift = _mono_of(combo, free, spec.ambient_dim)
                row = [Q(0)] * len(monos)
                for m, c in g.terms.items():
                    mm = tuple(a + b for a, b in zip(m, shift))
                    row[index[mm]] = c
                rows.append(row)
        dims.append(len(monos) - (_rank(rows) if rows else 0))
    return dims


def _mono_of(combo, free, n) -> tuple[int, ...]:
    m = [0] * n
    for k in combo:
        m[k] += 1
    return tuple(m)

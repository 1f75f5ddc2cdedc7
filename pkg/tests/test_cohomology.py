from fractions import Fraction as Q

import pytest

from idealarr.bases import closed_form, default_basis
from idealarr.cohomology import (
    fundamental_weight,
    g_closed_form_D,
    generators,
    graded_rank_oracle,
    poincare_coefficients,
    q_map,
)
from idealarr.derivation import Derivation, dual_basis
from idealarr.exactmath import Polynomial, proportionality
from idealarr.ideals import HessenbergFunction, enumerate_lower_ideals, hessenberg_from_ideal

from conftest import system


def test_q_sends_partials_to_coordinates():
    b3 = system("B3")
    theta = Derivation.from_vector([0, 1, 0], b3.quotient)
    assert q_map(theta) == Polynomial.variable(1, b3.quotient)


def test_q_of_euler_like_entry():
    d4 = system("D4")
    psi = default_basis(d4)
    got = q_map(psi.entry(3, 4))
    expect = Polynomial(
        {tuple(2 if k == a else 0 for k in range(4)): Q(1) for a in range(4)},
        d4.quotient,
    )
    assert got == expect


def test_q_of_dual_basis_is_weight_up_to_norm():
    for tag in ["A3", "B3", "C3", "G2", "F4"]:
        rs = system(tag)
        for i in rs.rows:
            lhs = q_map(dual_basis(rs, i)).scale(rs.norm_sq(i) / 2)
            assert lhs == fundamental_weight(rs, i)
            # the weight pairs integrally with the coweights
            vals = [
                sum(a * b for a, b in zip(lhs.linear_coefficients(), rs.coweights[j]))
                for j in rs.rows
            ]
            assert all(v >= 0 for v in vals)


def test_g_closed_form_matches_q_of_basis_d4_d5():
    for tag in ["D4", "D5"]:
        rs = system(tag)
        psi = closed_form(rs)
        for (i, j) in psi.grid():
            assert g_closed_form_D(rs, i, j) == q_map(psi.entry(i, j)), (i, j)


def test_g_closed_form_special_values():
    rs = system("D4")
    n = 4
    # diagonal of an early chain: plain coordinate sum
    got = g_closed_form_D(rs, 2, 2)
    assert got == Polynomial.linear_form([1, 1, 0, 0], rs.quotient)
    # top of the short chain: n times the full monomial
    top = g_closed_form_D(rs, n, 2 * n - 1)
    assert top.terms == {(1, 1, 1, 1): Q(n)}
    with pytest.raises(ValueError):
        g_closed_form_D(rs, 1, 7)
    with pytest.raises(ValueError):
        g_closed_form_D(system("B3"), 1, 2)


def test_generator_degrees():
    for tag in ["B3", "D4", "F4"]:
        rs = system(tag)
        psi = default_basis(rs)
        for ideal in list(enumerate_lower_ideals(rs))[:25]:
            h = hessenberg_from_ideal(rs, ideal)
            pres = generators(rs, psi, h)
            for idx, i in enumerate(rs.rows):
                g = pres.generators[idx]
                assert g.is_homogeneous()
                assert g.degree() == h.values[idx] - i + 1


def test_poincare_coefficients():
    rs = system("A2")
    assert poincare_coefficients(rs, HessenbergFunction.of([2, 3])) == [1, 2, 1]
    assert poincare_coefficients(rs, HessenbergFunction.of([1, 2])) == [1]
    b2 = system("B2")
    assert poincare_coefficients(b2, HessenbergFunction.of([4, 3])) == [1, 2, 2, 2, 1]


def test_point_presentation():
    rs = system("A2")
    pres = generators(rs, default_basis(rs), HessenbergFunction.of([1, 2]))
    assert pres.poincare == [1]
    # generators are the diagonal weights, spanning degree one
    assert graded_rank_oracle(pres.generators, 4) == [1, 0, 0, 0, 0]


def test_graded_rank_oracle_zero_ideal():
    rs = system("B2")
    zero = [Polynomial.zero(rs.quotient)]
    assert graded_rank_oracle(zero, 4) == [1, 2, 3, 4, 5]


def test_graded_rank_oracle_matches_poincare_small():
    rs = system("A2")
    psi = default_basis(rs)
    pres = generators(rs, psi, HessenbergFunction.of([2, 3]))
    dims = graded_rank_oracle(pres.generators, 6)
    assert dims == [1, 2, 1, 0, 0, 0, 0]


def test_graded_rank_oracle_guardrails():
    rs = system("B2")
    gens = [Polynomial.variable(0, rs.quotient)]
    with pytest.raises(ValueError, match="degree cap"):
        graded_rank_oracle(gens, 9)
    rs5 = system("D5")
    with pytest.raises(ValueError, match="free variables"):
        graded_rank_oracle([Polynomial.variable(0, rs5.quotient)], 3)


def test_peterson_first_generator_proportional():
    # the leading Peterson generator is exactly the simple-root times weight
    for tag in ["A2", "B2", "C2", "G2"]:
        rs = system(tag)
        pres = generators(
            rs, default_basis(rs), HessenbergFunction.of([i + 1 for i in rs.rows])
        )
        i0 = rs.rows[0]
        target = rs.simple_roots[i0] * fundamental_weight(rs, i0)
        assert proportionality(pres.generators[0], target) is not None


def test_peterson_ideal_equality_by_triangular_reduction():
    # each generator is a constant combination of the products (simple root
    # times weight) with nonzero own coefficient, and conversely

    for tag in ["A2", "A3", "B2", "C2", "G2"]:
        rs = system(tag)
        pres = generators(
            rs, default_basis(rs), HessenbergFunction.of([i + 1 for i in rs.rows])
        )
        targets = [
            rs.simple_roots[i] * fundamental_weight(rs, i) for i in rs.rows
        ]
        monos = sorted({m for g in pres.generators + targets for m in g.terms})
        idx = {m: a for a, m in enumerate(monos)}

        def row(poly):
            out = [Q(0)] * len(monos)
            for m, c in poly.terms.items():
                out[idx[m]] = c
            return out

        for k, g in enumerate(pres.generators):
            # solve sum c_a * target_a = g exactly
            from idealarr._linalg import solve

            mat = [[row(t)[m] for t in targets] for m in range(len(monos))]
            rhs = row(g)
            sol = solve(mat, rhs)
            assert sol is not None, (tag, k)
            assert sol[k] != 0, (tag, k)

        for k, t in enumerate(targets):
            mat = [[row(g)[m] for g in pres.generators] for m in range(len(monos))]
            sol = solve(mat, row(t))
            assert sol is not None, (tag, k)


def test_presentation_serialization():
    rs = system("A2")
    pres = generators(rs, default_basis(rs), HessenbergFunction.of([2, 3]))
    obj = pres.to_obj()
    assert obj["type"] == "A2" and obj["poincare"] == [1, 2, 1]
    assert len(obj["generators"]) == 2

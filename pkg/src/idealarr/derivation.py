"""Polynomial derivations tangent to the ambient quotient.

A derivation is stored by its coefficient polynomial for each ambient
partial derivative.  Tangency (the derivation kills every defining linear
relation of the quotient) is enforced at construction, so values really
live in Der of the quotient ring and applying them to a normalized linear
form is well defined.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactmath import Polynomial, QuotientSpec, divide_by_linear
from .ideals import LowerIdeal
from .rootsys import RootSystem

Q = Fraction


class Derivation:
    __slots__ = ("coeffs", "spec")

    def __init__(self, coeffs: Sequence[Polynomial], spec: QuotientSpec, _trusted: bool = False):
        coeffs = tuple(coeffs)
        if len(coeffs) != spec.ambient_dim:
            raise ValueError("coefficient count does not match ambient dimension")
        for c in coeffs:
            if c.spec != spec:
                raise ValueError("mixed quotient specs")
        if not _trusted:
            for rel in spec.relations:
                image = Polynomial.zero(spec)
                for k, a in enumerate(rel):
                    if a != 0:
                        image = image + coeffs[k].scale(a)
                if not image.is_zero():
                    raise ValueError("derivation is not tangent to the quotient")
        self.coeffs = coeffs
        self.spec = spec

    @classmethod
    def from_vector(cls, vec: Sequence, spec: QuotientSpec) -> "Derivation":
        return cls([Polynomial.constant(c, spec) for c in vec], spec)

    @classmethod
    def zero(cls, spec: QuotientSpec) -> "Derivation":
        z = Polynomial.zero(spec)
        return cls([z] * spec.ambient_dim, spec, _trusted=True)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    @property
    def degree(self) -> int:
        """Common degree of the nonzero coefficients; homogeneous only."""
        degs = {c.degree() for c in self.coeffs if not c.is_zero()}
        if not degs:
            raise ValueError("zero derivation has no degree")
        if len(degs) > 1 or any(not c.is_homogeneous() for c in self.coeffs):
            raise ValueError("derivation is not homogeneous")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        degs = {c.degree() for c in self.coeffs if not c.is_zero()}
        return len(degs) <= 1 and all(c.is_homogeneous() for c in self.coeffs)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.spec, _trusted=True
        )

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], self.spec, _trusted=True
        )

    def scale(self, c) -> "Derivation":
        return Derivation([p.scale(c) for p in self.coeffs], self.spec, _trusted=True)

    def times(self, poly: Polynomial) -> "Derivation":
        return Derivation([poly * p for p in self.coeffs], self.spec, _trusted=True)

    def __eq__(self, other) -> bool:
        return isinstance(other, Derivation) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return "Derivation(" + ", ".join(repr(c) for c in self.coeffs) + ")"

    def to_obj(self) -> dict:
        return {"coeffs": [c.to_obj() for c in self.coeffs]}


def apply(theta: Derivation, ell: Polynomial) -> Polynomial:
    """theta applied to a polynomial of degree <= 1."""
    if ell.degree() > 1:
        raise ValueError("apply expects a linear argument")
    out = Polynomial.zero(theta.spec)
    for k, a in enumerate(ell.linear_coefficients()):
        if a != 0:
            out = out + theta.coeffs[k].scale(a)
    return out


def in_log_module(theta: Derivation, rs: RootSystem, ideal: LowerIdeal) -> bool:
    """Whether theta(alpha) is divisible by alpha for every root in the ideal."""
    for r in ideal.sorted_members():
        root = rs.positive_roots[r]
        if divide_by_linear(apply(theta, root), root) is None:
            return False
    return True


def degree(theta: Derivation) -> int:
    return theta.degree


def dual_basis(rs: RootSystem, i: int) -> Derivation:
    """The tangent vector pairing to 1 with the i-th simple root, 0 with the rest."""
    if i not in rs.rows:
        raise ValueError(f"no simple root indexed {i}")
    return Derivation.from_vector(rs.coweights[i], rs.quotient)

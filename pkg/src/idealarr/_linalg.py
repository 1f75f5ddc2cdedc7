"""Small exact linear algebra helpers over Fraction."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Q = Fraction
Row = tuple[Q, ...]
Matrix = tuple[Row, ...]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(Q(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Q(1) if i == j else Q(0) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return ()
    cols = len(b[0])
    return tuple(
        tuple(sum((ra[k] * b[k][j] for k in range(len(b))), Q(0)) for j in range(cols))
        for ra in a
    )


def rref(a: Sequence[Sequence]) -> tuple[list[list[Q]], list[int]]:
    """Reduced row echelon form and pivot column indices."""
    m = [list(map(Q, row)) for row in a]
    if not m:
        return [], []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        sel = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1])


def det(a: Sequence[Sequence]) -> Q:
    m = [list(map(Q, row)) for row in a]
    n = len(m)
    sign = Q(1)
    out = Q(1)
    for c in range(n):
        sel = next((i for i in range(c, n) if m[i][c] != 0), None)
        if sel is None:
            return Q(0)
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            sign = -sign
        out *= m[c][c]
        inv = m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return out * sign


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(map(Q, row)) + [Q(1) if i == j else Q(0) for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return tuple(tuple(red[i][n:]) for i in range(n))


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[list[Q]]:
    """One exact solution of A x = b, or None when inconsistent.

    Canonical choice: free variables are set to zero (RREF-based).
    """
    rows = [list(map(Q, row)) + [Q(b_i)] for row, b_i in zip(a, b)]
    red, pivots = rref(rows)
    ncols = len(rows[0]) - 1 if rows else 0
    if ncols in pivots:
        return None
    x = [Q(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = red[r][-1]
    return x


def kernel_basis(a: Sequence[Sequence], ncols: int) -> list[list[Q]]:
    """RREF-canonical basis of the right kernel of A (ncols unknowns)."""
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[list[Q]] = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis

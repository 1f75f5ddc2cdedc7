"""Static data tables for the exceptional types.

Positive-root tables use the row/column indexing where row i lists the
chain of roots of heights 1, 2, ... sitting above the i-th simple root;
the table key (i, j) names the root of height j - i in row i.

E8 roots are written compactly: "a-b" / "a+b" mean x_a -+ x_b, and
"h(i1 i2 ...)" means the half-root with coefficient +1/2 exactly at the
listed indices and -1/2 elsewhere.

Matrix tables list rows in increasing index order over the stated index
set for each height level m; entries are ints or "p/q" strings.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction
H = Q(1, 2)

# ---------------------------------------------------------------------------
# F4: ambient R^4, simple roots 1/2(x1-x2-x3-x4), x2-x3, x3-x4, x4.

F4_EXPONENTS = {1: 1, 2: 11, 3: 7, 4: 5}

F4_ROOTS: dict[tuple[int, int], tuple] = {
    (1, 2): (H, -H, -H, -H),
    (2, 3): (0, 1, -1, 0),
    (2, 4): (0, 1, 0, -1),
    (2, 5): (0, 1, 0, 0),
    (2, 6): (0, 1, 0, 1),
    (2, 7): (0, 1, 1, 0),
    (2, 8): (H, H, H, -H),
    (2, 9): (H, H, H, H),
    (2, 10): (1, 0, 0, 0),
    (2, 11): (1, 0, 0, 1),
    (2, 12): (1, 0, 1, 0),
    (2, 13): (1, 1, 0, 0),
    (3, 4): (0, 0, 1, -1),
    (3, 5): (0, 0, 1, 0),
    (3, 6): (0, 0, 1, 1),
    (3, 7): (H, -H, H, H),
    (3, 8): (1, -1, 0, 0),
    (3, 9): (1, 0, -1, 0),
    (3, 10): (1, 0, 0, -1),
    (4, 5): (0, 0, 0, 1),
    (4, 6): (H, -H, -H, H),
    (4, 7): (H, -H, H, -H),
    (4, 8): (H, H, -H, -H),
    (4, 9): (H, H, -H, H),
}

# ---------------------------------------------------------------------------
# E8: ambient R^8.

E8_EXPONENTS = {1: 19, 2: 29, 3: 23, 4: 13, 5: 11, 6: 7, 7: 1, 8: 17}

E8_SIMPLE = {
    1: "h(1)",
    2: "2-3",
    3: "3-4",
    4: "4-5",
    5: "5-6",
    6: "6-7",
    7: "7-8",
    8: "7+8",
}

_E8_ROWS: dict[int, list[str]] = {
    1: [
        "h(1)", "h(178)", "h(168)", "h(158)", "h(148)", "h(138)", "h(137)",
        "h(136)", "h(135)", "h(125)", "h(124)", "h(12478)", "h(12468)",
        "h(12458)", "h(12457)", "h(12456)", "h(1245678)", "h(1235678)",
        "h(1234678)",
    ],
    2: [
        "2-3", "2-4", "2-5", "2-6", "2-7", "2-8", "2+7", "2+6", "2+5", "2+4",
        "2+3", "h(123)", "h(12378)", "h(12368)", "h(12358)", "h(12348)",
        "h(12347)", "h(12346)", "h(12345)", "h(1234578)", "h(1234568)",
        "h(1234567)", "1-8", "1+7", "1+6", "1+5", "1+4", "1+3", "1+2",
    ],
    3: [
        "3-4", "3-5", "3-6", "3-7", "3-8", "3+7", "3+6", "3+5", "3+4",
        "h(134)", "h(13478)", "h(13468)", "h(13458)", "h(13457)", "h(13456)",
        "h(1345678)", "1-2", "1-3", "1-4", "1-5", "1-6", "1-7", "1+8",
    ],
    4: [
        "4-5", "4-6", "4-7", "4-8", "4+7", "4+6", "4+5", "h(145)",
        "h(14578)", "h(14568)", "h(14567)", "h(13567)", "h(13467)",
    ],
    5: [
        "5-6", "5-7", "5-8", "5+7", "5+6", "h(156)", "h(15678)", "h(14678)",
        "h(13678)", "h(13578)", "h(13568)",
    ],
    6: ["6-7", "6-8", "6+7", "h(167)", "h(157)", "h(147)", "h(146)"],
    7: ["7-8"],
    8: [
        "7+8", "6+8", "5+8", "4+8", "3+8", "2+8", "h(128)", "h(127)",
        "h(126)", "h(12678)", "h(12578)", "h(12568)", "h(12567)", "h(12467)",
        "h(12367)", "h(12357)", "h(12356)",
    ],
}


def parse_e8_root(token: str) -> tuple[Q, ...]:
    """Decode the compact E8 root notation into an 8-vector."""
    if token.startswith("h("):
        plus = {int(ch) for ch in token[2:-1]}
        return tuple(H if k in plus else -H for k in range(1, 9))
    sep = "+" if "+" in token else "-"
    a, b = token.split(sep)
    vec = [Q(0)] * 8
    vec[int(a) - 1] = Q(1)
    vec[int(b) - 1] = Q(1) if sep == "+" else Q(-1)
    return tuple(vec)


def e8_root_table() -> dict[tuple[int, int], tuple[Q, ...]]:
    table: dict[tuple[int, int], tuple[Q, ...]] = {}
    for i, row in _E8_ROWS.items():
        if len(row) != E8_EXPONENTS[i]:
            raise AssertionError(f"E8 row {i} has {len(row)} entries")
        for offset, token in enumerate(row):
            table[(i, i + 1 + offset)] = parse_e8_root(token)
    return table


# ---------------------------------------------------------------------------
# Height-level matrices P_m.  Rows/columns follow the stated index sets in
# increasing order; index sets per level come from the exponent tables.


def _mat(rows):
    return tuple(tuple(Q(str(x)) for x in row) for row in rows)


F4_P = {
    0: _mat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    1: _mat([[1, 1, 1, 1], [0, 1, 0, 0], [0, 1, 1, 0], [0, 1, 1, 1]]),
    2: _mat([[1, 0, 0], [1, 1, 1], [0, 0, 1]]),
    3: _mat([[1, "-1/2", -1], [1, 1, -1], ["1/2", "1/2", 1]]),
    4: _mat([[1, 0, -2], [0, 1, 2], [0, 0, 1]]),
    5: _mat([[1, 0, 0], [0, 1, 0], ["-1/2", "1/2", 1]]),
    6: _mat([[1, 1], [0, 1]]),
    7: _mat([[1, 0], [2, 1]]),
    **{m: _mat([[1]]) for m in range(8, 12)},
}

E8_P = {
    0: _mat([[1 if i == j else 0 for j in range(8)] for i in range(8)]),
    1: _mat([
        [1, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0],
        [0, 1, 1, 1, 0, 0, 0, 0],
        [0, 1, 1, 1, 1, 0, 0, 0],
        [1, 1, 1, 1, 1, 1, 0, 1],
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, 0, 0, 0, 0, 0, 0, 1],
    ]),
    2: _mat([
        [1, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0],
        [0, 1, 1, 1, 0, 0, 0],
        [-1, 1, 1, 1, 1, -1, -1],
        [-1, 1, 1, 1, 1, 1, -1],
        [1, 1, 1, 1, 1, 1, 1],
    ]),
    3: _mat([
        [1, "-1/2", "-1/2", "-1/2", "-1/4", "-1/2", "-1/4"],
        [0, 1, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0],
        [1, 1, 1, 1, -1, "-1/2", "1/2"],
        [2, 2, 2, 2, 1, -1, 1],
        [1, 1, 1, 1, "1/2", 1, "1/2"],
        [2, -4, -4, -4, -2, -1, 1],
    ]),
    4: _mat([
        [1, 0, 0, 0, 0, "-1/2", 0],
        [0, 1, 0, 0, 0, 0, 0],
        ["-2/3", 1, 1, "-1/3", 0, "1/3", "-1/6"],
        [-2, 3, 3, 1, 0, 1, "-1/2"],
        [-2, 3, 3, 1, 1, 3, "-1/2"],
        [0, 0, 0, 0, 0, 1, 0],
        [4, 6, 6, 2, 0, -2, 1],
    ]),
    5: _mat([
        [1, "-3/8", "-3/16", "-1/8", "-1/8", "-1/4", "-1/32"],
        ["2/3", 1, "-3/4", "-1/12", "-1/12", "-1/6", "1/12"],
        ["4/3", 2, 1, "-1/6", "-1/6", "-1/3", "1/6"],
        [2, 3, "3/2", 1, "-3/2", -3, "1/4"],
        [2, 3, "3/2", 1, 1, -3, "1/4"],
        [1, "3/2", "3/4", "1/2", "1/2", 1, "1/8"],
        [8, -18, -9, -1, -1, -2, 1],
    ]),
    6: _mat([
        [1, "3/4", 0, 0, 0, 0, "1/16"],
        [0, 1, 0, 0, 0, 0, 0],
        ["8/3", 4, 1, 0, 0, 0, "1/6"],
        [16, 18, 3, 1, 0, -2, 1],
        [-8, -6, 0, 0, 1, 2, "-1/2"],
        [-4, -3, 0, 0, 0, 1, "-1/4"],
        [0, 12, 0, 0, 0, 0, 1],
    ]),
    7: _mat([
        [1, 0, 0, 0, 0, 0, "1/16"],
        [0, 1, 0, 0, 0, 0, "1/12"],
        ["8/3", 2, 1, 0, 0, 0, "1/3"],
        [0, 6, 3, 1, 1, 2, "1/2"],
        [0, 0, 0, 0, 1, 0, 0],
        [-8, -3, "-3/2", "-1/2", "1/2", 1, "-3/4"],
        [0, 0, 0, 0, 0, 0, 1],
    ]),
    8: _mat([
        [1, 0, 0, "1/16", "1/8", "1/16"],
        [0, 1, 0, 0, 0, "1/12"],
        ["4/3", 2, 1, "1/12", "1/6", "1/4"],
        [-16, 0, 0, 1, -2, -1],
        [-8, 0, 0, "1/2", 1, "-1/2"],
        [0, 0, 0, 0, 0, 1],
    ]),
    9: _mat([
        [1, "3/2", "3/4", 0, "1/8", "-1/8"],
        ["-1/3", 1, "-1/4", 0, "-1/24", "1/24"],
        ["-2/3", 2, 1, 0, "-1/12", "1/12"],
        ["-16/3", -8, -4, 1, "4/3", "-4/3"],
        [-4, -6, -3, 0, 1, -1],
        [4, 6, 3, 0, "1/2", 1],
    ]),
    10: _mat([
        [1, 0, 0, 0, 0, "1/4"],
        ["-1/3", 1, 0, 0, 0, "-1/12"],
        ["2/3", 0, 1, 0, 0, "1/6"],
        ["-16/3", 0, -8, 1, "4/3", "-8/3"],
        [-4, 0, -6, 0, 1, -2],
        [0, 0, 0, 0, 0, 1],
    ]),
    11: _mat([
        [1, -3, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, "1/8", "1/6", "-1/6"],
        [0, 0, 0, 1, 0, 0],
        [-8, 24, -6, "3/4", 1, -1],
        [0, 0, -6, "3/4", 1, 1],
    ]),
    12: _mat([
        [1, -3, 0, 0, 0],
        [0, 1, 0, 0, 0],
        ["8/3", -8, 1, "1/4", "1/6"],
        ["16/3", -16, 0, 1, "2/3"],
        [8, -24, 0, 0, 1],
    ]),
    13: _mat([
        [1, -3, "-3/4", "-3/16", 0],
        [0, 1, 0, 0, 0],
        ["4/3", -4, 1, "-1/4", 0],
        ["16/3", -16, 4, 1, "4/3"],
        [0, 0, 0, 0, 1],
    ]),
    14: _mat([
        [1, -6, 0, "-1/4"],
        ["1/6", 1, 0, "1/24"],
        ["2/3", -4, 1, "-1/6"],
        [4, -24, 0, 1],
    ]),
    15: _mat([
        [1, 0, 0, "1/4"],
        [0, 1, 0, "1/24"],
        ["2/3", 0, 1, "1/6"],
        [0, 0, 0, 1],
    ]),
    16: _mat([
        [1, 6, 0, "1/4"],
        [0, 1, 0, 0],
        ["2/3", 4, 1, "1/6"],
        [0, 24, 0, 1],
    ]),
    17: _mat([
        [1, 0, "3/2", 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [4, 24, 6, 1],
    ]),
    18: _mat([
        [1, 0, "3/2"],
        ["-1/6", 1, "-1/4"],
        [0, 0, 1],
    ]),
    19: _mat([
        [1, -6, "3/2"],
        [0, 1, 0],
        [0, 0, 1],
    ]),
    20: _mat([[1, "1/4"], [0, 1]]),
    21: _mat([[1, "1/4"], [0, 1]]),
    22: _mat([[1, 0], [4, 1]]),
    23: _mat([[1, 0], [4, 1]]),
    **{m: _mat([[1]]) for m in range(24, 30)},
}

E7_EXPONENTS = {1: 9, 3: 17, 4: 13, 5: 11, 6: 7, 7: 1, 8: 5}

E7_P = {
    0: _mat([[1 if i == j else 0 for j in range(7)] for i in range(7)]),
    1: _mat([
        [1, 0, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0],
        [0, 1, 1, 1, 0, 0, 0],
        [1, 1, 1, 1, 1, 0, 1],
        [1, 1, 1, 1, 1, 1, 1],
        [1, 0, 0, 0, 0, 0, 1],
    ]),
    2: _mat([
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [-1, 1, 1, 1, -1, -1],
        [-1, 1, 1, 1, 1, -1],
        [1, 1, 1, 1, 1, 1],
    ]),
    3: _mat([
        [1, "-1/2", "-1/2", "-1/4", "-1/2", "-1/4"],
        [0, 1, 0, 0, 0, 0],
        [1, 1, 1, -1, "-1/2", "1/2"],
        [2, 2, 2, 1, -1, 1],
        [1, 1, 1, "1/2", 1, "1/2"],
        [2, -4, -4, -2, -1, 1],
    ]),
    4: _mat([
        [1, 0, 0, 0, "-1/2", 0],
        ["-2/3", 1, "-1/3", 0, "1/3", "-1/6"],
        [-2, 3, 1, 0, 1, "-1/2"],
        [-2, 3, 1, 1, 3, "-1/2"],
        [0, 0, 0, 0, 1, 0],
        [4, 6, 2, 0, -2, 1],
    ]),
    5: _mat([
        [1, "-3/8", "-1/8", "-1/8", "-1/4", 0],
        [0, 1, 0, 0, 0, 0],
        [0, 3, 1, -1, -2, 0],
        [0, 3, 1, 1, -2, 0],
        [0, "3/2", "1/2", "1/2", 1, 0],
        [8, -9, -1, -1, -2, 1],
    ]),
    6: _mat([
        [1, 0, 0, 0, 0],
        ["4/3", 1, 0, 0, 0],
        [16, 6, 1, 0, -2],
        [-8, 0, 0, 1, 2],
        [-4, 0, 0, 0, 1],
    ]),
    7: _mat([
        [1, 0, 0, 0, 0],
        ["4/3", 1, 0, 0, 0],
        [8, 6, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [-8, -3, "-1/2", "1/2", 1],
    ]),
    8: _mat([
        [1, 0, "1/8", "1/8"],
        ["2/3", 1, "1/12", "1/12"],
        [-8, 0, 1, -1],
        [-8, 0, 1, 1],
    ]),
    9: _mat([
        [1, "3/2", 0, "1/8"],
        [0, 1, 0, 0],
        [-8, -12, 1, 0],
        [0, 0, 0, 1],
    ]),
    10: _mat([
        [1, 0, 0],
        [-12, 1, 1],
        [-12, 0, 1],
    ]),
    11: _mat([
        [1, 0, 0],
        [0, 1, 0],
        [-12, 1, 1],
    ]),
    12: _mat([[1, "1/12"], [0, 1]]),
    13: _mat([[1, 0], [12, 1]]),
    **{m: _mat([[1]]) for m in range(14, 18)},
}

E6_EXPONENTS = {1: 5, 4: 11, 5: 8, 6: 7, 7: 1, 8: 4}

E6_P = {
    0: _mat([[1 if i == j else 0 for j in range(6)] for i in range(6)]),
    1: _mat([
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0],
        [1, 1, 1, 1, 0, 1],
        [1, 1, 1, 1, 1, 1],
        [1, 0, 0, 0, 0, 1],
    ]),
    2: _mat([
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [-1, 1, 1, -1, -1],
        [-1, 1, 1, 1, -1],
        [1, 1, 1, 1, 1],
    ]),
    3: _mat([
        [1, "-1/2", "-1/4", "-1/2", "-1/4"],
        [1, 1, -1, "-1/2", "1/2"],
        [2, 2, 1, -1, 1],
        [1, 1, "1/2", 1, "1/2"],
        [2, -4, -2, -1, 1],
    ]),
    4: _mat([
        [1, 0, 0, "-1/2", 0],
        [0, 1, 0, 0, 0],
        [0, 2, 1, 2, 0],
        [0, 0, 0, 1, 0],
        [4, 2, 0, -2, 1],
    ]),
    5: _mat([
        [1, "-1/4", "-1/8", "-1/4"],
        [-2, 1, 0, 0],
        [-4, 2, 1, 0],
        [0, 1, "1/2", 1],
    ]),
    6: _mat([
        [1, 0, "-1/2"],
        [0, 1, 1],
        [0, 0, 1],
    ]),
    7: _mat([
        [1, 0, 0],
        [0, 1, 0],
        [-2, 1, 1],
    ]),
    8: _mat([[1, 0], [2, 1]]),
    **{m: _mat([[1]]) for m in range(9, 12)},
}

# ---------------------------------------------------------------------------
# Hessenberg-function condition lists, encoded as implication rules
# (src_row, trigger, dst_row, floor): h(src) >= trigger forces h(dst) >= floor.
# Interval bounds i <= h(i) <= i + e_i are checked separately.

G2_HESS_RULES = ((1, 3, 2, 3),)

F4_HESS_RULES = tuple(
    [(2, k, 3, k) for k in (4, 5, 6, 10)]
    + [(3, k, 4, k) for k in (5, 7, 9)]
    + [(4, 6, 1, 2)]
    + [(4, k, 3, k - 2) for k in (7, 9)]
    + [(4, k, 2, k - 3) for k in (8, 9)]
    + [(2, 8, 4, 9)]
    + [(3, 10, 2, 8)]
)

E8_HESS_RULES = tuple(
    [(1, k, 2, k) for k in (11, 12, 20)]
    + [(1, k, 3, k + 1) for k in (8, 9, 10, 12, 13, 14, 15, 16, 17, 18)]
    + [(1, 10, 4, 12)]
    + [(1, k, 6, k + 4) for k in (8, 9)]
    + [(1, k, 8, k + 6) for k in (3, 4, 5, 6, 7, 11, 13, 14, 16, 19)]
    + [(2, k, 1, k - 2) for k in (14, 15, 16, 17, 22)]
    + [(2, k, 3, k) for k in (4, 5, 6, 7, 8, 9, 10, 11, 12, 25, 26)]
    + [(2, k, 8, k + 5) for k in (9, 19, 20)]
    + [(3, k, 1, k - 3) for k in (13, 21, 22, 23)]
    + [(3, k, 2, k - 2) for k in (24, 25)]
    + [(3, k, 4, k) for k in (5, 6, 7, 8, 9, 10, 11, 17)]
    + [(3, k, 5, k + 1) for k in (14, 15)]
    + [(3, 9, 8, 13)]
    + [(4, 17, 3, 15)]
    + [(4, k, 5, k) for k in (6, 7, 8, 9, 10, 13, 16)]
    + [(4, 12, 6, 13)]
    + [(4, 9, 8, 12)]
    + [(5, k, 1, k - 5) for k in (14, 15)]
    + [(5, k, 4, k - 2) for k in (15, 16)]
    + [(5, k, 6, k) for k in (7, 8, 9, 11, 13)]
    + [(5, 9, 8, 11)]
    + [(6, k, 1, k - 6) for k in (10, 11, 12)]
    + [(6, k, 4, k - 3) for k in (12, 13)]
    + [(6, k, 5, k - 2) for k in (11, 13)]
    + [(6, 8, 7, 8)]
    + [(6, 9, 8, 10)]
    + [(8, k, 1, k - 8) for k in (15, 16, 17, 19, 22, 24, 25)]
    + [(8, k, 2, k - 7) for k in (14, 16, 17, 23, 24)]
    + [(8, 13, 3, 7)]
    + [(8, k, 4, k - 5) for k in (12, 21, 22)]
    + [(8, k, 5, k - 4) for k in (11, 18, 19, 20)]
    + [(8, 10, 6, 7)]
)

"""Lower ideals of the positive roots and their numeric encodings.

A lower ideal is a downward-closed set of positive roots; along the fixed
chain decomposition it is equivalent to the tuple h with h(i) = largest
column reached in chain i (h(i) = i when the chain is untouched).  The
per-type combinatorial characterizations of the valid tuples are encoded
as implication rules and cross-validated against the poset ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from . import tables
from .rootsys import LieType, RootIndex, RootSystem, build


@dataclass(frozen=True)
class LowerIdeal:
    members: frozenset[RootIndex]

    @classmethod
    def of(cls, members: Iterable[RootIndex]) -> "LowerIdeal":
        return cls(frozenset(tuple(m) for m in members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, r: RootIndex) -> bool:
        return r in self.members

    def sorted_members(self) -> list[RootIndex]:
        return sorted(self.members)


@dataclass(frozen=True)
class HessenbergFunction:
    """h-values listed in increasing row order of the root system."""

    values: tuple[int, ...]

    @classmethod
    def of(cls, values: Iterable[int]) -> "HessenbergFunction":
        return cls(tuple(int(v) for v in values))

    def value(self, rs: RootSystem, row: int) -> int:
        return self.values[rs.rows.index(row)]

    def as_dict(self, rs: RootSystem) -> dict[int, int]:
        return dict(zip(rs.rows, self.values))


def is_downward_closed(rs: RootSystem, members: frozenset[RootIndex]) -> bool:
    for r in members:
        for below in rs.lower_covers(r):
            if below not in members:
                return False
    return True


def hessenberg_from_ideal(rs: RootSystem, ideal: LowerIdeal) -> HessenbergFunction:
    for r in ideal.members:
        if r not in rs.raw_roots:
            raise ValueError(f"unknown root index {r}")
    if not is_downward_closed(rs, ideal.members):
        raise ValueError("not downward closed")
    values = []
    for i in rs.rows:
        js = [j for (a, j) in ideal.members if a == i]
        values.append(max(js) if js else i)
    return HessenbergFunction.of(values)


def check_bounds(rs: RootSystem, h: HessenbergFunction) -> None:
    if len(h.values) != rs.rank:
        raise ValueError(f"expected {rs.rank} h-values, got {len(h.values)}")
    for i, v in zip(rs.rows, h.values):
        if not (i <= v <= i + rs.exponents[i]):
            raise ValueError(f"h({i}) = {v} outside [{i}, {i + rs.exponents[i]}]")


def ideal_from_hessenberg(rs: RootSystem, h: HessenbergFunction) -> LowerIdeal:
    check_bounds(rs, h)
    members = frozenset(
        (i, j) for i, v in zip(rs.rows, h.values) for j in range(i + 1, v + 1)
    )
    if not is_downward_closed(rs, members):
        raise ValueError("invalid Hessenberg function")
    return LowerIdeal(members)


def enumerate_lower_ideals(rs: RootSystem) -> Iterator[LowerIdeal]:
    """All lower ideals, ordered by (size, sorted member list).

    Breadth-first lattice walk: grow each ideal by one addable root (one
    whose lower covers are already present), deduplicating by member set.
    """
    indices = rs.root_indices()
    lower = {r: rs.lower_covers(r) for r in indices}
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for ideal in frontier:
            for r in indices:
                if r in ideal:
                    continue
                if all(b in ideal for b in lower[r]):
                    grown = ideal | {r}
                    if grown not in seen:
                        seen.add(grown)
                        nxt.append(grown)
        frontier = nxt
    for members in sorted(seen, key=lambda s: (len(s), sorted(s))):
        yield LowerIdeal(members)


def count_lower_ideals(rs: RootSystem) -> int:
    return sum(1 for _ in enumerate_lower_ideals(rs))


def exponents_of(rs: RootSystem, ideal: LowerIdeal) -> tuple[int, ...]:
    """Sorted multiset {h(i) - i}; equals the dual partition of the height
    distribution of the ideal."""
    h = hessenberg_from_ideal(rs, ideal)
    return tuple(sorted(v - i for i, v in zip(rs.rows, h.values)))


def dual_partition_of_heights(rs: RootSystem, ideal: LowerIdeal) -> tuple[int, ...]:
    """The same multiset computed from the height distribution directly."""
    if not ideal.members:
        return (0,) * rs.rank
    heights = [rs.height_of(r) for r in ideal.members]
    top = max(heights)
    counts = [0] * (top + 1)
    counts[0] = rs.rank
    for hgt in heights:
        counts[hgt] += 1
    out: list[int] = []
    for level in range(top):
        out.extend([level] * (counts[level] - counts[level + 1]))
    out.extend([top] * counts[top])
    return tuple(sorted(out))


def lambda_of_ideal(rs: RootSystem, ideal: LowerIdeal) -> set[int]:
    if not ideal.members:
        raise ValueError("height undefined at 0")
    h = hessenberg_from_ideal(rs, ideal)
    gaps = {i: v - i for i, v in zip(rs.rows, h.values)}
    top = max(gaps.values())
    return {i for i, g in gaps.items() if g == top}


def height_ideal(rs: RootSystem, m: int) -> LowerIdeal:
    """The ideal of all positive roots of height <= m."""
    if m < 0 or m > rs.height:
        raise ValueError(f"level {m} out of range 0..{rs.height}")
    return LowerIdeal.of(r for r in rs.raw_roots if r[1] - r[0] <= m)


# -- per-type validity conditions ------------------------------------------


def _chain_monotone_rules(rows: list[int], bound) -> list[tuple[int, int, int, int]]:
    """h(i) >= v forces h(i+1) >= v up to the next row's cap; the cap rule
    also encodes 'a full chain forces the next chain full'."""
    rules = []
    for i in rows:
        for v in range(i + 2, bound(i + 1) + 1):
            rules.append((i, v, i + 1, v))
    return rules


def _hessenberg_rules(t: LieType) -> tuple[tuple[int, int, int, int], ...]:
    n = t.rank
    if t.family == "A":
        return tuple(_chain_monotone_rules(list(range(1, n)), lambda i: n + 1))
    if t.family in "BC":
        return tuple(_chain_monotone_rules(list(range(1, n)), lambda i: 2 * n + 1 - i))
    if t.family == "D":
        rules = _chain_monotone_rules(list(range(1, n - 1)), lambda i: 2 * n - 1 - i)
        for i in range(1, n - 1):
            rules.append((i, n + 1, n, 2 * n - i))
            rules.append((n, 2 * n - i, i, n - 1))
        return tuple(rules)
    if t.family == "G":
        return tables.G2_HESS_RULES
    if t.family == "F":
        return tables.F4_HESS_RULES
    if t.family == "E":
        return tables.E8_HESS_RULES
    raise ValueError(f"no condition list for {t}")


def validate_hessenberg_conditions(t: LieType, h: HessenbergFunction) -> bool:
    """Check h against the per-type condition list (not the poset).

    E7/E6 tuples are checked through the E8 list with the dropped rows
    pinned at their minimum values.
    """
    rs = build(t)
    check_bounds(rs, h)
    hmap = h.as_dict(rs)
    if t.family == "E" and t.rank < 8:
        for i in range(1, 9):
            hmap.setdefault(i, i)
    for src, trigger, dst, floor in _hessenberg_rules(t):
        if hmap.get(src, src) >= trigger and hmap.get(dst, dst) < floor:
            return False
    return True

"""Odd Gel'fand-Zetlin patterns for covariant gl(n|n) modules.

A pattern has rows 1 (bottom) .. 2n (top).  Row 2k carries labels in
columns -k..-1 and 1..k, row 2k-1 in columns -k..-1 and 1..k-1.  Rows are
stored bottom-up as tuples listing the negative columns left to right
(-k first) followed by the positive columns; all public accessors use the
signed column numbering.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .schur import HighestWeight

Entry = Callable[[int, int], int]


def row_shape(s: int) -> tuple[int, int]:
    """(number of negative columns, number of positive columns) of row s."""
    return (s + 1) // 2, s // 2


def has_position(i: int, s: int) -> bool:
    kneg, kpos = row_shape(s)
    return (-kneg <= i <= -1) or (1 <= i <= kpos)


def _offset(i: int, s: int) -> int:
    kneg, kpos = row_shape(s)
    if -kneg <= i <= -1:
        return kneg + i
    if 1 <= i <= kpos:
        return kneg + i - 1
    raise IndexError(f"row {s} has no column {i}")


class MalformedPattern(ValueError):
    pass


class InvalidPattern(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    condition: int
    row: int
    column: int | None
    detail: str

    def __str__(self):
        col = "" if self.column is None else f", column {self.column}"
        return f"condition {self.condition} (row {self.row}{col}): {self.detail}"


@dataclass(frozen=True)
class GZPattern:
    n: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.n < 1:
            raise MalformedPattern("n must be at least 1")
        if len(rows) != 2 * self.n:
            raise MalformedPattern(f"expected {2 * self.n} rows, got {len(rows)}")
        for s, row in enumerate(rows, start=1):
            if len(row) != sum(row_shape(s)):
                raise MalformedPattern(
                    f"row {s} must have {sum(row_shape(s))} entries, got {len(row)}"
                )

    def entry(self, i: int, s: int) -> int:
        """m_{i,s}."""
        return self.rows[s - 1][_offset(i, s)]

    __call__ = entry

    def top(self) -> HighestWeight:
        row = self.rows[-1]
        return HighestWeight(row[: self.n], row[self.n:])

    def row_weight(self, s: int) -> HighestWeight:
        kneg, _ = row_shape(s)
        row = self.rows[s - 1]
        return HighestWeight(row[:kneg], row[kneg:])

    def shifted(self, i: int, s: int, delta: int) -> "GZPattern":
        """The pattern with m_{i,s} replaced by m_{i,s} + delta."""
        rows = list(self.rows)
        row = list(rows[s - 1])
        row[_offset(i, s)] += delta
        rows[s - 1] = tuple(row)
        return GZPattern(self.n, tuple(rows))

    def sort_key(self) -> tuple[int, ...]:
        return tuple(x for row in reversed(self.rows) for x in row)

    def to_json(self) -> dict:
        return {"n": self.n, "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "GZPattern":
        return cls(int(obj["n"]), tuple(tuple(r) for r in obj["rows"]))

    def render(self) -> str:
        """Triangular text layout, top row first, with a dashed divider."""
        n = self.n
        width = max(len(str(x)) for row in self.rows for x in row)
        cell = width + 1
        lines = []
        for s in range(2 * n, 0, -1):
            kneg, kpos = row_shape(s)
            left = [" " * cell] * (n - kneg) + [
                str(self.entry(i, s)).rjust(cell) for i in range(-kneg, 0)
            ]
            right = [str(self.entry(i, s)).rjust(cell) for i in range(1, kpos + 1)]
            lines.append("".join(left) + " :" + "".join(right))
        return "\n".join(line.rstrip() for line in lines)


def theta_of(m: Entry, i: int, s: int) -> int:
    """theta_{i,s}: m_{i,s+1} - m_{i,s} for i < 0 (s odd), m_{i,s} - m_{i,s+1} for i > 0 (s even)."""
    if i < 0 and s % 2 == 1:
        return m(i, s + 1) - m(i, s)
    if i > 0 and s % 2 == 0:
        return m(i, s) - m(i, s + 1)
    raise ValueError(f"theta_{{{i},{s}}} is not defined")


def theta(p: GZPattern, i: int, s: int) -> int:
    if not (has_position(i, s) and s < 2 * p.n):
        raise ValueError(f"theta_{{{i},{s}}} is not defined for n = {p.n}")
    return theta_of(p.entry, i, s)


def validate(p: GZPattern) -> list[Violation]:
    """All violations of the pattern conditions; empty means valid.

    Condition numbers 1-7 follow the published list.  Negative labels are
    reported as condition 0: nonnegativity is part of the label domain but
    is otherwise implied only for rows with a covariance condition.
    Condition 5 bounds m_{-1,2p-1} by the nonzero positive labels of row
    2p-2 as well as of row 2p-1; without the former the pattern count
    exceeds the supersymmetric Schur dimension (gl(2|2), [1,0;0,0] gives 5).
    """
    n, m = p.n, p.entry
    r = 2 * n
    out: list[Violation] = []

    for s in range(1, r + 1):
        kneg, kpos = row_shape(s)
        for i in list(range(-kneg, 0)) + list(range(1, kpos + 1)):
            if m(i, s) < 0:
                out.append(Violation(0, s, i, f"label {m(i, s)} is negative"))

    # 1: top row dominant and covariant
    for j in list(range(-n, -1)) + list(range(1, n)):
        if m(j, r) < m(j + 1, r):
            out.append(Violation(1, r, j, f"m_{j},r < m_{j + 1},r"))
    npos = sum(1 for i in range(1, n + 1) if m(i, r) > 0)
    if m(-1, r) < npos:
        out.append(Violation(1, r, -1, f"m_-1,r = {m(-1, r)} < {npos}"))

    for p_ in range(1, n + 1):
        # 2: theta between rows 2p and 2p-1, negative columns
        for i in range(-p_, 0):
            d = m(i, 2 * p_) - m(i, 2 * p_ - 1)
            if d not in (0, 1):
                out.append(Violation(2, 2 * p_ - 1, i, f"theta = {d}"))
        # 4: covariance on row 2p
        cnt = sum(1 for i in range(1, p_ + 1) if m(i, 2 * p_) > 0)
        if m(-1, 2 * p_) < cnt:
            out.append(Violation(4, 2 * p_, -1, f"m_-1 = {m(-1, 2 * p_)} < {cnt}"))
    for p_ in range(1, n):
        # 3: theta between rows 2p and 2p+1, positive columns
        for i in range(1, p_ + 1):
            d = m(i, 2 * p_) - m(i, 2 * p_ + 1)
            if d not in (0, 1):
                out.append(Violation(3, 2 * p_, i, f"theta = {d}"))
    for p_ in range(2, n + 1):
        # 5: covariance on row 2p-1, counted on row 2p-1 and on row 2p-2;
        # the second count is the horizontal-strip bound and implies the first
        # once condition 3 holds
        for s in (2 * p_ - 1, 2 * p_ - 2):
            cnt = sum(1 for i in range(1, p_) if m(i, s) > 0)
            if m(-1, 2 * p_ - 1) < cnt:
                out.append(
                    Violation(
                        5, 2 * p_ - 1, -1,
                        f"m_-1 = {m(-1, 2 * p_ - 1)} < #positive labels of row {s} = {cnt}",
                    )
                )
        # 6: positive columns of row 2p-1 interlace row 2p
        for i in range(1, p_):
            if not (m(i, 2 * p_) >= m(i, 2 * p_ - 1) >= m(i + 1, 2 * p_)):
                out.append(Violation(6, 2 * p_ - 1, i, "not in between row above"))
    for p_ in range(1, n):
        # 7: negative columns of row 2p interlace row 2p+1
        for i in range(-p_ - 1, -1):
            if not (m(i, 2 * p_ + 1) >= m(i + 1, 2 * p_) >= m(i + 1, 2 * p_ + 1)):
                out.append(Violation(7, 2 * p_, i + 1, "not in between row above"))
    return out


def is_valid(p: GZPattern) -> bool:
    return not validate(p)


def _check_hw(hw: HighestWeight) -> HighestWeight:
    if hw.k != hw.n:
        raise ValueError(f"odd GZ patterns need k = n, got gl({hw.k}|{hw.n})")
    if hw.n < 1:
        raise ValueError("rank must be at least 1")
    return hw.check()


def highest_weight_pattern(hw: HighestWeight) -> GZPattern:
    """Every row repeats the top-row labels of the columns it has."""
    hw = _check_hw(hw)
    n = hw.n
    rows = []
    for s in range(1, 2 * n + 1):
        kneg, kpos = row_shape(s)
        rows.append(
            tuple(hw.label(i) for i in range(-kneg, 0))
            + tuple(hw.label(i) for i in range(1, kpos + 1))
        )
    return GZPattern(n, tuple(rows))


def covariant(row: Sequence[int], kneg: int) -> bool:
    neg, pos = row[:kneg], row[kneg:]
    if any(x < 0 for x in row):
        return False
    if any(a < b for a, b in zip(neg, neg[1:])) or any(a < b for a, b in zip(pos, pos[1:])):
        return False
    m_1 = neg[-1] if neg else 0
    return m_1 >= sum(1 for x in pos if x > 0)


def _product(choices: list[Iterable[int]]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = [()]
    for c in choices:
        c = list(c)
        out = [t + (x,) for t in out for x in c]
    return out


def branch_odd_row(row: Sequence[int], s: int) -> list[tuple[int, ...]]:
    """gl(k|k) row s = 2k -> admissible gl(k|k-1) rows s-1 (vertical strip rule).

    Negative labels drop by theta in {0,1}; positive labels interlace.
    """
    k = s // 2
    neg, pos = row[:k], row[k:]
    choices = [(x, x - 1) for x in neg]
    choices += [range(pos[i], pos[i + 1] - 1, -1) for i in range(k - 1)]
    return [c for c in _product(choices) if covariant(c, k)]


def branch_even_row(row: Sequence[int], s: int) -> list[tuple[int, ...]]:
    """gl(k|k-1) row s = 2k-1 -> admissible gl(k-1|k-1) rows s-1 (horizontal strip rule).

    Negative labels of columns -k+1..-1 interlace; positive labels rise by
    theta.  The horizontal-strip inequality at partition row k also bounds
    the number of nonzero positive labels below by m_{-1} of this row.
    """
    k = (s + 1) // 2
    neg, pos = row[:k], row[k:]
    choices = [range(neg[j], neg[j + 1] - 1, -1) for j in range(k - 1)]
    choices += [(x, x + 1) for x in pos]
    m_1 = neg[-1]
    return [
        c
        for c in _product(choices)
        if covariant(c, k - 1) and m_1 >= sum(1 for x in c[k - 1:] if x > 0)
    ]


def branch_row(row: Sequence[int], s: int) -> list[tuple[int, ...]]:
    """Admissible rows s-1 below a row s, largest first."""
    if s % 2 == 0:
        cands = branch_odd_row(row, s)
    else:
        cands = branch_even_row(row, s)
    return sorted(set(cands), reverse=True)


@lru_cache(maxsize=64)
def _enumerate(top: tuple[int, ...], n: int) -> tuple[GZPattern, ...]:
    partial: list[tuple[tuple[int, ...], ...]] = [(top,)]  # rows top-down
    for s in range(2 * n, 1, -1):
        partial = [rows + (b,) for rows in partial for b in branch_row(rows[-1], s)]
    pats = [GZPattern(n, tuple(reversed(rows))) for rows in partial]
    pats.sort(key=GZPattern.sort_key)
    return tuple(pats)


def enumerate_patterns(hw: HighestWeight) -> list[GZPattern]:
    """All patterns with top row ``hw``, sorted lexicographically (top row first)."""
    hw = _check_hw(hw)
    return list(_enumerate(hw.as_row(), hw.n))


def weight(p: GZPattern) -> dict[int, int]:
    """Weight components keyed by -n..-1, 1..n (row-sum differences)."""
    sums = [0] + [sum(r) for r in p.rows]
    w = {}
    for i in range(1, p.n + 1):
        w[-i] = sums[2 * i - 1] - sums[2 * i - 2]
        w[i] = sums[2 * i] - sums[2 * i - 1]
    return dict(sorted(w.items()))


def weight_vector(p: GZPattern) -> tuple[int, ...]:
    """Weight as a tuple ordered (-n, ..., -1, 1, ..., n)."""
    w = weight(p)
    return tuple(w[i] for i in list(range(-p.n, 0)) + list(range(1, p.n + 1)))


def weight_multiset(patterns: Iterable[GZPattern]) -> Counter:
    return Counter(weight_vector(p) for p in patterns)


@lru_cache(maxsize=None)
def count_below(row: tuple[int, ...], s: int) -> int:
    """Number of ways to complete rows s-1, ..., 1 under a fixed row s."""
    if s == 1:
        return 1
    return sum(count_below(r, s - 1) for r in branch_row(row, s))


def restriction_table(hw: HighestWeight) -> list[tuple[tuple[int, ...], int]]:
    """Second rows of V(hw) with the dimension of the gl(n|n-1) module under each."""
    _check_hw(hw)
    s = 2 * hw.n
    return [(r, count_below(r, s - 1)) for r in branch_row(hw.as_row(), s)]

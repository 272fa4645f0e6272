"""Hook partitions, covariant highest weights and supersymmetric Schur data.

A covariant gl(k|n) module is labelled by a partition inside the
(k, n)-hook.  Its highest weight, its restrictions to gl(k|n-1) and
gl(k-1|n), and its character s_lambda(x|y) are all computed here by
the strip branching rules, which are also what drives pattern
enumeration in :mod:`oddgz.patterns`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

Partition = tuple[int, ...]


class HookViolation(ValueError):
    pass


def as_partition(parts: Sequence[int]) -> Partition:
    """Validate and canonicalize (drop trailing zeros)."""
    p = tuple(int(x) for x in parts)
    while p and p[-1] == 0:
        p = p[:-1]
    if any(x <= 0 for x in p):
        raise ValueError(f"partition parts must be positive: {parts!r}")
    if any(a < b for a, b in zip(p, p[1:])):
        raise ValueError(f"partition must be weakly decreasing: {parts!r}")
    return p


def conjugate(lam: Sequence[int]) -> Partition:
    lam = as_partition(lam)
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def part(lam: Sequence[int], i: int) -> int:
    """lambda_i with 1-based i, zero past the length."""
    return lam[i - 1] if 1 <= i <= len(lam) else 0


def in_hook(lam: Sequence[int], k: int, n: int) -> bool:
    return part(as_partition(lam), k + 1) <= n


def partitions(size: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``size`` in reverse lexicographic order."""
    if max_part is None:
        max_part = size
    if size == 0:
        yield ()
        return
    for first in range(min(size, max_part), 0, -1):
        for rest in partitions(size - first, first):
            yield (first,) + rest


def hook_partitions(max_size: int, k: int, n: int) -> list[Partition]:
    return [
        lam
        for s in range(max_size + 1)
        for lam in partitions(s)
        if in_hook(lam, k, n)
    ]


@dataclass(frozen=True)
class HighestWeight:
    """``[m_{-k},...,m_{-1}; m_1,...,m_n]`` with nonnegative integer labels.

    ``neg`` is stored left to right, so ``neg[0]`` is m_{-k} and
    ``neg[-1]`` is m_{-1}.
    """

    neg: tuple[int, ...]
    pos: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "neg", tuple(int(x) for x in self.neg))
        object.__setattr__(self, "pos", tuple(int(x) for x in self.pos))

    @property
    def k(self) -> int:
        return len(self.neg)

    @property
    def n(self) -> int:
        return len(self.pos)

    def label(self, i: int) -> int:
        """m_i for i in -k..-1, 1..n."""
        if -self.k <= i <= -1:
            return self.neg[self.k + i]
        if 1 <= i <= self.n:
            return self.pos[i - 1]
        raise IndexError(f"no label with index {i}")

    def violations(self) -> list[str]:
        out = []
        labels = self.neg + self.pos
        if any(x < 0 for x in labels):
            out.append("labels must be nonnegative")
        for a, b in zip(self.neg, self.neg[1:]):
            if a < b:
                out.append("negative-side labels must weakly decrease (cond1)")
                break
        for a, b in zip(self.pos, self.pos[1:]):
            if a < b:
                out.append("positive-side labels must weakly decrease (cond1)")
                break
        npos = sum(1 for x in self.pos if x > 0)
        m_1 = self.neg[-1] if self.neg else None
        if m_1 is not None and m_1 < npos:
            out.append(f"m_-1 = {m_1} < #{{i: m_i > 0}} = {npos} (cond2)")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def check(self) -> "HighestWeight":
        bad = self.violations()
        if bad:
            raise ValueError(f"invalid highest weight {self}: {'; '.join(bad)}")
        return self

    def as_row(self) -> tuple[int, ...]:
        return self.neg + self.pos

    def to_json(self) -> dict:
        return {"neg": list(self.neg), "pos": list(self.pos)}

    @classmethod
    def parse(cls, text: str) -> "HighestWeight":
        """Parse ``"m_-k,...,m_-1;m_1,...,m_n"``."""
        if ";" not in text:
            raise ValueError(f"highest weight needs a ';' separator: {text!r}")
        left, right = text.split(";", 1)

        def nums(s):
            s = s.strip()
            return tuple(int(x) for x in s.split(",")) if s else ()

        return cls(nums(left), nums(right))

    def __str__(self):
        return f"[{','.join(map(str, self.neg))};{','.join(map(str, self.pos))}]"


def weight_from_partition(lam: Sequence[int], k: int, n: int) -> HighestWeight:
    lam = as_partition(lam)
    if not in_hook(lam, k, n):
        raise HookViolation(f"{lam} is not inside the ({k},{n})-hook")
    lamc = conjugate(lam)
    neg = tuple(part(lam, k + i + 1) for i in range(-k, 0))
    pos = tuple(max(0, part(lamc, i) - k) for i in range(1, n + 1))
    return HighestWeight(neg, pos)


def partition_from_weight(hw: HighestWeight) -> Partition:
    """Inverse of :func:`weight_from_partition`.

    Rows below the k-th are counted with ``m_j >= i``; the published
    formula's ``m_j <= i`` does not invert the forward map (see
    ``tests/test_schur.py::test_row_count_comparator``).
    """
    hw.check()
    k = hw.k
    top = tuple(hw.label(i - k - 1) for i in range(1, k + 1))
    lower = tuple(
        sum(1 for m in hw.pos if m >= i) for i in range(1, (max(hw.pos, default=0)) + 1)
    )
    return as_partition(top + lower)


def horizontal_strip_predecessors(lam: Sequence[int], k: int, n: int) -> list[Partition]:
    """sigma in the (k-1, n)-hook with lambda/sigma a horizontal strip.

    Ordered reverse-lexicographically (largest sigma first).
    """
    lam = as_partition(lam)
    if not in_hook(lam, k, n):
        raise HookViolation(f"{lam} is not inside the ({k},{n})-hook")
    return [s for s in _horizontal(lam) if k >= 1 and in_hook(s, k - 1, n)]


def vertical_strip_predecessors(lam: Sequence[int], k: int, n: int) -> list[Partition]:
    """sigma in the (k, n-1)-hook with lambda/sigma a vertical strip.

    Computed as horizontal strips of the conjugate; ordered by the
    conjugate, largest first.
    """
    lam = as_partition(lam)
    if not in_hook(lam, k, n):
        raise HookViolation(f"{lam} is not inside the ({k},{n})-hook")
    out = []
    for sc in _horizontal(conjugate(lam)):
        s = conjugate(sc)
        if n >= 1 and in_hook(s, k, n - 1):
            out.append(s)
    return out


def _horizontal(lam: Partition) -> list[Partition]:
    # lambda_{i+1} <= sigma_i <= lambda_i
    ranges = [range(lam[i], part(lam, i + 2) - 1, -1) for i in range(len(lam))]
    out: list[Partition] = [()]
    for r in ranges:
        out = [s + (x,) for s in out for x in r]
    return [as_partition(s) for s in out]


@lru_cache(maxsize=None)
def _dimension(lam: Partition, k: int, n: int) -> int:
    if k == 0 and n == 0:
        return 1 if not lam else 0
    if n >= k and n > 0:
        return sum(_dimension(s, k, n - 1) for s in vertical_strip_predecessors(lam, k, n))
    return sum(_dimension(s, k - 1, n) for s in horizontal_strip_predecessors(lam, k, n))


def super_dimension(lam: Sequence[int], k: int, n: int) -> int:
    """s_lambda(1,...,1 | 1,...,1) by alternating strip branchings."""
    lam = as_partition(lam)
    if not in_hook(lam, k, n):
        raise HookViolation(f"{lam} is not inside the ({k},{n})-hook")
    return _dimension(lam, k, n)


@lru_cache(maxsize=None)
def _character(lam: Partition, k: int, n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    # exponent vectors ordered (x_{-k},...,x_{-1}; y_1,...,y_n)
    if k == 0 and n == 0:
        return (((), 1),) if not lam else ()
    size = sum(lam)
    acc: Counter = Counter()
    if n >= k and n > 0:
        for s in vertical_strip_predecessors(lam, k, n):
            e = size - sum(s)
            for vec, mult in _character(s, k, n - 1):
                acc[vec + (e,)] += mult
    else:
        for s in horizontal_strip_predecessors(lam, k, n):
            e = size - sum(s)
            for vec, mult in _character(s, k - 1, n):
                acc[(e,) + vec] += mult
    return tuple(sorted(acc.items()))


def super_character(lam: Sequence[int], k: int, n: int) -> Counter:
    """Multiset of monomial exponent vectors of s_lambda(x_{-k..-1} | y_{1..n}).

    Keys are tuples ``(a_{-k},...,a_{-1}, b_1,...,b_n)``.
    """
    lam = as_partition(lam)
    if not in_hook(lam, k, n):
        raise HookViolation(f"{lam} is not inside the ({k},{n})-hook")
    return Counter(dict(_character(lam, k, n)))

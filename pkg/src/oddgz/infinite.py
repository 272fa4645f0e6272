"""Stable infinite GZ patterns and covariant gl(inf|inf) modules.

A stable weight has an eventually constant negative side and a finitely
supported positive side.  A stable pattern stores only its rows 1..N,
where N is the stability index; every row above N is the top weight
restricted to that row's columns.  The generator actions reuse the finite
formulas through an entry accessor, so the two can only agree or both be
wrong, which is exactly what the truncation check compares.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .action import (
    FormulaIntegrityError,
    Generator,
    Kind,
    apply,
    diagonal_value,
    generators,
    lowering_generators,
    odd_terms,
)
from .patterns import GZPattern, highest_weight_pattern, row_shape, validate
from .scalars import RadicalSum, SignedRadical
from .schur import HighestWeight, partition_from_weight, super_dimension
from .verify import Budget, VerificationReport


class InvalidStableWeight(ValueError):
    pass


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class StableWeight:
    """[..., m_-2, m_-1; m_1, m_2, ...] with m_-k = neg_tail for large k.

    ``neg_exceptions`` lists m_-1, m_-2, ... until the tail value is
    reached; ``pos`` lists m_1, m_2, ... with later entries zero.  Both are
    stored without redundant trailing entries.
    """

    neg_tail: int
    neg_exceptions: tuple[int, ...] = ()
    pos: tuple[int, ...] = ()

    def __post_init__(self):
        tail = int(self.neg_tail)
        exc = [int(x) for x in self.neg_exceptions]
        pos = [int(x) for x in self.pos]
        while exc and exc[-1] == tail:
            exc.pop()
        while pos and pos[-1] == 0:
            pos.pop()
        object.__setattr__(self, "neg_tail", tail)
        object.__setattr__(self, "neg_exceptions", tuple(exc))
        object.__setattr__(self, "pos", tuple(pos))
        bad = self.violations()
        if bad:
            raise InvalidStableWeight("; ".join(bad))

    def violations(self) -> list[str]:
        out = []
        outward = list(self.neg_exceptions) + [self.neg_tail]
        if any(x < 0 for x in outward + list(self.pos)):
            out.append("labels must be nonnegative")
        if any(a > b for a, b in zip(outward, outward[1:])):
            out.append("m_-k must weakly increase with k and stay <= the tail value")
        if any(a < b for a, b in zip(self.pos, self.pos[1:])):
            out.append("positive labels must weakly decrease")
        if self.label(-1) < len(self.pos):
            out.append(f"m_-1 = {self.label(-1)} < #{{i > 0: m_i > 0}} = {len(self.pos)}")
        return out

    def label(self, i: int) -> int:
        if i < 0:
            k = -i
            return self.neg_exceptions[k - 1] if k <= len(self.neg_exceptions) else self.neg_tail
        if i > 0:
            return self.pos[i - 1] if i <= len(self.pos) else 0
        raise IndexError("there is no column 0")

    def row(self, s: int) -> tuple[int, ...]:
        """The top weight restricted to the columns of row s."""
        kn, kp = row_shape(s)
        return tuple(self.label(i) for i in range(-kn, 0)) + tuple(self.label(i) for i in range(1, kp + 1))

    def signature(self, n: int) -> HighestWeight:
        """[m]^{2n} = [m_-n, ..., m_-1; m_1, ..., m_n]."""
        r = self.row(2 * n)
        return HighestWeight(r[:n], r[n:])

    def to_json(self) -> dict:
        return {
            "negTail": self.neg_tail,
            "negExceptions": list(self.neg_exceptions),
            "pos": list(self.pos),
        }

    @classmethod
    def from_json(cls, obj) -> "StableWeight":
        return cls(int(obj["negTail"]), tuple(obj.get("negExceptions", ())), tuple(obj.get("pos", ())))

    @classmethod
    def parse(cls, text: str) -> "StableWeight":
        """``"tail:e1,e2,...;p1,p2,..."``; the exception list may be empty."""
        if ";" not in text or ":" not in text.split(";", 1)[0]:
            raise ValueError(f"stable weight must look like 'tail:m_-1,...;m_1,...', got {text!r}")
        left, right = text.split(";", 1)
        tail, exc = left.split(":", 1)

        def nums(s):
            s = s.strip()
            return tuple(int(x) for x in s.split(",")) if s else ()

        return cls(int(tail), nums(exc), nums(right))

    def __str__(self):
        exc = ",".join(map(str, self.neg_exceptions))
        return f"[{self.neg_tail}:{exc};{','.join(map(str, self.pos))}]"


@dataclass(frozen=True)
class StablePattern:
    top: StableWeight
    rows: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        for s, r in enumerate(rows, start=1):
            if len(r) != sum(row_shape(s)):
                raise ValueError(f"row {s} has {len(r)} entries, expected {sum(row_shape(s))}")
        object.__setattr__(self, "rows", _canonical(self.top, rows))

    @property
    def stability_index(self) -> int:
        return len(self.rows)

    def row(self, s: int) -> tuple[int, ...]:
        if s < 1:
            raise IndexError(f"row {s} out of range")
        return self.rows[s - 1] if s <= len(self.rows) else self.top.row(s)

    def entry(self, i: int, s: int) -> int:
        kn, kp = row_shape(s)
        if -kn <= i <= -1:
            return self.row(s)[kn + i]
        if 1 <= i <= kp:
            return self.row(s)[kn + i - 1]
        raise IndexError(f"no entry at column {i} of row {s}")

    __call__ = entry

    def shifted(self, i: int, s: int, delta: int) -> "StablePattern":
        rows = [list(self.row(t)) for t in range(1, max(s, len(self.rows)) + 1)]
        kn = row_shape(s)[0]
        rows[s - 1][kn + i if i < 0 else kn + i - 1] += delta
        return StablePattern(self.top, tuple(tuple(r) for r in rows))

    def to_json(self) -> dict:
        return dict(
            self.top.to_json(),
            stabilityIndex=self.stability_index,
            rows=[list(r) for r in self.rows],
        )

    @classmethod
    def from_json(cls, obj) -> "StablePattern":
        p = cls(StableWeight.from_json(obj), tuple(tuple(r) for r in obj["rows"]))
        if "stabilityIndex" in obj and int(obj["stabilityIndex"]) != p.stability_index:
            raise ValueError("stabilityIndex does not match the stored rows")
        return p


def _canonical(top: StableWeight, rows: tuple) -> tuple:
    n = len(rows)
    while n and rows[n - 1] == top.row(n):
        n -= 1
    return rows[:n]


def validation_rank(p: StablePattern) -> int:
    """Smallest n whose truncation sees every row that can break a condition."""
    return max(1, (p.stability_index + 2) // 2)


def stable_violations(p: StablePattern):
    return validate(truncate(p, validation_rank(p)))


def is_stable_valid(p: StablePattern) -> bool:
    return not stable_violations(p)


def infinite_highest_weight(m: StableWeight) -> StablePattern:
    return StablePattern(m, ())


def truncate(p: StablePattern, n: int) -> GZPattern:
    """The 2n-th lower part, a basis pattern of V([m]^{2n})."""
    if n < 1:
        raise TruncationError("rank must be positive")
    if 2 * n < p.stability_index:
        raise TruncationError(
            f"cannot truncate at n = {n}: stability index {p.stability_index} > 2n"
        )
    return GZPattern(n, tuple(p.row(s) for s in range(1, 2 * n + 1)))


def lift(q: GZPattern, m: StableWeight) -> StablePattern:
    """Inverse of :func:`truncate` on patterns whose top row is [m]^{2n}."""
    if q.rows[-1] != m.row(2 * q.n):
        raise TruncationError(f"top row {q.rows[-1]} is not the signature of {m}")
    return StablePattern(m, q.rows)


def infinite_apply(g: Generator, p: StablePattern) -> list[tuple[StablePattern, SignedRadical]]:
    """Same formulas as the finite action, read through the stable accessor."""
    if g.kind in (Kind.DIAG_NEG, Kind.DIAG_POS):
        v = diagonal_value(p.entry, g.kind, g.i)
        return [(p, SignedRadical(Fraction(v)))] if v else []
    out = []
    for (col, row, delta), c in odd_terms(p.entry, g.kind, g.i, lambda mv: is_stable_valid(p.shifted(*mv))):
        q = p.shifted(col, row, delta)
        if not is_stable_valid(q):
            raise FormulaIntegrityError(f"{g} produced an invalid stable pattern")
        out.append((q, c))
    return out


def _terms_key(terms) -> list:
    return sorted((q.sort_key(), str(c)) for q, c in terms)


def lowering_orbit(m: StableWeight, n: int, depth: int) -> list[StablePattern]:
    """Patterns reachable from the highest weight by at most ``depth`` gl(n|n) lowerings."""
    start = infinite_highest_weight(m)
    seen = {start: 0}
    queue = deque([start])
    gens = lowering_generators(n)
    while queue:
        p = queue.popleft()
        if seen[p] == depth:
            continue
        for g in gens:
            for q, _ in infinite_apply(g, p):
                if q not in seen:
                    seen[q] = seen[p] + 1
                    queue.append(q)
    return sorted(seen, key=lambda p: truncate(p, n).sort_key())


def check_truncation_consistency(
    m: StableWeight, n: int, budget: Budget | None = None, depth: int = 4
) -> VerificationReport:
    """truncate(infinite_apply(g, p)) == apply(g, truncate(p)) term by term."""
    hw = m.signature(n)
    dim = (budget or Budget.from_env()).check(hw)
    rep = VerificationReport(
        "truncation", {"weight": str(m), "n": n, "depth": depth, "dim": dim}
    )
    sample = lowering_orbit(m, n, depth)
    growth = 0
    for p in sample:
        t = truncate(p, n)
        for g in generators(n):
            rep.checks += 1
            inf = infinite_apply(g, p)
            for q, _ in inf:
                growth = max(growth, q.stability_index - p.stability_index)
            left = [(truncate(q, n), c) for q, c in inf]
            right = apply(g, t)
            if _terms_key(left) != _terms_key(right):
                rep.fail(
                    f"{g} commutes with truncation",
                    p.to_json(),
                    [[q.to_json(), str(c)] for q, c in right],
                    [[q.to_json(), str(c)] for q, c in left],
                )
    rep.params["patterns"] = len(sample)
    rep.params["maxStabilityIndex"] = max(p.stability_index for p in sample)
    rep.params["maxIndexGrowth"] = growth
    return rep


class _Echelon:
    """Row echelon basis of sparse vectors over RadicalSum."""

    def __init__(self, order: dict):
        self.order = order  # pattern -> position, fixes pivot choice
        self.rows: dict = {}  # pivot pattern -> vector with 1 at pivot

    def reduce(self, vec: dict) -> dict:
        vec = dict(vec)
        for piv in sorted(self.rows, key=self.order.__getitem__):
            c = vec.get(piv)
            if c is None:
                continue
            for q, x in self.rows[piv].items():
                v = vec.get(q, RadicalSum()) - c * x
                if v.is_zero():
                    vec.pop(q, None)
                else:
                    vec[q] = v
        return vec

    def add(self, vec: dict) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = min(vec, key=self.order.__getitem__)
        inv = vec[piv].inverse()
        row = {q: x * inv for q, x in vec.items()}
        for other in self.rows.values():
            c = other.get(piv)
            if c is not None:
                for q, x in row.items():
                    v = other.get(q, RadicalSum()) - c * x
                    if v.is_zero():
                        other.pop(q, None)
                    else:
                        other[q] = v
        self.rows[piv] = row
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def connectivity_probe(m: StableWeight, n: int, budget: Budget | None = None) -> VerificationReport:
    """Exact rank of the span generated from v_Lambda by all gl(n|n) generators."""
    hw = m.signature(n)
    dim = (budget or Budget.from_env()).check(hw)
    rep = VerificationReport("connectivity", {"weight": str(m), "n": n, "dim": dim})
    start = truncate(infinite_highest_weight(m), n)
    if start != highest_weight_pattern(hw):
        rep.fail("truncated hwv", start.to_json(), highest_weight_pattern(hw).to_json(), start.to_json())
    # positions for pivots come from reachable patterns; everything reached is a basis pattern
    order: dict = {}
    ech = _Echelon(order)
    gens = [g for g in generators(n) if g.kind not in (Kind.DIAG_NEG, Kind.DIAG_POS)]
    order[start] = 0
    queue = deque()
    v0 = {start: RadicalSum({1: 1})}
    ech.add(v0)
    queue.append(v0)
    while queue:
        v = queue.popleft()
        for g in gens:
            w: dict = {}
            for p, x in v.items():
                for q, c in apply(g, p):
                    w[q] = w.get(q, RadicalSum()) + x * c
            w = {q: x for q, x in w.items() if not x.is_zero()}
            for q in w:
                order.setdefault(q, len(order))
            if ech.add(w):
                queue.append(w)
    rep.checks += 1
    expected = super_dimension(partition_from_weight(hw), n, n)
    rep.params["rank"] = ech.rank
    if ech.rank != expected:
        rep.fail("orbit spans V([m]^{2n})", {"n": n}, expected, ech.rank)
    return rep


def parse_stable_pattern(obj) -> StablePattern:
    p = StablePattern.from_json(obj)
    bad = stable_violations(p)
    if bad:
        raise ValueError("invalid stable pattern: " + "; ".join(map(str, bad)))
    return p


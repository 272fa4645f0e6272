"""Matrix elements of the odd generators on the odd GZ basis.

The coefficient formulas are written against an ``entry(i, s)`` accessor
(m_{i,s}) so that finite patterns and stable infinite patterns share them.
Each formula term is skipped when its theta prefactor vanishes, before any
denominator is formed, and also when its target is not a basis pattern.

On atypical labels two interpolation nodes can coincide, so a surviving
term may carry a zero factor both above and below the fraction bar.  Such
zeros are cancelled in pairs; this is the generic limit, and the defining
relations hold exactly with it.  Only an unmatched zero in a denominator
or a negative radicand raises :class:`FormulaIntegrityError`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .patterns import (
    Entry,
    GZPattern,
    enumerate_patterns,
    is_valid,
    theta_of,
    validate,
    weight,
)
from .scalars import RadicalSum, SignedRadical, accumulate_product, normalize
from .schur import HighestWeight


class FormulaIntegrityError(ArithmeticError):
    pass


class Kind(enum.Enum):
    DIAG_NEG = "diag_neg"  # E_{-i,-i}
    DIAG_POS = "diag_pos"  # E_{i,i}
    RAISE_II = "raise_ii"  # E_{-i,i}
    RAISE_I1 = "raise_i1"  # E_{-i-1,i}
    LOWER_II = "lower_ii"  # E_{i,-i}
    LOWER_I1 = "lower_i1"  # E_{i,-i-1}


_INDEX = {
    Kind.DIAG_NEG: lambda i: (-i, -i),
    Kind.DIAG_POS: lambda i: (i, i),
    Kind.RAISE_II: lambda i: (-i, i),
    Kind.RAISE_I1: lambda i: (-i - 1, i),
    Kind.LOWER_II: lambda i: (i, -i),
    Kind.LOWER_I1: lambda i: (i, -i - 1),
}


@dataclass(frozen=True)
class Generator:
    kind: Kind
    i: int

    def __post_init__(self):
        if self.i < 1:
            raise ValueError("generator index must be positive")

    @property
    def indices(self) -> tuple[int, int]:
        return _INDEX[self.kind](self.i)

    @property
    def parity(self) -> int:
        a, b = self.indices
        return 1 if a * b < 0 else 0

    def fits(self, n: int) -> bool:
        if self.kind in (Kind.RAISE_I1, Kind.LOWER_I1):
            return self.i <= n - 1
        return self.i <= n

    @classmethod
    def from_indices(cls, a: int, b: int) -> "Generator":
        for kind, f in _INDEX.items():
            i = abs(b) if kind in (Kind.RAISE_II, Kind.RAISE_I1) else abs(a)
            if i >= 1 and f(i) == (a, b):
                return cls(kind, i)
        raise ValueError(f"E_{{{a},{b}}} is not one of the odd generators")

    def __str__(self):
        a, b = self.indices
        return f"E({a},{b})"


def generators(n: int) -> list[Generator]:
    """All Cartan elements and odd generators of gl(n|n)."""
    out = []
    for i in range(1, n + 1):
        out += [Generator(Kind.DIAG_NEG, i), Generator(Kind.DIAG_POS, i)]
        out += [Generator(Kind.RAISE_II, i), Generator(Kind.LOWER_II, i)]
        if i < n:
            out += [Generator(Kind.RAISE_I1, i), Generator(Kind.LOWER_I1, i)]
    return out


def raising_generators(n: int) -> list[Generator]:
    out = []
    for i in range(1, n + 1):
        out.append(Generator(Kind.RAISE_II, i))
        if i < n:
            out.append(Generator(Kind.RAISE_I1, i))
    return out


def lowering_generators(n: int) -> list[Generator]:
    out = []
    for i in range(1, n + 1):
        out.append(Generator(Kind.LOWER_II, i))
        if i < n:
            out.append(Generator(Kind.LOWER_I1, i))
    return out


def l_of(m: Entry, i: int, s: int) -> int:
    return m(i, s) - i if i < 0 else -m(i, s) + i


def l_value(p: GZPattern, i: int, s: int) -> int:
    if not 1 <= s <= 2 * p.n:
        raise IndexError(f"row {s} out of range")
    return l_of(p.entry, i, s)


def diagonal_value(m: Entry, kind: Kind, i: int) -> int:
    def row_sum(s, lo, hi):
        return sum(m(j, s) for j in range(lo, hi + 1) if j != 0)

    if kind is Kind.DIAG_NEG:
        return row_sum(2 * i - 1, -i, i - 1) - (row_sum(2 * i - 2, -i + 1, i - 1) if i > 1 else 0)
    if kind is Kind.DIAG_POS:
        return row_sum(2 * i, -i, i) - row_sum(2 * i - 1, -i, i - 1)
    raise ValueError(f"{kind} is not diagonal")


def apply_diagonal(g: Generator, p: GZPattern) -> int:
    if not g.fits(p.n):
        raise ValueError(f"{g} is not a generator of gl({p.n}|{p.n})")
    return diagonal_value(p.entry, g.kind, g.i)


def _coefficient(sign_exp: int, outer: int, num: list[int], den: list[int], where: str) -> SignedRadical:
    # S(sign_exp) * sqrt(outer * prod(num) / prod(den)), with coincident
    # zero factors cancelled in pairs
    zn, zd = num.count(0), den.count(0)
    cancel = min(zn, zd)
    if zd > cancel:
        raise FormulaIntegrityError(f"vanishing denominator ({where})")
    if zn > cancel:
        return SignedRadical.zero()
    q = Fraction(outer)
    for v in num:
        if v:
            q *= v
    for v in den:
        if v:
            q /= v
    if q < 0:
        raise FormulaIntegrityError(f"negative radicand {q} ({where})")
    return normalize(-1 if sign_exp % 2 else 1, q)


def _theta_below(m: Entry, i: int, neg_upto: int, pos_upto: int) -> int:
    """Sum of theta_{j,2s-1} (s <= neg_upto, j=-s..-1) and theta_{j,2s} (s <= pos_upto, j=1..s)."""
    t = 0
    for s in range(1, neg_upto + 1):
        t += sum(theta_of(m, j, 2 * s - 1) for j in range(-s, 0))
    for s in range(1, pos_upto + 1):
        t += sum(theta_of(m, j, 2 * s) for j in range(1, s + 1))
    return t


Move = tuple[int, int, int]  # (column, row, +1/-1)


def odd_terms(
    m: Entry, kind: Kind, i: int, admissible: Callable[[Move], bool]
) -> list[tuple[Move, SignedRadical]]:
    """Nonzero terms of an odd generator acting on the basis vector with labels ``m``.

    ``admissible(move)`` says whether the shifted pattern is a basis
    pattern.  Terms landing outside the basis are dropped before their
    coefficient is formed: there the numerator zero that should kill the
    term can be paired off against an atypical denominator zero.
    """
    L = lambda a, s: l_of(m, a, s)  # noqa: E731
    th = lambda a, s: theta_of(m, a, s)  # noqa: E731
    out: list[tuple[Move, SignedRadical]] = []

    if kind in (Kind.RAISE_II, Kind.LOWER_II):
        raising = kind is Kind.RAISE_II
        delta = 1 if raising else -1
        r2, r1, r0 = 2 * i, 2 * i - 1, 2 * i - 2
        base_a = _theta_below(m, i, i - 1, i - 1)
        for k in range(-i, 0):
            t = th(k, r1)
            if (t if raising else 1 - t) == 0 or not admissible((k, r1, delta)):
                continue
            sign = base_a + sum(th(j, r1) for j in range(-i, k))
            lk = L(k, r2)
            num = list(lk - L(j, r0) - 1 for j in range(-i + 1, 0)) + list(
                lk - L(j, r2) for j in range(1, i + 1)
            )
            den = list(lk - L(j, r2) for j in range(-i, 0) if j != k) + list(
                lk - L(j, r0) - 1 for j in range(1, i)
            )
            c = _coefficient(sign, 1, num, den, f"{kind.value}({i}) k={k}")
            if not c.is_zero():
                out.append(((k, r1, delta), c))
        base_b = _theta_below(m, i, i - 1, i - 2)
        for k in range(1, i):
            t = th(k, r0)
            if (t if raising else 1 - t) == 0 or not admissible((k, r1, delta)):
                continue
            sign = base_b + sum(th(j, r0) for j in range(1, k))
            lk = L(k, r1)
            if raising:
                num = list(L(j, r0) - lk + 1 for j in range(-i + 1, 0)) + list(
                    L(j, r2) - lk for j in range(1, i + 1)
                )
                den = list(L(j, r2) - lk for j in range(-i, 0)) + list(
                    L(j, r0) - lk + 1 for j in range(1, i) if j != k
                )
            else:
                num = list(L(j, r0) - lk for j in range(-i + 1, 0)) + list(
                    L(j, r2) - lk - 1 for j in range(1, i + 1)
                )
                den = list(L(j, r2) - lk - 1 for j in range(-i, 0)) + list(
                    L(j, r0) - lk for j in range(1, i) if j != k
                )
            c = _coefficient(sign, -1, num, den, f"{kind.value}({i}) k={k}")
            if not c.is_zero():
                out.append(((k, r1, delta), c))
        return out

    if kind in (Kind.RAISE_I1, Kind.LOWER_I1):
        raising = kind is Kind.RAISE_I1
        delta = -1 if raising else 1
        r3, r2, r1 = 2 * i + 1, 2 * i, 2 * i - 1
        base_a = _theta_below(m, i, i - 1, i - 1)
        for k in range(-i, 0):
            t = th(k, r1)
            if (t if raising else 1 - t) == 0 or not admissible((k, r2, delta)):
                continue
            sign = base_a + sum(th(j, r1) for j in range(-i, k))
            shift = 0 if raising else 1
            num = list(L(k, r2) - L(j, r3) + shift for j in range(-i - 1, 0)) + list(
                L(k, r1) - L(j, r1) for j in range(1, i)
            )
            den = list(L(k, r1) - L(j, r1) for j in range(-i, 0) if j != k) + list(
                L(k, r1) - L(j, r3) + 1 for j in range(1, i + 1)
            )
            c = _coefficient(sign, -1, num, den, f"{kind.value}({i}) k={k}")
            if not c.is_zero():
                out.append(((k, r2, delta), c))
        base_b = _theta_below(m, i, i, i - 1)
        for k in range(1, i + 1):
            t = th(k, r2)
            if (t if raising else 1 - t) == 0 or not admissible((k, r2, delta)):
                continue
            sign = base_b + sum(th(j, r2) for j in range(1, k))
            lk3 = L(k, r3)
            shift = 0 if raising else 1
            num = list(L(j, r3) - lk3 for j in range(-i - 1, 0)) + list(
                L(j, r1) - L(k, r2) + shift for j in range(1, i)
            )
            den = list(L(j, r1) - lk3 + 1 for j in range(-i, 0)) + list(
                L(j, r3) - lk3 for j in range(1, i + 1) if j != k
            )
            c = _coefficient(sign, 1, num, den, f"{kind.value}({i}) k={k}")
            if not c.is_zero():
                out.append(((k, r2, delta), c))
        return out

    raise ValueError(f"{kind} is not an odd generator")


def _apply_odd(g: Generator, p: GZPattern) -> list[tuple[GZPattern, SignedRadical]]:
    if not g.fits(p.n):
        raise ValueError(f"{g} is not a generator of gl({p.n}|{p.n})")
    out = []
    admissible = lambda mv: is_valid(p.shifted(*mv))  # noqa: E731
    for (col, row, delta), c in odd_terms(p.entry, g.kind, g.i, admissible):
        q = p.shifted(col, row, delta)
        if not is_valid(q):
            raise FormulaIntegrityError(
                f"{g} produced an invalid pattern with coefficient {c}: "
                + "; ".join(map(str, validate(q)))
            )
        out.append((q, c))
    return out


def apply_raising(g: Generator, p: GZPattern) -> list[tuple[GZPattern, SignedRadical]]:
    if g.kind not in (Kind.RAISE_II, Kind.RAISE_I1):
        raise ValueError(f"{g} is not a raising generator")
    return _apply_odd(g, p)


def apply_lowering(g: Generator, p: GZPattern) -> list[tuple[GZPattern, SignedRadical]]:
    if g.kind not in (Kind.LOWER_II, Kind.LOWER_I1):
        raise ValueError(f"{g} is not a lowering generator")
    return _apply_odd(g, p)


def apply(g: Generator, p: GZPattern) -> list[tuple[GZPattern, SignedRadical]]:
    """Uniform interface: diagonal generators return ``[(p, eigenvalue)]`` (or [])."""
    if g.kind in (Kind.DIAG_NEG, Kind.DIAG_POS):
        v = apply_diagonal(g, p)
        return [(p, SignedRadical(Fraction(v)))] if v else []
    return _apply_odd(g, p)


# --- sparse operators -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SparseOperator:
    """Sparse square matrix over RadicalSum with a Z2 parity."""

    dim: int
    entries: dict = field(default_factory=dict)  # (row, col) -> RadicalSum
    parity: int = 0

    def __post_init__(self):
        if any(v.is_zero() for v in self.entries.values()):
            object.__setattr__(
                self, "entries", {k: v for k, v in self.entries.items() if not v.is_zero()}
            )

    def __eq__(self, other):
        if not isinstance(other, SparseOperator):
            return NotImplemented
        return self.dim == other.dim and self.entries == other.entries

    def is_zero(self) -> bool:
        return not self.entries

    def get(self, r: int, c: int) -> RadicalSum:
        return self.entries.get((r, c), RadicalSum())

    def transpose(self) -> "SparseOperator":
        return SparseOperator(self.dim, {(c, r): v for (r, c), v in self.entries.items()}, self.parity)

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        _same_dim(self, other)
        out = dict(self.entries)
        for key, v in other.entries.items():
            s = out[key] + v if key in out else v
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SparseOperator(self.dim, out, self.parity)

    def __neg__(self) -> "SparseOperator":
        return SparseOperator(self.dim, {k: -v for k, v in self.entries.items()}, self.parity)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-other)

    def scale(self, c) -> "SparseOperator":
        return SparseOperator(self.dim, {k: v * c for k, v in self.entries.items()}, self.parity)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        _same_dim(self, other)
        by_col: dict[int, list] = {}
        for (r, k), v in self.entries.items():
            by_col.setdefault(k, []).append((r, v))
        acc: dict[tuple[int, int], dict] = {}
        for (k, c), bv in other.entries.items():
            for r, av in by_col.get(k, ()):
                cell = acc.setdefault((r, c), {})
                for d1, c1 in av._terms.items():
                    for d2, c2 in bv._terms.items():
                        accumulate_product(cell, d1, c1, d2, c2)
        entries = {}
        for key, cell in acc.items():
            cell = {d: c for d, c in cell.items() if c}
            if cell:
                entries[key] = RadicalSum._raw(cell)
        return SparseOperator(self.dim, entries, (self.parity + other.parity) % 2)

    def apply_vector(self, vec: dict[int, RadicalSum]) -> dict[int, RadicalSum]:
        out: dict[int, RadicalSum] = {}
        for (r, c), v in self.entries.items():
            if c in vec:
                out[r] = out.get(r, RadicalSum()) + v * vec[c]
        return {k: v for k, v in out.items() if not v.is_zero()}

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "parity": "odd" if self.parity else "even",
            "entries": [
                {"row": r, "col": c, "value": v.to_json()}
                for (r, c), v in sorted(self.entries.items())
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "SparseOperator":
        entries = {
            (int(e["row"]), int(e["col"])): RadicalSum.from_json(e["value"])
            for e in obj["entries"]
        }
        return cls(int(obj["dim"]), entries, 1 if obj["parity"] == "odd" else 0)

    @classmethod
    def zero(cls, dim: int, parity: int = 0) -> "SparseOperator":
        return cls(dim, {}, parity)


def _same_dim(a: SparseOperator, b: SparseOperator) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def super_bracket(a: SparseOperator, b: SparseOperator) -> SparseOperator:
    """AB - (-1)^{|A||B|} BA."""
    _same_dim(a, b)
    ab, ba = a @ b, b @ a
    out = ab + ba if (a.parity and b.parity) else ab - ba
    return SparseOperator(out.dim, out.entries, (a.parity + b.parity) % 2)


# --- modules ------------------------------------------------------------------


def chain_order(n: int) -> list[int]:
    """Indices along the odd simple-root chain: -1, 1, -2, 2, ..., -n, n."""
    out = []
    for i in range(1, n + 1):
        out += [-i, i]
    return out


def weyl_path(a: int, b: int, n: int) -> list[int]:
    """Chain nodes from a to b inclusive."""
    order = chain_order(n)
    pa, pb = order.index(a), order.index(b)
    step = 1 if pb >= pa else -1
    return [order[t] for t in range(pa, pb + step, step)]


class CovariantModule:
    """The basis of V(hw) with cached generator and Weyl-element matrices."""

    def __init__(self, hw: HighestWeight):
        self.hw = hw
        self.n = hw.n
        self.basis = enumerate_patterns(hw)
        self.index = {p: t for t, p in enumerate(self.basis)}
        self._gens: dict[Generator, SparseOperator] = {}
        self._weyl: dict[tuple[int, int], SparseOperator] = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def indices(self) -> list[int]:
        return list(range(-self.n, 0)) + list(range(1, self.n + 1))

    def generator_matrix(self, g: Generator) -> SparseOperator:
        if g not in self._gens:
            if not g.fits(self.n):
                raise ValueError(f"{g} is not a generator of gl({self.n}|{self.n})")
            entries = {}
            for col, p in enumerate(self.basis):
                for q, c in apply(g, p):
                    entries[(self.index[q], col)] = c.to_sum()
            self._gens[g] = SparseOperator(self.dim, entries, g.parity)
        return self._gens[g]

    def weyl_element(self, a: int, b: int) -> SparseOperator:
        """E_{ab}, by super brackets along the chain -1, 1, -2, 2, ..., -n, n.

        With c the chain neighbour of a on the way to b,
        E_{ab} = [[E_{ac}, E_{cb}]].
        """
        valid = set(self.indices())
        if a not in valid or b not in valid:
            raise IndexError(f"E_{{{a},{b}}} is outside gl({self.n}|{self.n})")
        key = (a, b)
        if key not in self._weyl:
            if a == b:
                kind = Kind.DIAG_NEG if a < 0 else Kind.DIAG_POS
                op = self.generator_matrix(Generator(kind, abs(a)))
            else:
                path = weyl_path(a, b, self.n)
                if len(path) == 2:
                    op = self.generator_matrix(Generator.from_indices(a, b))
                else:
                    c = path[1]
                    op = super_bracket(self.weyl_element(a, c), self.weyl_element(c, b))
            parity = 1 if a * b < 0 else 0
            self._weyl[key] = SparseOperator(op.dim, op.entries, parity)
        return self._weyl[key]

    def weight_matrix(self, a: int) -> SparseOperator:
        entries = {}
        for t, p in enumerate(self.basis):
            v = weight(p)[a]
            if v:
                entries[(t, t)] = RadicalSum({1: v})
        return SparseOperator(self.dim, entries, 0)


def apply_to_vector(g: Generator, vec: dict) -> dict:
    """Apply a generator to a sparse vector {pattern: RadicalSum}."""
    out: dict = {}
    for p, x in vec.items():
        for q, c in apply(g, p):
            out[q] = out.get(q, RadicalSum()) + x * c
    return {q: v for q, v in out.items() if not v.is_zero()}


@lru_cache(maxsize=32)
def covariant_module(hw: HighestWeight) -> CovariantModule:
    return CovariantModule(hw)


def generator_matrix(g: Generator, hw: HighestWeight) -> SparseOperator:
    return covariant_module(hw).generator_matrix(g)


def weyl_element(a: int, b: int, hw: HighestWeight) -> SparseOperator:
    return covariant_module(hw).weyl_element(a, b)

"""Exact scalars of the form c*sqrt(d) and finite sums of them.

Every matrix element produced by the odd GZ action formulas is a signed
square root of a rational number.  We store such a number as a rational
coefficient times the square root of a squarefree positive integer, which
makes the representation unique and equality a structural comparison.
Sums of these (needed once matrices are multiplied) are kept as a mapping
radicand -> coefficient; the square roots of distinct squarefree integers
are linearly independent over Q, so that mapping is again canonical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

DEFAULT_FACTOR_BOUND = 10**6

Rational = Union[int, Fraction]


class FactorBoundExceeded(ArithmeticError):
    """Raised when squarefree extraction would need primes above the bound."""


@lru_cache(maxsize=65536)
def _split_square(n: int, bound: int) -> tuple[int, int]:
    # n = s**2 * d with d squarefree
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0, 1
    s, d = 1, 1
    rest = n
    p = 2
    while p * p <= rest:
        if p > bound:
            raise FactorBoundExceeded(
                f"cannot extract square part of {n} with trial division up to {bound}"
            )
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= rest
    return s, d


def squarefree_split(n: int, bound: int = DEFAULT_FACTOR_BOUND) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree."""
    return _split_square(int(n), int(bound))


@lru_cache(maxsize=65536)
def _prime_factors(d: int) -> tuple[int, ...]:
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            out.append(p)
            while d % p == 0:
                d //= p
        p += 1 if p == 2 else 2
    if d > 1:
        out.append(d)
    return tuple(out)


def _frac(q: Rational) -> Fraction:
    return q if isinstance(q, Fraction) else Fraction(q)


@dataclass(frozen=True, slots=True)
class SignedRadical:
    """The real number ``coeff * sqrt(radicand)``, in canonical form."""

    coeff: Fraction
    radicand: int = 1

    def __post_init__(self):
        coeff = _frac(self.coeff)
        object.__setattr__(self, "coeff", coeff)
        if self.radicand < 1:
            raise ValueError("radicand must be a positive squarefree integer")
        if coeff == 0 and self.radicand != 1:
            raise ValueError("zero must be stored with radicand 1")
        if squarefree_split(self.radicand)[0] != 1:
            raise ValueError(f"radicand {self.radicand} is not squarefree")

    @classmethod
    def zero(cls) -> "SignedRadical":
        return cls(Fraction(0), 1)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __mul__(self, other):
        if isinstance(other, SignedRadical):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return SignedRadical.zero()
            return SignedRadical(self.coeff * other, self.radicand)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self) -> "SignedRadical":
        return SignedRadical(-self.coeff, self.radicand)

    def square(self) -> Fraction:
        return self.coeff * self.coeff * self.radicand

    def to_float(self) -> float:
        """Approximate value; for diagnostics only."""
        return float(self.coeff) * math.sqrt(self.radicand)

    def to_sum(self) -> "RadicalSum":
        return RadicalSum({self.radicand: self.coeff})

    def to_json(self) -> dict:
        return {"coeff": _fraction_str(self.coeff), "radicand": self.radicand}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SignedRadical":
        return cls(Fraction(obj["coeff"]), int(obj["radicand"]))

    def __str__(self):
        if self.radicand == 1:
            return str(self.coeff)
        if self.coeff == 1:
            return f"sqrt({self.radicand})"
        if self.coeff == -1:
            return f"-sqrt({self.radicand})"
        return f"{self.coeff}*sqrt({self.radicand})"


def _fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def normalize(sign: int, q: Rational, bound: int = DEFAULT_FACTOR_BOUND) -> SignedRadical:
    """Canonical form of ``sign * sqrt(q)`` for a rational ``q >= 0``."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    q = _frac(q)
    if q < 0:
        raise ValueError("cannot take the square root of a negative number")
    if q == 0:
        return SignedRadical.zero()
    # sqrt(a/b) = sqrt(a*b)/b
    s, d = squarefree_split(q.numerator * q.denominator, bound)
    return SignedRadical(Fraction(sign * s, q.denominator), d)


def mul(a: SignedRadical, b: SignedRadical) -> SignedRadical:
    if a.coeff == 0 or b.coeff == 0:
        return SignedRadical.zero()
    g = math.gcd(a.radicand, b.radicand)
    return SignedRadical(
        a.coeff * b.coeff * g, (a.radicand // g) * (b.radicand // g)
    )


class RadicalSum:
    """Immutable finite sum of ``coeff * sqrt(radicand)`` terms.

    Supports the field operations of the multiquadratic extension of Q
    generated by the radicands involved; division uses successive Galois
    conjugation, one prime at a time.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for d, c in terms.items():
                if c:
                    clean[int(d)] = _frac(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "RadicalSum":
        # trusted constructor: caller guarantees squarefree keys, nonzero values
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def of(cls, x) -> "RadicalSum":
        if isinstance(x, RadicalSum):
            return x
        if isinstance(x, SignedRadical):
            return x.to_sum()
        if isinstance(x, (int, Fraction)):
            return cls({1: x})
        raise TypeError(f"cannot convert {type(x).__name__} to RadicalSum")

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_rational(self) -> bool:
        return all(d == 1 for d in self._terms)

    def rational_part(self) -> Fraction:
        return self._terms.get(1, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (SignedRadical, int, Fraction)):
            other = RadicalSum.of(other)
        if not isinstance(other, RadicalSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return add(other, -self)

    def __neg__(self):
        return RadicalSum._raw({d: -c for d, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RadicalSum._raw({})
            return RadicalSum._raw({d: c * other for d, c in self._terms.items()})
        other = _coerce(other)
        if other is None:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for d1, c1 in self._terms.items():
            for d2, c2 in other._terms.items():
                accumulate_product(acc, d1, c1, d2, c2)
        return RadicalSum._raw({d: c for d, c in acc.items() if c})

    __rmul__ = __mul__

    def conjugate(self, p: int) -> "RadicalSum":
        """Image under the automorphism sqrt(p) -> -sqrt(p), p prime."""
        return RadicalSum._raw(
            {d: (-c if d % p == 0 else c) for d, c in self._terms.items()}
        )

    def inverse(self) -> "RadicalSum":
        if not self._terms:
            raise ZeroDivisionError("inverse of zero")
        x, y = self, RadicalSum._raw({1: Fraction(1)})
        primes = sorted({p for d in self._terms for p in _prime_factors(d)})
        for p in primes:
            c = x.conjugate(p)
            x = x * c
            y = y * c
        r = x.rational_part()
        assert x.is_rational() and r != 0
        return y * (1 / r)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def to_float(self) -> float:
        """Approximate value; for diagnostics only."""
        return sum(float(c) * math.sqrt(d) for d, c in self._terms.items())

    def to_json(self) -> list:
        return [
            {"coeff": _fraction_str(c), "radicand": d} for d, c in self.items()
        ]

    @classmethod
    def from_json(cls, arr: Iterable[Mapping]) -> "RadicalSum":
        out = RadicalSum()
        for t in arr:
            out = out + SignedRadical.from_json(t)
        return out

    def __repr__(self):
        return f"RadicalSum({dict(self.items())!r})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = [str(SignedRadical(c, d)) for d, c in self.items()]
        return " + ".join(parts).replace("+ -", "- ")


def _coerce(x):
    if isinstance(x, RadicalSum):
        return x
    if isinstance(x, (SignedRadical, int, Fraction)):
        return RadicalSum.of(x)
    return None


def accumulate_product(
    acc: dict[int, Fraction], d1: int, c1: Fraction, d2: int, c2: Fraction
) -> None:
    """``acc += c1*sqrt(d1) * c2*sqrt(d2)``, in place."""
    if d1 == 1:
        d, c = d2, c1 * c2
    elif d2 == 1:
        d, c = d1, c1 * c2
    else:
        g = math.gcd(d1, d2)
        d, c = (d1 // g) * (d2 // g), c1 * c2 * g
    acc[d] = acc.get(d, 0) + c


def add(a: RadicalSum, b: RadicalSum) -> RadicalSum:
    if not a._terms:
        return b
    if not b._terms:
        return a
    out = dict(a._terms)
    for d, c in b._terms.items():
        s = out.get(d, 0) + c
        if s:
            out[d] = s
        else:
            out.pop(d, None)
    return RadicalSum._raw(out)

"""Exact verification suites for the odd GZ realization.

Every check here compares exact values (RadicalSum or Fraction); there is
no tolerance anywhere.  Module-level suites respect a :class:`Budget` and
refuse to run past it rather than silently sampling.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .action import (
    CovariantModule,
    Generator,
    Kind,
    SparseOperator,
    apply,
    apply_to_vector,
    covariant_module,
    raising_generators,
    super_bracket,
)
from .patterns import GZPattern, branch_row, highest_weight_pattern, weight_multiset
from .scalars import RadicalSum
from .schur import HighestWeight, partition_from_weight, super_character, super_dimension

DEFAULT_MAX_DIM = 500
DEFAULT_MAX_N = 3
BUDGET_ENV = "GZ_ODD_BUDGET"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Budget:
    max_dim: int = DEFAULT_MAX_DIM
    max_n: int = DEFAULT_MAX_N

    @classmethod
    def from_env(cls, max_dim: int | None = None, max_n: int = DEFAULT_MAX_N) -> "Budget":
        """Explicit ``max_dim`` wins, then $GZ_ODD_BUDGET, then the default."""
        if max_dim is None:
            raw = os.environ.get(BUDGET_ENV)
            if raw is not None and raw.strip():
                try:
                    max_dim = int(raw)
                except ValueError:
                    raise ValueError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
            else:
                max_dim = DEFAULT_MAX_DIM
        if max_dim < 1:
            raise ValueError("dimension budget must be positive")
        return cls(max_dim, max_n)

    def check(self, hw: HighestWeight) -> int:
        if hw.n > self.max_n:
            raise BudgetExceeded(f"n = {hw.n} exceeds the budget n <= {self.max_n}")
        dim = super_dimension(partition_from_weight(hw), hw.k, hw.n)
        if dim > self.max_dim:
            raise BudgetExceeded(
                f"dim V({hw}) = {dim} exceeds the budget {self.max_dim} "
                f"(raise it with --budget-dim or ${BUDGET_ENV})"
            )
        return dim


@dataclass
class VerificationReport:
    suite: str
    params: dict = field(default_factory=dict)
    checks: int = 0
    failures: list = field(default_factory=list)
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, relation: str, where, expected, got) -> None:
        self.failures.append(
            {"relation": relation, "where": where, "expected": expected, "got": got}
        )

    def to_json(self) -> dict:
        fails = sorted(self.failures, key=lambda f: (f["relation"], repr(f["where"])))
        return {
            "suite": self.suite,
            "params": self.params,
            "checks": self.checks,
            "failures": fails,
            "seed": self.seed,
        }

    def summary(self) -> str:
        status = "PASS" if self.ok else f"FAIL ({len(self.failures)} failures)"
        return f"{self.suite}: {status}, {self.checks} checks"


def _module(hw: HighestWeight, budget: Budget | None) -> CovariantModule:
    (budget or Budget.from_env()).check(hw)
    return covariant_module(hw)


def _value_json(x: RadicalSum):
    return x.to_json()


def _compare(report: VerificationReport, relation: str, got: SparseOperator, expected: SparseOperator):
    report.checks += 1
    if got == expected:
        return
    diff = got - expected
    (r, c) = min(diff.entries)
    report.fail(relation, [r, c], _value_json(expected.get(r, c)), _value_json(got.get(r, c)))


def _name(a: int, b: int) -> str:
    return f"E({a},{b})"


def _run(tasks: list, fn: Callable, threads: int):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, tasks))
    return [fn(t) for t in tasks]


def check_defining_relations(
    hw: HighestWeight, budget: Budget | None = None, threads: int = 1
) -> VerificationReport:
    """[[E_ab, E_cd]] = d_bc E_ad - (-1)^{|ab||cd|} d_ad E_cb for all index pairs."""
    M = _module(hw, budget)
    rep = VerificationReport("relations", {"hw": str(hw), "dim": M.dim})
    idx = M.indices()
    pairs = [(a, b) for a in idx for b in idx]
    E = {ab: M.weyl_element(*ab) for ab in pairs}  # filled serially; cache is not locked
    zero = SparseOperator.zero(M.dim)

    def one(task):
        (a, b), (c, d) = task
        A, B = E[(a, b)], E[(c, d)]
        rhs = E[(a, d)] if b == c else zero
        if a == d:
            rhs = rhs - E[(c, b)].scale(-1 if A.parity and B.parity else 1)
        got = super_bracket(A, B)
        return f"[[{_name(a, b)},{_name(c, d)}]]", got, rhs

    for relation, got, rhs in _run([(x, y) for x in pairs for y in pairs], one, threads):
        _compare(rep, relation, got, rhs)
    return rep


def check_anticommutator_identities(
    hw: HighestWeight, budget: Budget | None = None, threads: int = 1
) -> VerificationReport:
    """{E_{-i,i}, E_{i,-i}} = E_{-i,-i} + E_{ii} and {E_{-i-1,i}, E_{i,-i-1}} = E_{-i-1,-i-1} + E_{ii}."""
    M = _module(hw, budget)
    rep = VerificationReport("anticommutators", {"hw": str(hw), "dim": M.dim})
    n = hw.n
    fams = [(-i, i) for i in range(1, n + 1)] + [(-i - 1, i) for i in range(1, n)]

    def gen(a, b):
        if a == b:
            return M.generator_matrix(Generator(Kind.DIAG_NEG if a < 0 else Kind.DIAG_POS, abs(a)))
        return M.generator_matrix(Generator.from_indices(a, b))

    mats = {}
    for a, b in fams:
        for key in ((a, b), (b, a), (a, a), (b, b)):
            mats[key] = gen(*key)

    def one(ab):
        a, b = ab
        return (
            f"{{{_name(a, b)},{_name(b, a)}}}",
            super_bracket(mats[(a, b)], mats[(b, a)]),
            mats[(a, a)] + mats[(b, b)],
        )

    for relation, got, rhs in _run(fams, one, threads):
        _compare(rep, relation, got, rhs)
    return rep


def check_unitarity(hw: HighestWeight, budget: Budget | None = None) -> VerificationReport:
    """E_ba equals the transpose of E_ab for every Weyl pair."""
    M = _module(hw, budget)
    rep = VerificationReport("unitarity", {"hw": str(hw), "dim": M.dim})
    idx = M.indices()
    for a in idx:
        for b in idx:
            if a <= b:
                _compare(rep, f"{_name(b, a)} = {_name(a, b)}^T", M.weyl_element(b, a), M.weyl_element(a, b).transpose())
    return rep


def check_character(hw: HighestWeight, budget: Budget | None = None) -> VerificationReport:
    M = _module(hw, budget)
    rep = VerificationReport("character", {"hw": str(hw), "dim": M.dim})
    got = weight_multiset(M.basis)
    expected = super_character(partition_from_weight(hw), hw.k, hw.n)
    rep.checks += 1
    if got != expected:
        keys = sorted(set(got) | set(expected))
        bad = [k for k in keys if got[k] != expected[k]]
        rep.fail("weights = s_lambda(x|y)", list(bad[0]), expected[bad[0]], got[bad[0]])
    return rep


def even_chevalley_raisings(n: int) -> list[tuple[int, int, Generator, Generator]]:
    """(a, b, X, Y) with E_ab = XY + YX, for the even simple raisings of gl(n|n)."""
    out = []
    for i in range(1, n):
        # E_{i,i+1} = {E_{i,-i-1}, E_{-i-1,i+1}}
        out.append((i, i + 1, Generator(Kind.LOWER_I1, i), Generator(Kind.RAISE_II, i + 1)))
        # E_{-i-1,-i} = {E_{-i-1,i}, E_{i,-i}}
        out.append((-i - 1, -i, Generator(Kind.RAISE_I1, i), Generator(Kind.LOWER_II, i)))
    return out


def anticommutator_on_vector(x: Generator, y: Generator, vec: dict) -> dict:
    xy = apply_to_vector(x, apply_to_vector(y, vec))
    yx = apply_to_vector(y, apply_to_vector(x, vec))
    out = dict(xy)
    for p, v in yx.items():
        out[p] = out.get(p, RadicalSum()) + v
    return {p: v for p, v in out.items() if not v.is_zero()}


def check_highest_weight_vector(hw: HighestWeight) -> VerificationReport:
    """Raisings kill v_Lambda and the Cartan elements read off hw.

    Works on the single vector, so it needs no dimension budget.
    """
    rep = VerificationReport("hwv", {"hw": str(hw)})
    v = highest_weight_pattern(hw)
    vec = {v: RadicalSum({1: 1})}
    for g in raising_generators(hw.n):
        rep.checks += 1
        got = apply(g, v)
        if got:
            rep.fail(f"{g} v = 0", v.to_json(), [], [[q.to_json(), str(c)] for q, c in got])
    for a, b, x, y in even_chevalley_raisings(hw.n):
        rep.checks += 1
        got = anticommutator_on_vector(x, y, vec)
        if got:
            rep.fail(f"{_name(a, b)} v = 0", v.to_json(), {}, {str(q.to_json()): str(c) for q, c in got.items()})
    for i in range(1, hw.n + 1):
        for kind, a in ((Kind.DIAG_NEG, -i), (Kind.DIAG_POS, i)):
            rep.checks += 1
            got = apply(Generator(kind, i), v)
            val = got[0][1].coeff if got else 0
            if val != hw.label(a):
                rep.fail(f"{_name(a, a)} v = m_{a} v", v.to_json(), hw.label(a), str(val))
    return rep


# --- rational identities ------------------------------------------------------


def _lagrange_terms(xs: Sequence[Fraction], as_: Sequence[Fraction]) -> list[Fraction]:
    if len(xs) != len(as_):
        raise ValueError("xs and as_ must have the same length")
    if not xs:
        raise ValueError("need at least one node")
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes xs must be pairwise distinct")
    out = []
    for i, xi in enumerate(xs):
        num = Fraction(1)
        for a in as_:
            num *= xi - a
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                den *= xi - xj
        out.append(num / den)
    return out


def check_lagrange_identity(xs: Sequence, as_: Sequence) -> bool:
    """sum_i prod_j (x_i - a_j) / prod_{j != i} (x_i - x_j) == sum_i (x_i - a_i)."""
    xs = [Fraction(x) for x in xs]
    as_ = [Fraction(a) for a in as_]
    lhs = sum(_lagrange_terms(xs, as_), Fraction(0))
    return lhs == sum(xs, Fraction(0)) - sum(as_, Fraction(0))


def check_full_interpolation(xs: Sequence, as_: Sequence, x) -> bool:
    """prod_i (x - a_i) == sum_i c_i prod_{j != i} (x - x_j) + prod_i (x - x_i)."""
    xs = [Fraction(v) for v in xs]
    as_ = [Fraction(a) for a in as_]
    x = Fraction(x)
    lhs = Fraction(1)
    for a in as_:
        lhs *= x - a
    rhs = Fraction(1)
    for xi in xs:
        rhs *= x - xi
    for i, c in enumerate(_lagrange_terms(xs, as_)):
        t = c
        for j, xj in enumerate(xs):
            if j != i:
                t *= x - xj
        rhs += t
    return lhs == rhs


def random_rational(rng: random.Random, span: int = 20, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, max_den))


def random_nodes(rng: random.Random, size: int) -> list[Fraction]:
    xs: list[Fraction] = []
    while len(xs) < size:
        x = random_rational(rng)
        if x not in xs:
            xs.append(x)
    return xs


def check_identity_suite(
    kind: str, samples: int = 100, seed: int = 0, max_n: int = 8, n: int | None = None
) -> VerificationReport:
    """Seeded random instances of the Lagrange or full interpolation identity.

    ``n`` fixes the degree (n+1 nodes); otherwise it is drawn from 0..max_n.
    """
    if kind not in ("lagrange", "interpolation"):
        raise ValueError(f"unknown identity {kind!r}")
    rng = random.Random(seed)
    rep = VerificationReport(kind, {"samples": samples, "maxN": max_n if n is None else n}, seed=seed)
    for t in range(samples):
        deg = n if n is not None else rng.randint(0, max_n)
        xs = random_nodes(rng, deg + 1)
        as_ = [random_rational(rng) for _ in range(deg + 1)]
        rep.checks += 1
        if kind == "lagrange":
            ok = check_lagrange_identity(xs, as_)
        else:
            ok = check_full_interpolation(xs, as_, random_rational(rng))
        if not ok:
            rep.fail(kind, {"sample": t, "xs": [str(v) for v in xs], "as": [str(v) for v in as_]}, True, False)
    return rep


# --- the n = 4, i = 2 diagonal coefficient ---------------------------------------

WORKED_LABELS = ("m-3,5", "m-2,5", "m-1,5", "m1,5", "m2,5", "m-2,3", "m-1,3", "m1,3")


class VanishingDenominator(ValueError):
    pass


def worked_coefficient(labels: Sequence[int]) -> Fraction:
    """Diagonal coefficient of {E_{-3,2}, E_{2,-3}} on a gl(4|4) vector.

    ``labels`` are the eight entries named in :data:`WORKED_LABELS`.
    """
    if len(labels) != 8:
        raise ValueError("expected eight labels")
    b35, b25, b15, m15, m25, b23, b13, m13 = (Fraction(v) for v in labels)
    terms = [
        (
            [b35 - b13 + 1, b25 - b13, b13 - b15 + 1, b13 + m13],
            [b13 + m15 + 1, b13 + m25, b23 - b13 + 1],
        ),
        (
            [b35 + m15 + 2, b25 + m15 + 1, b15 + m15, m15 - m13 + 1],
            [b23 + m15 + 2, b13 + m15 + 1, m15 - m25 + 1],
        ),
        (
            [b35 + m25 + 1, b25 + m25, b15 + m25 - 1, m13 - m25],
            [b23 + m25 + 1, b13 + m25, m15 - m25 + 1],
        ),
        (
            [b35 - b23, b23 - b25 + 1, b23 - b15 + 2, b23 + m13 + 1],
            [b23 + m15 + 2, b23 + m25 + 1, b23 - b13 + 1],
        ),
    ]
    total = Fraction(0)
    for num, den in terms:
        d = Fraction(1)
        for v in den:
            d *= v
        if d == 0:
            raise VanishingDenominator(f"vanishing denominator for labels {tuple(labels)}")
        t = Fraction(1)
        for v in num:
            t *= v
        total += t / d
    return total


def worked_linear_form(labels: Sequence[int]) -> Fraction:
    b35, b25, b15, m15, m25, b23, b13, m13 = (Fraction(v) for v in labels)
    return b35 + b25 + b15 + m15 + m25 - b23 - b13 - m13


def check_worked_coefficient(labels: Sequence[int]) -> bool:
    """Raises :class:`VanishingDenominator` on labels outside the formula's domain."""
    return worked_coefficient(labels) == worked_linear_form(labels)


def worked_labels(p: GZPattern) -> tuple[int, ...]:
    return tuple(p.entry(i, s) for i, s in ((-3, 5), (-2, 5), (-1, 5), (1, 5), (2, 5), (-2, 3), (-1, 3), (1, 3)))


def random_highest_weight(rng: random.Random, n: int, top: int = 6) -> HighestWeight:
    neg = sorted((rng.randint(0, top) for _ in range(n)), reverse=True)
    pos = sorted((rng.randint(0, top) for _ in range(n)), reverse=True)
    allowed = neg[-1]
    pos = [x if t < allowed else 0 for t, x in enumerate(pos)]
    return HighestWeight(tuple(neg), tuple(pos))


def _rows_below(row: tuple[int, ...], s: int, rng: random.Random) -> list[tuple[int, ...]]:
    rows = []
    while s > 1:
        row = rng.choice(branch_row(row, s))
        s -= 1
        rows.append(row)
    return rows[::-1]


def random_pattern(hw: HighestWeight, rng: random.Random) -> GZPattern:
    """A random basis pattern of V(hw), by random choices while branching down."""
    top = hw.as_row()
    return GZPattern(hw.n, tuple(_rows_below(top, 2 * hw.n, rng)) + (top,))


def _resample_below_row5(p: GZPattern, rng: random.Random) -> GZPattern | None:
    # keep rows 3 and 5 (hence the worked labels); redraw rows 1, 2 and 4
    r5, r3 = p.rows[4], p.rows[2]
    fours = [r4 for r4 in branch_row(r5, 5) if r3 in branch_row(r4, 4)]
    r4 = rng.choice(fours)
    low = _rows_below(r3, 3, rng)
    return GZPattern(p.n, tuple(low) + (r3, r4, r5) + p.rows[5:])


def anticommutator_diagonal(x: Generator, y: Generator, p: GZPattern) -> RadicalSum:
    """Coefficient of p in (XY + YX) p."""
    acc = RadicalSum()
    for first, second in ((y, x), (x, y)):
        for q, c in apply(first, p):
            for r, d in apply(second, q):
                if r == p:
                    acc = acc + c.to_sum() * d.to_sum()
    return acc


def check_worked_coefficient_suite(
    samples: int = 100, seed: int = 0, theta_samples: int = 4, top: int = 6
) -> VerificationReport:
    """Random gl(4|4) patterns: the four-term coefficient equals the linear form.

    For each sample, rows 1, 2 and 4 are also redrawn ``theta_samples``
    times with rows 3 and 5 fixed; the diagonal coefficient of the
    anticommutator computed from the generator action must equal the
    four-term value every time, so it does not depend on those thetas.
    """
    rng = random.Random(seed)
    rep = VerificationReport(
        "worked-coefficient", {"samples": samples, "thetaSamples": theta_samples, "top": top}, seed=seed
    )
    x, y = Generator(Kind.RAISE_I1, 2), Generator(Kind.LOWER_I1, 2)
    rejected = 0
    done = 0
    while done < samples:
        p = random_pattern(random_highest_weight(rng, 4, top), rng)
        labels = worked_labels(p)
        try:
            value = worked_coefficient(labels)
        except VanishingDenominator:
            rejected += 1
            continue
        done += 1
        rep.checks += 1
        lin = worked_linear_form(labels)
        if value != lin:
            rep.fail("four-term = linear form", list(labels), str(lin), str(value))
        for q in [p] + [_resample_below_row5(p, rng) for _ in range(theta_samples)]:
            rep.checks += 1
            got = anticommutator_diagonal(x, y, q)
            if got != value:
                rep.fail("action diagonal = four-term", q.to_json(), str(value), str(got))
    rep.params["rejected"] = rejected
    return rep


SUITES = {
    "relations": check_defining_relations,
    "anticommutators": check_anticommutator_identities,
    "character": check_character,
    "unitarity": check_unitarity,
    "hwv": check_highest_weight_vector,
}


def run_suite(name: str, hw: HighestWeight, budget: Budget | None = None, threads: int = 1) -> VerificationReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if name in ("relations", "anticommutators"):
        return SUITES[name](hw, budget, threads)
    if name == "hwv":
        return check_highest_weight_vector(hw)
    return SUITES[name](hw, budget)


def merge(name: str, reports: Iterable[VerificationReport]) -> VerificationReport:
    out = VerificationReport(name)
    count = Counter()
    for r in reports:
        out.checks += r.checks
        out.failures += [dict(f, suite=r.suite, params=r.params) for f in r.failures]
        count[r.suite] += 1
    out.params = {"reports": dict(sorted(count.items()))}
    return out

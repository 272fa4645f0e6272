import json
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from oddgz import verify as vf
from oddgz.action import Generator, Kind, covariant_module
from oddgz.schur import HighestWeight

H = HighestWeight


def test_report_schema():
    rep = vf.VerificationReport("x", {"a": 1})
    assert rep.ok and rep.to_json() == {"suite": "x", "params": {"a": 1}, "checks": 0, "failures": [], "seed": None}
    rep.fail("r2", [1, 0], "1", "2")
    rep.fail("r1", [0, 0], "1", "2")
    assert not rep.ok
    assert [f["relation"] for f in rep.to_json()["failures"]] == ["r1", "r2"]
    assert rep.summary() == "x: FAIL (2 failures), 0 checks"
    json.dumps(rep.to_json())


@pytest.mark.parametrize("hw", [H((0,), (0,)), H((1,), (1,)), H((1, 1), (0, 0))])
@pytest.mark.parametrize("suite", ["relations", "anticommutators", "character", "unitarity", "hwv"])
def test_suite_examples(hw, suite):
    rep = vf.run_suite(suite, hw)
    assert rep.ok and rep.checks > 0, rep.to_json()


def test_relations_counts():
    assert vf.check_defining_relations(H((1,), (1,))).checks == 16
    assert vf.check_defining_relations(H((1, 1), (0, 0))).checks == 256
    assert vf.check_anticommutator_identities(H((1, 1), (0, 0))).checks == 3


def test_hwv_example():
    rep = vf.check_highest_weight_vector(H((2, 0), (0, 0)))
    assert rep.ok
    assert len(vf.even_chevalley_raisings(2)) == 2


def test_unitarity_example():
    M = covariant_module(H((1,), (1,)))
    assert M.weyl_element(1, -1) == M.weyl_element(-1, 1).transpose()
    assert vf.check_unitarity(H((1, 1), (0, 0))).ok


def test_threads_give_same_report():
    hw = H((2, 1), (1, 0))
    a = vf.check_defining_relations(hw, threads=1).to_json()
    b = vf.check_defining_relations(hw, threads=4).to_json()
    assert a == b and a["failures"] == []


def test_budget(monkeypatch):
    hw = H((1, 1), (0, 0))
    with pytest.raises(vf.BudgetExceeded):
        vf.check_defining_relations(hw, vf.Budget(max_dim=7))
    assert vf.Budget(max_dim=8).check(hw) == 8
    with pytest.raises(vf.BudgetExceeded):
        vf.Budget(max_n=1).check(hw)
    monkeypatch.setenv(vf.BUDGET_ENV, "4")
    assert vf.Budget.from_env().max_dim == 4
    assert vf.Budget.from_env(9).max_dim == 9
    with pytest.raises(vf.BudgetExceeded):
        vf.check_character(hw)
    monkeypatch.setenv(vf.BUDGET_ENV, "lots")
    with pytest.raises(ValueError):
        vf.Budget.from_env()
    monkeypatch.delenv(vf.BUDGET_ENV)
    assert vf.Budget.from_env().max_dim == vf.DEFAULT_MAX_DIM


def test_hwv_ignores_budget(monkeypatch):
    monkeypatch.setenv(vf.BUDGET_ENV, "1")
    assert vf.check_highest_weight_vector(H((3, 2, 2), (2, 1, 0))).ok


# --- interpolation identities -------------------------------------------------


def test_lagrange_examples():
    assert vf.check_lagrange_identity([0], [5])
    assert vf.check_lagrange_identity([0, 1], [2, 3])
    assert vf._lagrange_terms([Fraction(0), Fraction(1)], [Fraction(2), Fraction(3)]) == [-6, 2]


def test_interpolation_examples():
    assert vf.check_full_interpolation([0, 1], [2, 3], 5)
    for x in (-3, 0, Fraction(7, 2)):
        assert vf.check_full_interpolation([4], [9], x)


@pytest.mark.parametrize("fn", [vf.check_lagrange_identity, lambda xs, a: vf.check_full_interpolation(xs, a, 1)])
def test_identity_errors(fn):
    with pytest.raises(ValueError):
        fn([1, 1], [0, 0])
    with pytest.raises(ValueError):
        fn([1, 2], [0])
    with pytest.raises(ValueError):
        fn([], [])


@given(st.lists(st.fractions(max_denominator=9), min_size=1, max_size=6, unique=True), st.data())
def test_lagrange_property(xs, data):
    as_ = data.draw(st.lists(st.fractions(max_denominator=9), min_size=len(xs), max_size=len(xs)))
    x = data.draw(st.fractions(max_denominator=9))
    assert vf.check_lagrange_identity(xs, as_)
    assert vf.check_full_interpolation(xs, as_, x)


def test_lagrange_detects_wrong_rhs():
    # perturbing one summand must break the identity
    terms = vf._lagrange_terms([Fraction(0), Fraction(1)], [Fraction(2), Fraction(3)])
    assert sum(terms) + 1 != Fraction(0 + 1 - 2 - 3)


@pytest.mark.parametrize("kind", ["lagrange", "interpolation"])
def test_identity_suite(kind):
    rep = vf.check_identity_suite(kind, samples=100, seed=7)
    assert rep.ok and rep.checks == 100 and rep.seed == 7
    assert rep.to_json() == vf.check_identity_suite(kind, samples=100, seed=7).to_json()
    with pytest.raises(ValueError):
        vf.check_identity_suite("other")


# --- the worked coefficient ---------------------------------------------------


SYMS = sympy.symbols("b35 b25 b15 m15 m25 b23 b13 m13")


def symbolic_worked():
    b35, b25, b15, m15, m25, b23, b13, m13 = SYMS
    return (
        (b35 - b13 + 1) * (b25 - b13) * (b13 - b15 + 1) * (b13 + m13)
        / ((b13 + m15 + 1) * (b13 + m25) * (b23 - b13 + 1))
        + (b35 + m15 + 2) * (b25 + m15 + 1) * (b15 + m15) * (m15 - m13 + 1)
        / ((b23 + m15 + 2) * (b13 + m15 + 1) * (m15 - m25 + 1))
        + (b35 + m25 + 1) * (b25 + m25) * (b15 + m25 - 1) * (m13 - m25)
        / ((b23 + m25 + 1) * (b13 + m25) * (m15 - m25 + 1))
        + (b35 - b23) * (b23 - b25 + 1) * (b23 - b15 + 2) * (b23 + m13 + 1)
        / ((b23 + m15 + 2) * (b23 + m25 + 1) * (b23 - b13 + 1))
    )


def test_worked_expression_symbolic_oracle():
    """The four-term sum simplifies to the linear form as a rational function."""
    expr = symbolic_worked()
    b35, b25, b15, m15, m25, b23, b13, m13 = SYMS
    num, _ = sympy.fraction(sympy.together(expr - (b35 + b25 + b15 + m15 + m25 - b23 - b13 - m13)))
    assert sympy.expand(num) == 0
    rng = random.Random(3)
    for _ in range(30):
        labels = [rng.randint(-9, 9) for _ in range(8)]
        try:
            got = vf.worked_coefficient(labels)
        except vf.VanishingDenominator:
            continue
        ref = expr.subs(dict(zip(SYMS, labels)))
        assert got == Fraction(int(ref.p), int(ref.q))


def test_worked_examples():
    rng = random.Random(0)
    p = vf.random_pattern(H((5, 3, 2, 2), (2, 1, 0, 0)), rng)
    labels = vf.worked_labels(p)
    assert vf.check_worked_coefficient(labels)
    # b13 + m15 + 1 = 0 kills two denominators
    with pytest.raises(vf.VanishingDenominator):
        vf.check_worked_coefficient((0, 0, 0, -1, 0, 0, 0, 0))
    with pytest.raises(ValueError):
        vf.worked_coefficient((1, 2, 3))


def test_worked_matches_action_diagonal():
    rng = random.Random(5)
    x, y = Generator(Kind.RAISE_I1, 2), Generator(Kind.LOWER_I1, 2)
    seen = 0
    while seen < 10:
        p = vf.random_pattern(vf.random_highest_weight(rng, 4), rng)
        try:
            value = vf.worked_coefficient(vf.worked_labels(p))
        except vf.VanishingDenominator:
            continue
        seen += 1
        assert vf.anticommutator_diagonal(x, y, p).rational_part() == value


def test_worked_suite_seeded():
    a = vf.check_worked_coefficient_suite(samples=20, seed=11)
    b = vf.check_worked_coefficient_suite(samples=20, seed=11)
    assert a.ok and a.seed == 11 and a.to_json() == b.to_json()
    assert a.checks == 20 * (1 + 1 + a.params["thetaSamples"])


def test_merge():
    reps = [vf.check_character(H((1,), (1,))), vf.check_unitarity(H((1,), (1,)))]
    m = vf.merge("all", reps)
    assert m.ok and m.checks == sum(r.checks for r in reps)
    assert m.params == {"reports": {"character": 1, "unitarity": 1}}

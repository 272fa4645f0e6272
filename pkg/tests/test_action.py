from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oddgz.action import (
    FormulaIntegrityError,
    Generator,
    Kind,
    SparseOperator,
    _coefficient,
    apply,
    apply_diagonal,
    apply_lowering,
    apply_raising,
    chain_order,
    covariant_module,
    generator_matrix,
    generators,
    l_value,
    lowering_generators,
    raising_generators,
    super_bracket,
    weyl_element,
    weyl_path,
)
from oddgz.patterns import GZPattern, enumerate_patterns, highest_weight_pattern, is_valid, weight
from oddgz.scalars import RadicalSum, SignedRadical
from oddgz.schur import HighestWeight, hook_partitions, weight_from_partition

H = HighestWeight
HW11 = H((1,), (1,))
ROOT2 = SignedRadical(Fraction(1), 2)


def p11(bottom):
    return GZPattern(1, ((bottom,), (1, 1)))


def small_modules(n, size):
    return [weight_from_partition(lam, n, n) for lam in hook_partitions(size, n, n)]


def test_l_value_examples():
    p = GZPattern(1, ((0,), (1, 1)))
    assert l_value(p, -1, 2) == 2
    assert l_value(p, 1, 2) == 0
    z = enumerate_patterns(H((0, 0, 0), (0, 0, 0)))[0]
    assert l_value(z, -3, 6) == 3
    with pytest.raises(IndexError):
        l_value(p, -1, 3)


def test_generator_sets():
    assert len(generators(2)) == 2 * 2 + 2 * 2 + 2
    assert [g.indices for g in raising_generators(2)] == [(-1, 1), (-2, 1), (-2, 2)]
    assert [g.indices for g in lowering_generators(2)] == [(1, -1), (1, -2), (2, -2)]
    assert Generator.from_indices(-2, 1) == Generator(Kind.RAISE_I1, 1)
    assert Generator.from_indices(1, -2) == Generator(Kind.LOWER_I1, 1)
    with pytest.raises(ValueError):
        Generator.from_indices(-1, 2)
    assert Generator(Kind.RAISE_II, 1).parity == 1
    assert not Generator(Kind.RAISE_I1, 2).fits(2)


def test_diagonal_examples():
    hwp = highest_weight_pattern(HW11)
    assert apply_diagonal(Generator(Kind.DIAG_POS, 1), hwp) == 1
    assert apply_diagonal(Generator(Kind.DIAG_NEG, 1), p11(0)) == 0
    z = enumerate_patterns(H((0, 0), (0, 0)))[0]
    assert all(apply_diagonal(Generator(k, i), z) == 0 for k in (Kind.DIAG_NEG, Kind.DIAG_POS) for i in (1, 2))


def test_raising_lowering_examples():
    up, down = Generator(Kind.RAISE_II, 1), Generator(Kind.LOWER_II, 1)
    assert apply_raising(up, p11(0)) == [(p11(1), ROOT2)]
    assert apply_raising(up, p11(1)) == []
    assert apply_lowering(down, p11(1)) == [(p11(0), ROOT2)]
    assert apply_lowering(down, p11(0)) == []
    z = enumerate_patterns(H((0,), (0,)))[0]
    assert apply_lowering(down, z) == [] and apply_raising(up, z) == []
    with pytest.raises(ValueError):
        apply_raising(down, p11(0))


@pytest.mark.parametrize("n,size", [(1, 6), (2, 6), (3, 4)])
def test_raisings_kill_highest_weight_pattern(n, size):
    for hw in small_modules(n, size):
        v = highest_weight_pattern(hw)
        assert all(apply_raising(g, v) == [] for g in raising_generators(n))


@given(st.integers(0, 12), st.integers(1, 12))
def test_gl11_coefficient_closed_form(a, b):
    # 2-dim typical module: the odd pair squares to a + b
    if a < 1:
        return
    hw = H((a,), (b,))
    lo, hi = enumerate_patterns(hw)
    [(q, c)] = apply_raising(Generator(Kind.RAISE_II, 1), lo)
    assert q == hi and c.square() == a + b and c.coeff > 0


def test_generator_matrix_examples():
    R = generator_matrix(Generator(Kind.RAISE_II, 1), HW11)
    assert R.dim == 2 and R.entries == {(1, 0): ROOT2.to_sum()}
    D = generator_matrix(Generator(Kind.DIAG_POS, 1), HW11)
    assert D.entries == {(0, 0): RadicalSum({1: 2}), (1, 1): RadicalSum({1: 1})}
    assert D.parity == 0 and R.parity == 1
    for g in generators(1):
        m = generator_matrix(g, H((0,), (0,)))
        assert m.dim == 1 and m.is_zero()


def test_super_bracket_examples():
    R = generator_matrix(Generator(Kind.RAISE_II, 1), HW11)
    L = generator_matrix(Generator(Kind.LOWER_II, 1), HW11)
    two = RadicalSum({1: 2})
    assert super_bracket(R, L).entries == {(0, 0): two, (1, 1): two}
    assert super_bracket(R, R) == (R @ R).scale(2)
    assert super_bracket(R, SparseOperator.zero(2)).is_zero()
    with pytest.raises(ValueError):
        super_bracket(R, SparseOperator.zero(3))


def test_weyl_element_examples():
    hw = H((1, 1), (0, 0))
    M = covariant_module(hw)
    assert M.weyl_element(-1, 1) == M.generator_matrix(Generator(Kind.RAISE_II, 1))
    expected = super_bracket(M.weyl_element(1, -2), M.weyl_element(-2, 2))
    assert M.weyl_element(1, 2) == expected and not expected.is_zero()
    for a in M.indices():
        assert M.weyl_element(a, a) == M.weight_matrix(a)
    with pytest.raises(IndexError):
        M.weyl_element(3, 1)
    assert chain_order(2) == [-1, 1, -2, 2]
    assert weyl_path(2, -1, 2) == [2, -2, 1, -1]


def test_json_round_trip():
    op = weyl_element(1, 2, H((2, 1), (1, 0)))
    obj = op.to_json()
    assert obj["parity"] == "even"
    keys = [(e["row"], e["col"]) for e in obj["entries"]]
    assert keys == sorted(keys)
    assert SparseOperator.from_json(obj) == op


@pytest.mark.parametrize("n,size", [(1, 5), (2, 5), (3, 3)])
def test_transpose_duality(n, size):
    for hw in small_modules(n, size):
        for up, down in zip(raising_generators(n), lowering_generators(n)):
            assert generator_matrix(down, hw) == generator_matrix(up, hw).transpose()


@pytest.mark.parametrize("n,size", [(1, 5), (2, 5), (3, 3)])
def test_closure_and_weight_covariance(n, size):
    for hw in small_modules(n, size):
        for p in enumerate_patterns(hw):
            mu = weight(p)
            for g in generators(n):
                a, b = g.indices
                for q, c in apply(g, p):
                    assert is_valid(q) and not c.is_zero()
                    nu = weight(q)
                    shift = {k: (k == a) - (k == b) for k in mu}
                    assert all(nu[k] == mu[k] + shift[k] for k in mu)


def test_atypical_zero_over_zero_regression():
    # this term pairs a numerator zero with a denominator zero on a valid target
    hw = H((1, 1), (0, 0))
    M = covariant_module(hw)
    E = M.weyl_element(-2, 2)
    assert not E.is_zero()
    idm = M.weight_matrix(-2) + M.weight_matrix(2)
    assert super_bracket(E, M.weyl_element(2, -2)) == idm


def test_coefficient_integrity():
    assert _coefficient(0, 1, [0, 2], [0, 1], "t") == ROOT2
    assert _coefficient(1, 1, [0, 0], [0], "t").is_zero()
    with pytest.raises(FormulaIntegrityError):
        _coefficient(0, 1, [3], [0], "t")
    with pytest.raises(FormulaIntegrityError):
        _coefficient(0, 1, [0, 1], [0, 0], "t")
    with pytest.raises(FormulaIntegrityError):
        _coefficient(0, -1, [2], [1], "t")
    assert _coefficient(1, -1, [-2], [1], "t") == -ROOT2


# --- dense oracle -------------------------------------------------------------


def dense(op: SparseOperator) -> sympy.Matrix:
    m = sympy.zeros(op.dim, op.dim)
    for (r, c), v in op.entries.items():
        m[r, c] = sum(sympy.Rational(x.numerator, x.denominator) * sympy.sqrt(d) for d, x in v.items())
    return m


@pytest.mark.parametrize("hw", [H((1, 1), (0, 0)), H((2, 0), (0, 0)), H((1, 1), (1, 0))])
def test_defining_relations_dense_oracle(hw):
    """Dense symbolic check of the full bracket table."""
    M = covariant_module(hw)
    idx = M.indices()
    E = {(a, b): dense(M.weyl_element(a, b)) for a in idx for b in idx}
    odd = {(a, b): a * b < 0 for a in idx for b in idx}
    Z = sympy.zeros(M.dim, M.dim)
    for (a, b), A in E.items():
        for (c, d), B in E.items():
            s = -1 if odd[(a, b)] and odd[(c, d)] else 1
            lhs = A * B - s * B * A
            rhs = (E[(a, d)] if b == c else Z) - s * (E[(c, b)] if a == d else Z)
            assert sympy.simplify(lhs - rhs) == Z, ((a, b), (c, d))


@settings(max_examples=25)
@given(st.sampled_from(small_modules(2, 5)), st.data())
def test_anticommutators(hw, data):
    M = covariant_module(hw)
    i = data.draw(st.integers(1, 2))
    A, B = M.weyl_element(-i, i), M.weyl_element(i, -i)
    assert super_bracket(A, B) == M.weyl_element(-i, -i) + M.weyl_element(i, i)
    A, B = M.weyl_element(-2, 1), M.weyl_element(1, -2)
    assert super_bracket(A, B) == M.weyl_element(-2, -2) + M.weyl_element(1, 1)

import pytest
import sympy

from planeaut.catalan import (
    IntSeries, catalan_csv, catalan_number, catalan_series, count_tree_monomials, d_series,
    d_value, d_value_from, sqrt_one_minus_4t, trees_with_leaves,
)
from planeaut.errors import BudgetExceeded, InternalInvariant


def test_catalan_examples():
    assert [catalan_number(n) for n in range(1, 6)] == [1, 1, 2, 5, 14]
    assert catalan_number(12) == 58786
    with pytest.raises(ValueError):
        catalan_number(0)


def test_trees():
    assert count_tree_monomials(1) == 1
    assert count_tree_monomials(3) == 2
    assert count_tree_monomials(8) == 429
    assert trees_with_leaves(3) == {(((), ()), ()), ((), ((), ()))}
    with pytest.raises(BudgetExceeded):
        trees_with_leaves(17)


@pytest.mark.parametrize("n", range(1, 13))
def test_oracle_equivalence(n):
    assert count_tree_monomials(n) == catalan_number(n)


def test_monotone():
    assert catalan_number(1) == catalan_number(2) == 1
    assert all(catalan_number(n) <= catalan_number(n + 1) for n in range(1, 64))


def test_partial_sum_superadditive():
    s = [0]
    for n in range(1, 65):
        s.append(s[-1] + catalan_number(n))
    for a in range(2, 33):
        for b in range(2, 33):
            assert s[a] + s[b] <= s[a + b]


def test_d_value():
    assert d_value(1, 1) == 7
    assert d_value(4, 1) == 15
    assert d_value(2, 0) == 6
    with pytest.raises(ValueError):
        d_value(1, 2)


def test_series_examples():
    c = catalan_series(5)
    assert c.integers() == [0, 1, 1, 2, 5, 14]
    assert d_series(4, 1).integers()[1:] == [7, 8, 10, 15]
    assert d_series(4, 0).integers()[1:] == [5, 6, 8, 13]


@pytest.mark.parametrize("T", [1, 5, 64])
def test_series_identities(T):
    c = catalan_series(T)
    t = IntSeries.t(T)
    assert c * c - c + t == IntSeries.const(T, 0)
    one_minus = 1 - 2 * c
    assert one_minus * one_minus == 1 - 4 * t
    assert sqrt_one_minus_4t(T) * sqrt_one_minus_4t(T) == 1 - 4 * t
    for eps in (0, 1):
        d = d_series(T, eps)
        assert d == (c + (4 + 2 * eps) * t).partial_sums()
        # multiplying back by (1 - t) recovers the numerator
        assert d * (1 - t) == c + (4 + 2 * eps) * t


def test_series_matches_formula():
    for eps in (0, 1):
        d = d_series(64, eps).integers()
        assert d[0] == 0
        assert d[1:] == [d_value(n, eps) for n in range(1, 65)]
    assert catalan_series(64).integers()[1:] == [catalan_number(n) for n in range(1, 65)]


def test_integrality_guard():
    with pytest.raises(InternalInvariant):
        (IntSeries.t(3) / 2).integers()


def test_polynomial_analogy():
    n, eps = sympy.symbols("n epsilon", integer=True, positive=True)
    i = sympy.symbols("i", integer=True, positive=True)
    general = sympy.summation(1, (i, 1, n)) + 4 + 2 * eps
    assert sympy.simplify(general.subs(eps, 1) - (n + 6)) == 0
    for m in range(1, 30):
        assert d_value_from([1] * m, m, 1) == m + 6


def test_catalan_csv():
    lines = catalan_csv(4).splitlines()
    assert lines == ["n,c_n,partial_sum,d_n_eps0,d_n_eps1", "1,1,1,5,7", "2,1,2,6,8",
                     "3,2,4,8,10", "4,5,9,13,15"]

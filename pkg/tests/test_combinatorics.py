from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from artifact.combinatorics import (RationalMatrix, appendixB_lhs, appendixB_rhs, appendixC_A, appendixC_B,
                                    appendixC_closed_form, appendixC_factors, appendixC_Linv_B, binomial, det,
                                    elementary_symmetric, falling_factorial, gauss_solve, lookup, poly_eval,
                                    poly_from_roots)
from artifact.errors import DomainError, MissingValue, SingularMatrix


def test_falling_factorial_examples():
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(7, 0) == 1
    assert falling_factorial(-2, 3) == -24


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(3, 5) == 0
    assert binomial(-3, 2) == 6
    assert binomial(4, -1) == 0


@given(st.integers(-10, 10), st.integers(1, 10))
def test_pascal_rule(n, k):
    assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_sum_identity_examples():
    assert appendixB_lhs(3, 1, 1) == -6
    assert appendixB_rhs(3, 1, 1) == -6
    assert appendixB_lhs(2, 2, 3) == 0
    assert appendixB_rhs(2, 2, 3) == 0
    # alpha!/(beta+n)! (beta-alpha+n-1)_n at (1, 3, 2): 1/120 * 3*2
    assert appendixB_lhs(1, 3, 2) == F(1, 20) == appendixB_rhs(1, 3, 2)


def test_sum_identity_full_grid():
    for a in range(1, 13):
        for b in range(1, 13):
            for n in range(1, 13):
                assert appendixB_lhs(a, b, n) == appendixB_rhs(a, b, n)


def test_gauss_solve_examples():
    A = RationalMatrix.from_rows([[1, 1], [1, 2]])
    assert gauss_solve(A, RationalMatrix.column([3, 5])) == RationalMatrix.column([1, 2])
    b = RationalMatrix.column([F(1, 3), -2, 7])
    assert gauss_solve(RationalMatrix.identity(3), b) == b
    with pytest.raises(SingularMatrix):
        gauss_solve(RationalMatrix.from_rows([[1, 2], [2, 4]]), RationalMatrix.column([1, 1]))


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n),
    st.lists(rationals, min_size=n, max_size=n))))
def test_gauss_solve_round_trip(data):
    rows, x = data
    A = RationalMatrix.from_rows(rows)
    if det(A.to_rows()) == 0:
        return
    xs = RationalMatrix.column(x)
    assert gauss_solve(A, A @ xs) == xs


def test_matrix_inverse_examples():
    assert appendixC_closed_form(1, 5, 3) == RationalMatrix.column([F(3, 5)])
    assert appendixC_closed_form(3, 8, 5) == gauss_solve(appendixC_A(3, 8), appendixC_B(3, 5))
    assert appendixC_closed_form(2, 4, 2) == gauss_solve(appendixC_A(2, 4), appendixC_B(2, 2))
    L, U, Linv = appendixC_factors(1, 7)
    assert L == RationalMatrix.from_rows([[7]]) and U == RationalMatrix.identity(1)
    assert Linv == RationalMatrix.from_rows([[F(1, 7)]])
    L, U, Linv = appendixC_factors(4, 9)
    assert appendixC_A(4, 9) @ U == L
    assert L @ Linv == RationalMatrix.identity(4)


def test_matrix_inverse_grid():
    for N in range(1, 6):
        for beta in range(N, N + 4):
            for alpha in range(beta + 1, beta + 7):
                A, B = appendixC_A(N, alpha), appendixC_B(N, beta)
                assert appendixC_closed_form(N, alpha, beta) == gauss_solve(A, B)
                L, U, Linv = appendixC_factors(N, alpha)
                assert Linv @ B == appendixC_Linv_B(N, alpha, beta)


def test_matrix_inverse_domain():
    with pytest.raises(DomainError):
        appendixC_closed_form(2, 3, 3)
    with pytest.raises(DomainError):
        appendixC_closed_form(3, 6, 2)
    with pytest.raises(DomainError):
        appendixC_factors(3, 3)


def test_polynomial_helpers():
    p = poly_from_roots([F(1), F(-2)])
    assert p == [-2, 1, 1]
    assert poly_eval(p, 3) == 10
    assert elementary_symmetric([2, 3, 5]) == [1, 10, 31, 30]


def test_lookup_missing():
    with pytest.raises(MissingValue):
        lookup({0: F(1)}, 1)
    assert lookup(lambda k: k * k, 3) == 9

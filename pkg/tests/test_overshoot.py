import cmath
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from artifact.combinatorics import binomial, falling_factorial
from artifact.errors import DomainError, MissingValue
from artifact.oracle import AbsorbingDP, eval_series, first_passage_series
from artifact.overshoot import (H_minus, H_minus_vroots, H_plus, H_plus_double, H_plus_newton, backward_diff,
                                dist_S_b_plus, expect_f_S_b_plus, expect_from_x, factorial_moment_direct,
                                factorial_moment_shifted, factorial_moments_S_b_plus, forward_diff,
                                genfun_S_b_plus, genfun_S_b_plus_integral, markov_check, moments_S_b_plus,
                                newton_polys)
from artifact.spectral import roots
from artifact.walk import WalkParams, walk_pmf_closed

Z = F(1, 20)
GRID = [(1, F(1, 4)), (2, F(1, 8)), (3, F(1, 32))]


def _table(N, b):
    """Overshoot masses as listed in the worked examples for N = 1..4."""
    b = F(b)
    return {
        1: [F(1)],
        2: [b + 1, -b],
        3: [(b + 1) * (b + 2) / 2, -b * (b + 2), b * (b + 1) / 2],
        4: [(b + 1) * (b + 2) * (b + 3) / 6, -b * (b + 2) * (b + 3) / 2,
            b * (b + 1) * (b + 3) / 2, -b * (b + 1) * (b + 2) / 6],
    }[N]


def test_law_examples():
    assert dist_S_b_plus(2, 3).measure().as_dict() == {3: 4, 4: -3}
    assert dist_S_b_plus(1, 7).measure().as_dict() == {7: 1}
    assert dist_S_b_plus(3, 1).measure().as_dict() == {1: 3, 2: -3, 3: 1}
    with pytest.raises(DomainError):
        dist_S_b_plus(2, 0)


def test_law_matches_tables():
    for N in range(1, 5):
        for b in range(1, 6):
            assert list(dist_S_b_plus(N, b).masses) == _table(N, b)


def test_law_mass_and_binomial_system():
    for N in range(1, 7):
        for b in range(1, 11):
            law = dist_S_b_plus(N, b)
            assert sum(law.masses) == 1
            for k in range(N):
                lhs = sum(binomial(ell - b, k) * law.mass(ell) for ell in range(k + b, b + N))
                assert lhs == (-1) ** k * binomial(b + k - 1, b - 1)


def test_H_plus_against_oracle():
    for N, c in GRID:
        p = WalkParams(N, c)
        for b in (1, 2, 3):
            dp = AbsorbingDP(p, upper=b, horizon=40)
            for ell in range(b, b + N):
                value, tail = eval_series(first_passage_series(dp, ell), Z)
                h = H_plus(p, b, ell, float(Z))
                assert abs(h.imag) < 1e-10
                assert abs(h - float(value)) <= float(tail) + 1e-9
                assert abs(H_plus(p, b, ell, float(Z), method="newton") - h) < 1e-12


def test_H_plus_two_root_example():
    p = WalkParams(2, F(1, 8))
    u1, u2 = roots(p, 0.05).u
    b = 1
    assert abs(H_plus(p, b, b, 0.05) - (u1 ** (b + 1) - u2 ** (b + 1)) / (u1 - u2)) < 1e-14


def test_H_plus_domain():
    p = WalkParams(2, F(1, 8))
    with pytest.raises(DomainError):
        H_plus(p, 1, 3, 0.1)
    with pytest.raises(DomainError):
        H_plus(p, 1, 1, 1.2)
    with pytest.raises(DomainError):
        H_plus(p, 1, 1, 0.1, method="other")


def test_H_minus():
    z = float(Z)
    for N, c in GRID:
        p = WalkParams(N, c)
        for a in (-1, -2, -3):
            for ell in range(a - N + 1, a + 1):
                assert abs(H_minus(p, a, ell, z) - H_plus(p, -a, -ell, z)) < 1e-12
                assert abs(H_minus(p, a, ell, z) - H_minus_vroots(p, a, ell, z)) < 1e-12
    for (N, c), a in (((2, F(1, 8)), -1), ((1, F(1, 4)), -2)):
        p = WalkParams(N, c)
        dp = AbsorbingDP(p, lower=a, horizon=40)
        for ell in range(a - N + 1, a + 1):
            value, tail = eval_series(first_passage_series(dp, ell), Z)
            assert abs(H_minus(p, a, ell, z) - float(value)) <= float(tail) + 1e-9


def test_abel_limit():
    # The deviation from the z = 1 law decays like (1-z)^(1/2N), so the
    # probe is taken with 1 - z = 10^(-12N) (10^(-14N) for N = 4), passed
    # separately so that it is not lost to rounding.
    for N, c in GRID + [(4, F(1, 128))]:
        p = WalkParams(N, c)
        omz = 10.0 ** (-(14 if N == 4 else 12) * N)
        for b in (1, 2, 3):
            law = dist_S_b_plus(N, b)
            vals = H_plus_newton(p, b, 1.0, omz)
            for ell, h in vals.items():
                assert abs(h - float(law.mass(ell))) < 1e-4


def test_H_plus_double():
    for N, c in GRID:
        p = WalkParams(N, c)
        rs = roots(p, 0.3)
        for b in (1, 2):
            for zeta in (cmath.exp(0.7j), cmath.exp(2.1j), 0.4 + 0.2j):
                direct = sum(H_plus(p, b, ell, 0.3) * zeta ** ell for ell in range(b, b + N))
                assert abs(H_plus_double(p, b, 0.3, zeta) - direct) < 1e-10
            # at an outer root the interpolation picks out one term
            for k in range(N):
                assert abs(H_plus_double(p, b, 0.3, rs.v[k]) - (rs.u[k] * rs.v[k]) ** b) < 1e-9
    # N = 2 closed expression
    p = WalkParams(2, F(1, 8))
    (u1, u2), (v1, v2) = roots(p, 0.2).u, roots(p, 0.2).v
    zeta, b = 0.3 + 0.5j, 2
    expected = ((zeta - v2) / (v1 - v2) * (u1 * zeta) ** b + (zeta - v1) / (v2 - v1) * (u2 * zeta) ** b)
    assert abs(H_plus_double(p, b, 0.2, zeta) - expected) < 1e-12


def test_factorial_moment_examples():
    assert factorial_moment_shifted(2, 2, 1, 1) == -1
    assert factorial_moment_direct(2, 2, 1, 1) == -1
    for N in range(1, 5):
        for b in range(1, 5):
            assert factorial_moment_shifted(N, b, b, N) == 0
            for n in range(1, N):
                assert factorial_moment_shifted(N, b, 0, n) == 0


@given(st.integers(1, 4), st.integers(1, 5), st.integers(-3, 8), st.integers(0, 7))
def test_factorial_moment_closed_vs_direct(N, b, beta, n):
    val = factorial_moment_shifted(N, b, beta, n)
    assert val == factorial_moment_direct(N, b, beta, n)
    if n <= N - 1:
        assert val == falling_factorial(-beta, n)
    if beta == b and n >= N:
        assert val == 0


def test_power_moments():
    assert moments_S_b_plus(2, 2, 2) == -6
    assert moments_S_b_plus(3, 1, 2) == 0
    assert factorial_moments_S_b_plus(2, 1, 2) == -2
    law = dist_S_b_plus(2, 1)
    assert law.expect(lambda ell: falling_factorial(ell, 2)) == -2
    for N in range(1, 5):
        for b in range(1, 6):
            for n in range(1, N):
                assert moments_S_b_plus(N, b, n) == 0
            assert moments_S_b_plus(N, b, N) == -falling_factorial(-b, N)
            law = dist_S_b_plus(N, b)
            for n in range(1, b + N + 2):
                assert law.expect(lambda ell: falling_factorial(ell, n)) == factorial_moments_S_b_plus(N, b, n)
            for n in range(N):
                assert law.expect(lambda ell: binomial(ell - b, n)) == (-1) ** n * binomial(n + b - 1, b - 1)


def test_differences():
    f = {i: F(i * i * i) for i in range(-5, 6)}
    assert forward_diff(f, 0, 3) == 6
    assert backward_diff(f, 0, 3) == 6
    with pytest.raises(MissingValue):
        forward_diff(f, 4, 3)


@given(st.integers(1, 4), st.integers(1, 5), st.lists(st.integers(-20, 20), min_size=4, max_size=4))
def test_expectation_by_differences(N, b, vals):
    f = {b + i: F(v) for i, v in enumerate(vals)}
    assert expect_f_S_b_plus(N, b, f) == dist_S_b_plus(N, b).expect(f)


def test_generating_function():
    assert genfun_S_b_plus(2, 1, 2) == 0
    assert dist_S_b_plus(2, 1).expect(lambda i: F(2) ** i) == 0
    for N in (1, 2, 3):
        for b in (1, 2, 4):
            for zeta in (F(2), F(1, 3), F(-3, 2)):
                direct = dist_S_b_plus(N, b).expect(lambda i: zeta ** i)
                assert genfun_S_b_plus(N, b, zeta) == direct == genfun_S_b_plus_integral(N, b, zeta)


def test_newton_polys():
    for N in range(1, 5):
        for b in (1, 3):
            P = newton_polys(N, b)
            for j in range(N):
                for k in range(N):
                    assert forward_diff(lambda x: P(j, x), b, k) == (1 if j == k else 0)
    f = {i: F(i * i - 3 * i + 1) for i in range(0, 10)}
    assert expect_from_x(3, 4, 4, f) == f[4]
    assert expect_from_x(2, 3, 1, f) == dist_S_b_plus(2, 2).expect(lambda ell: f[ell + 1])


@given(st.integers(1, 3), st.integers(1, 4), st.integers(-3, 0), st.lists(st.integers(-9, 9), min_size=3,
                                                                            max_size=3))
def test_expect_from_x_is_shifted_law(N, b, x, vals):
    f = {b + i: F(v) for i, v in enumerate(vals)}
    assert expect_from_x(N, b, x, f) == dist_S_b_plus(N, b - x).expect(lambda ell: f[ell + x])


def test_markov_identity():
    f = lambda i: F(i * i)
    p = WalkParams(2, F(1, 8))
    m = markov_check(p, 1, 0, 2, f)
    assert m.ok and m.lhs == m.rhs == -2
    # N = 2: rhs = (b-x+1) E_b f(S_n) + (x-b) E_{b+1} f(S_n)
    b, x, n = 3, 1, 2
    law = walk_pmf_closed(p, n)
    E = lambda s: law.expect(lambda k: f(s + k))
    m = markov_check(p, b, x, n, f)
    assert m.ok and m.rhs == (b - x + 1) * E(b) + (x - b) * E(b + 1)
    # N = 1: the overshoot is b itself
    q = WalkParams(1, F(1, 4))
    m = markov_check(q, 2, -1, 3, f)
    law = walk_pmf_closed(q, 3)
    assert m.ok and m.lhs == law.expect(lambda k: f(2 + k))
    with pytest.raises(DomainError):
        markov_check(p, 1, 1, 2, f)

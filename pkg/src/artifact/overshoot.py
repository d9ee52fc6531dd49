"""First passage above a single threshold b (and, by reflection, below a).

Closed forms for the joint generating function of the passage time and the
overshoot, the exact law and moments of the overshoot, finite-difference
calculus on the N overshoot cells and the Newton-polynomial form of the
strong Markov identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Tuple

from .combinatorics import (ValueTable, binomial, elementary_symmetric, falling_factorial, lookup, poly_eval,
                            poly_from_roots, sgn_pow)
from .errors import DomainError
from .spectral import roots
from .walk import SignedMeasure, WalkParams, walk_pmf_closed


def _esym_omit(values, k: int) -> list:
    return elementary_symmetric([x for i, x in enumerate(values) if i != k])


def _node_products(values) -> list:
    out = []
    for k, x in enumerate(values):
        p = 1
        for i, y in enumerate(values):
            if i != k:
                p *= x - y
        out.append(p)
    return out


def _check_b(b: int) -> None:
    if b < 1:
        raise DomainError(f"threshold b must be a positive integer, got {b}")


def _complete_homogeneous(values, degree: int) -> list:
    """h_degree(values[:m]) for m = 1..len(values)."""
    h = [1 + 0j] + [0j] * degree
    out = []
    for x in values:
        for k in range(1, degree + 1):
            h[k] = h[k] + x * h[k - 1]
        out.append(h[degree])
    return out


def H_plus_newton(params: WalkParams, b: int, z: float, one_minus_z: Optional[float] = None) -> Dict[int, complex]:
    """All H_plus(b, ell, z) at once, from the Newton form of the interpolant.

    The overshoot polynomial interpolates zeta^{-b} at the outer roots; its
    divided differences are (-1)^{m-1} u_1...u_m h_{b-1}(u_1..u_m), which
    carry no cancellation, so this stays accurate as z -> 1.
    """
    _check_b(b)
    N = params.N
    rs = roots(params, z, one_minus_z)
    hs = _complete_homogeneous(rs.u, b - 1)
    poly = [0j] * N
    basis = [1 + 0j]
    prod_u = 1 + 0j
    for m in range(N):
        prod_u *= rs.u[m]
        d = sgn_pow(m) * prod_u * hs[m]
        for i, c in enumerate(basis):
            poly[i] += d * c
        nxt = [0j] * (len(basis) + 1)
        for i, c in enumerate(basis):
            nxt[i + 1] += c
            nxt[i] -= rs.v[m] * c
        basis = nxt
    return {b + m: poly[m] for m in range(N)}


def H_plus(params: WalkParams, b: int, ell: int, z: float, one_minus_z: Optional[float] = None,
           method: str = "symmetric") -> complex:
    """E[z^sigma ; overshoot = ell] for the first passage at or above b.

    ``method="symmetric"`` evaluates the closed form in elementary symmetric
    functions of the inner roots; ``method="newton"`` uses the Newton form,
    which is better conditioned when z is very close to 1.
    """
    _check_b(b)
    N = params.N
    if not b <= ell <= b + N - 1:
        raise DomainError(f"ell must lie in [{b}, {b + N - 1}], got {ell}")
    if method == "newton":
        return H_plus_newton(params, b, z, one_minus_z)[ell]
    if method != "symmetric":
        raise DomainError(f"unknown method {method!r}")
    rs = roots(params, z, one_minus_z)
    u = rs.u
    p = _node_products(rs.du)
    m = ell - b
    total = sum(_esym_omit(u, k)[m] / p[k] * u[k] ** (b + N - 1) for k in range(N))
    return sgn_pow(m) * total


def H_minus(params: WalkParams, a: int, ell: int, z: float, one_minus_z: Optional[float] = None,
            method: str = "symmetric") -> complex:
    """First passage at or below a < 0, obtained by reflecting the walk."""
    if a > -1:
        raise DomainError(f"threshold a must be a negative integer, got {a}")
    return H_plus(params, -a, -ell, z, one_minus_z, method)


def H_minus_vroots(params: WalkParams, a: int, ell: int, z: float) -> complex:
    """Same quantity, solved directly as a Vandermonde system on the outer roots."""
    N = params.N
    if a > -1 or not a - N + 1 <= ell <= a:
        raise DomainError("need a < 0 and a-N+1 <= ell <= a")
    rs = roots(params, z)
    v = rs.v
    p = _node_products(rs.dv)
    m = a - ell
    e = N - 1 - m
    return sgn_pow(e) * sum(_esym_omit(v, k)[e] / p[k] * v[k] ** a for k in range(N))


def H_plus_double(params: WalkParams, b: int, z: float, zeta: complex,
                  one_minus_z: Optional[float] = None) -> complex:
    """sum_ell H_plus(b, ell, z) zeta^ell via Lagrange interpolation on the outer roots."""
    _check_b(b)
    rs = roots(params, z, one_minus_z)
    N = params.N
    out = 0j
    for k in range(N):
        lk = 1 + 0j
        for j in range(N):
            if j != k:
                lk *= (zeta - rs.v[j]) / (rs.dv[k] - rs.dv[j])
        out += lk * (rs.u[k] * zeta) ** b
    return out


@dataclass(frozen=True)
class OvershootLaw:
    b: int
    masses: Tuple[Fraction, ...]

    def mass(self, ell: int) -> Fraction:
        i = ell - self.b
        return self.masses[i] if 0 <= i < len(self.masses) else Fraction(0)

    def measure(self) -> SignedMeasure:
        return SignedMeasure.from_dict({self.b + i: m for i, m in enumerate(self.masses)})

    def expect(self, f: ValueTable) -> Fraction:
        return sum((m * lookup(f, self.b + i) for i, m in enumerate(self.masses)), Fraction(0))


def dist_S_b_plus(N: int, b: int) -> OvershootLaw:
    _check_b(b)
    if N < 1:
        raise DomainError("N must be positive")
    masses = tuple(
        sgn_pow(b + ell) * Fraction(b, ell) * binomial(N - 1, ell - b) * binomial(b + N - 1, b)
        for ell in range(b, b + N))
    return OvershootLaw(b, masses)


def factorial_moment_shifted(N: int, b: int, beta: int, n: int) -> Fraction:
    """Closed form of E[(S - beta)_n] for the overshoot S above b."""
    _check_b(b)
    if n < 0:
        raise DomainError("n must be non-negative")
    if beta <= b:
        lo, hi = max(0, n + beta - b), min(n, N - 1)
        s = sum((sgn_pow(k) * Fraction(factorial(k + b - 1), factorial(k + b - beta - n)) * binomial(n, k)
                 for k in range(lo, hi + 1)), Fraction(0))
        return Fraction(factorial(b - beta), factorial(b - 1)) * s
    s = sum((factorial(k + b - 1) * factorial(beta - b + n - k - 1) * binomial(n, k)
             for k in range(min(n, N - 1) + 1)), Fraction(0))
    return sgn_pow(n) * s / (factorial(b - 1) * factorial(beta - b - 1))


def factorial_moment_direct(N: int, b: int, beta: int, n: int) -> Fraction:
    return dist_S_b_plus(N, b).expect(lambda ell: falling_factorial(ell - beta, n))


def moments_S_b_plus(N: int, b: int, n: int) -> Fraction:
    """E[S^n] for the overshoot above b, by direct expectation."""
    if n < 1:
        raise DomainError("moment order must be at least 1")
    return dist_S_b_plus(N, b).expect(lambda ell: Fraction(ell) ** n)


def factorial_moments_S_b_plus(N: int, b: int, n: int) -> Fraction:
    """Closed form of E[(S)_n]: nonzero only for N <= n <= b+N-1."""
    _check_b(b)
    if N <= n <= b + N - 1:
        return sgn_pow(N - 1) * binomial(n - 1, N - 1) * falling_factorial(b + N - 1, n)
    return Fraction(0)


def forward_diff(f: ValueTable, i: int, j: int) -> Fraction:
    """(Delta^+)^j f(i) = sum_k (-1)^{j+k} C(j,k) f(i+k)."""
    return sum((sgn_pow(j + k) * binomial(j, k) * lookup(f, i + k) for k in range(j + 1)), Fraction(0))


def backward_diff(f: ValueTable, i: int, j: int) -> Fraction:
    """(Delta^-)^j f(i) = sum_k (-1)^k C(j,k) f(i-k)."""
    return sum((sgn_pow(k) * binomial(j, k) * lookup(f, i - k) for k in range(j + 1)), Fraction(0))


def expect_f_S_b_plus(N: int, b: int, f: ValueTable) -> Fraction:
    """E f(S) written with forward differences of f at b."""
    _check_b(b)
    return sum((sgn_pow(j) * binomial(j + b - 1, b - 1) * forward_diff(f, b, j) for j in range(N)), Fraction(0))


def genfun_S_b_plus(N: int, b: int, zeta: Fraction) -> Fraction:
    zeta = Fraction(zeta)
    return zeta ** b * sum((binomial(j + b - 1, b - 1) * (1 - zeta) ** j for j in range(N)), Fraction(0))


def genfun_S_b_plus_integral(N: int, b: int, zeta: Fraction) -> Fraction:
    """Same generating function through b C(b+N-1,b) zeta^b int_0^1 x^{b-1}(1 - zeta x)^{N-1} dx."""
    zeta = Fraction(zeta)
    integral = sum((binomial(N - 1, m) * (-zeta) ** m / (b + m) for m in range(N)), Fraction(0))
    return b * binomial(b + N - 1, b) * zeta ** b * integral


@dataclass(frozen=True)
class NewtonPolys:
    b: int
    coeffs: Tuple[Tuple[Fraction, ...], ...]

    def __call__(self, j: int, x) -> Fraction:
        return poly_eval(self.coeffs[j], Fraction(x))


def newton_polys(N: int, b: int) -> NewtonPolys:
    polys = []
    for j in range(N):
        p = poly_from_roots([Fraction(b + k) for k in range(j)])
        polys.append(tuple(c / factorial(j) for c in p))
    return NewtonPolys(b, tuple(polys))


def expect_from_x(N: int, b: int, x: int, f: ValueTable) -> Fraction:
    """E_x f(overshoot above b) = sum_j P_j(x) (Delta^+)^j f(b)."""
    P = newton_polys(N, b)
    return sum((P(j, x) * forward_diff(f, b, j) for j in range(N)), Fraction(0))


@dataclass(frozen=True)
class MarkovCheck:
    """Both sides of the strong Markov identity.

    ``lhs``/``rhs`` are the exact values at z = 1; ``gf_lhs`` is the oracle's
    truncated series at z, ``gf_rhs`` the closed-form generating function and
    ``gf_tail`` the certified truncation bound.
    """

    lhs: Fraction
    rhs: Fraction
    gf_lhs: Fraction
    gf_rhs: complex
    gf_tail: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs and abs(float(self.gf_lhs) - self.gf_rhs) <= float(self.gf_tail) + 1e-9


def _expect_n(params: WalkParams, n: int, f: ValueTable):
    law = walk_pmf_closed(params, n)
    return lambda ell: law.expect(lambda k: lookup(f, ell + k))


def markov_check(params: WalkParams, b: int, x: int, n: int, f: ValueTable,
                 z: Fraction = Fraction(1, 20), horizon: int = 40) -> MarkovCheck:
    from .oracle import AbsorbingDP, eval_series, markov_functional_series

    if x >= b:
        raise DomainError("start x must lie below the threshold b")
    N = params.N
    g = _expect_n(params, n, f)
    law = dist_S_b_plus(N, b - x)
    lhs = law.expect(lambda ell: g(ell + x))
    P = newton_polys(N, b)
    rhs = sum((P(j, x) * forward_diff(g, b, j) for j in range(N)), Fraction(0))
    series = markov_functional_series(AbsorbingDP(params, upper=b, horizon=horizon, start=x), x, n, f)
    gf_lhs, tail = eval_series(series, z)
    gf_rhs = sum(H_plus(params, b - x, ell - x, float(z)) * float(g(ell)) for ell in range(b, b + N))
    return MarkovCheck(lhs, rhs, gf_lhs, gf_rhs, tail)

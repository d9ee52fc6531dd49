"""Exit from an interval (a, b) with a < 0 < b.

The walk leaves (a, b) through one of 2N boundary cells
{a-N+1..a} U {b..b+N-1}. This module gives the joint generating function of
the exit time and exit cell (as the solution of a Vandermonde system with a
gap in its powers), the exact exit law, its moments, the boundary
interpolation polynomials and the discrete boundary-value problem they solve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Optional, Sequence, Tuple

from .combinatorics import (ValueTable, binomial, det, elementary_symmetric, falling_factorial, lookup,
                            poly_add, poly_eval, poly_from_roots, poly_mul, poly_scale, sgn_pow)
from .errors import DegenerateNodes, DomainError, MissingValue, SingularSchur
from .overshoot import backward_diff, forward_diff
from .spectral import roots
from .walk import SignedMeasure, WalkParams, laplacian_power, walk_pmf_closed


# -- Vandermonde systems with a gap in the powers ----------------------------

@dataclass(frozen=True)
class LacunarySystem:
    """Nodes u_1..u_{p+r} and powers {0..p-1} U {p+q..p+q+r-1}."""

    p: int
    q: int
    r: int
    u: tuple
    rhs: tuple = ()

    def __post_init__(self) -> None:
        if self.p < 0 or self.q < 0 or self.r < 0 or self.p + self.r < 1:
            raise DomainError("p, q, r must be non-negative with p + r >= 1")
        if len(self.u) != self.p + self.r:
            raise DomainError(f"expected {self.p + self.r} nodes, got {len(self.u)}")
        if self.rhs and len(self.rhs) != len(self.u):
            raise DomainError("right-hand side length must match the number of nodes")
        exact = all(isinstance(x, (int, Fraction)) for x in self.u)
        for i in range(len(self.u)):
            for j in range(i):
                d = abs(self.u[i] - self.u[j])
                if exact:
                    bad = d == 0
                else:
                    bad = d <= 1e-12 * max(1.0, abs(self.u[i]), abs(self.u[j]))
                if bad:
                    raise DegenerateNodes(f"nodes {j} and {i} coincide")

    @property
    def powers(self) -> Tuple[int, ...]:
        return tuple(range(self.p)) + tuple(range(self.p + self.q, self.p + self.q + self.r))

    def matrix(self) -> list:
        return [[x ** e for e in self.powers] for x in self.u]

    def apply(self, x: Dict[int, object]) -> list:
        return [sum(row_x ** e * x[e] for e in self.powers) for row_x in self.u]


def _s(values: Sequence, m: int):
    es = elementary_symmetric(values)
    return es[m] if 0 <= m < len(es) else 0 * es[0]


def _schur(values: Sequence, r: int, q: int):
    es = elementary_symmetric(values)

    def s(m: int):
        return es[m] if 0 <= m < len(es) else 0 * es[0]
    return det([[s(r + i - j) for j in range(q)] for i in range(q)])


def vandermonde(values: Sequence):
    out = 1
    for j in range(len(values)):
        for i in range(j):
            out *= values[j] - values[i]
    return out


def lacunary_det(sys: LacunarySystem):
    """Vandermonde product times the q x q Toeplitz determinant [s_{r+i-j}]."""
    return vandermonde(sys.u) * _schur(sys.u, sys.r, sys.q)


def lacunary_det_direct(sys: LacunarySystem):
    return det(sys.matrix())


def _dense_solve(A: list, y: list) -> list:
    # Gaussian elimination with partial pivoting, for complex systems
    n = len(A)
    a = [list(r) + [y[i]] for i, r in enumerate(A)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            raise SingularSchur("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            for k in range(col, n + 1):
                a[r][k] -= f * a[col][k]
    x = [0j] * n
    for i in reversed(range(n)):
        x[i] = (a[i][n] - sum(a[i][k] * x[k] for k in range(i + 1, n))) / a[i][i]
    return x


def lacunary_solve(sys: LacunarySystem, offsets: Optional[Sequence] = None) -> Dict[int, object]:
    """Solve sum_{l in I} u_k^l x_l = rhs_k with symmetric-function determinants.

    ``offsets`` (u_k - 1 computed accurately) may be supplied to form the node
    differences without cancellation.
    """
    if not sys.rhs:
        raise DomainError("system has no right-hand side")
    p, q, r, u = sys.p, sys.q, sys.r, list(sys.u)
    n = p + r
    diffs = list(offsets) if offsets is not None else u
    S = _schur(u, r, q)
    exact = all(isinstance(x, (int, Fraction)) for x in u)
    if (exact and S == 0) or (not exact and abs(S) < 1e-300):
        raise SingularSchur("the symmetric-function determinant vanishes")
    pk = []
    esk = []
    for k in range(n):
        prod = 1
        for i in range(n):
            if i != k:
                prod *= diffs[k] - diffs[i]
        pk.append(prod)
        esk.append(elementary_symmetric([u[i] for i in range(n) if i != k]))

    def sk(k: int, m: int):
        return esk[k][m] if 0 <= m < n else 0 * esk[k][0]

    out = {}
    for ell in sys.powers:
        total = 0
        for k in range(n):
            rows = [[sk(k, r + i - j) for j in range(q + 1)] for i in range(q)]
            rows.append([sk(k, p + q + r - ell - 1 - j) for j in range(q + 1)])
            total += sys.rhs[k] * det(rows) / pk[k]
        out[ell] = sgn_pow(ell + p + r - 1) * total / S
    return out


# -- generating function of the exit time and cell ---------------------------

def exit_set(N: int, a: int, b: int) -> list:
    return list(range(a - N + 1, a + 1)) + list(range(b, b + N))


def _check_ab(a: int, b: int) -> None:
    if not (a < 0 < b):
        raise DomainError(f"need integers a < 0 < b, got a={a}, b={b}")


def exit_H_all(params: WalkParams, a: int, b: int, z: float, one_minus_z: Optional[float] = None,
               method: str = "schur") -> Dict[int, complex]:
    """E[z^sigma ; exit cell = ell] for every ell in the exit set."""
    _check_ab(a, b)
    N = params.N
    rs = roots(params, z, one_minus_z)
    nodes = list(rs.u) + list(rs.v)
    offs = list(rs.du) + list(rs.dv)
    shift = N - a - 1
    rhs = tuple(x ** shift for x in nodes)
    sys = LacunarySystem(N, b - a - 1, N, tuple(nodes), rhs)
    if method == "schur":
        sol = lacunary_solve(sys, offs)
    elif method == "direct":
        sol = dict(zip(sys.powers, _dense_solve(sys.matrix(), list(rhs))))
    else:
        raise DomainError(f"unknown method {method!r}")
    return {e - shift: complex(x) for e, x in sol.items()}


def exit_H(params: WalkParams, a: int, b: int, ell: int, z: float, one_minus_z: Optional[float] = None,
           method: str = "schur") -> complex:
    if ell not in exit_set(params.N, a, b):
        raise DomainError(f"ell={ell} is not an exit cell of ({a}, {b})")
    return exit_H_all(params, a, b, z, one_minus_z, method)[ell]


def exit_H_double(params: WalkParams, a: int, b: int, z: float, zeta: complex,
                  one_minus_z: Optional[float] = None, method: str = "schur") -> complex:
    return sum(h * zeta ** ell for ell, h in exit_H_all(params, a, b, z, one_minus_z, method).items())


# -- exact exit law ------------------------------------------------------------

@dataclass(frozen=True)
class ExitLaw:
    a: int
    b: int
    lower_masses: Tuple[Fraction, ...]
    upper_masses: Tuple[Fraction, ...]
    K: Fraction

    def measure(self) -> SignedMeasure:
        d = {self.a - i: m for i, m in enumerate(self.lower_masses)}
        d.update({self.b + i: m for i, m in enumerate(self.upper_masses)})
        return SignedMeasure.from_dict(d)

    def mass(self, ell: int) -> Fraction:
        if self.a - len(self.lower_masses) < ell <= self.a:
            return self.lower_masses[self.a - ell]
        if self.b <= ell < self.b + len(self.upper_masses):
            return self.upper_masses[ell - self.b]
        return Fraction(0)

    @property
    def p_down(self) -> Fraction:
        return sum(self.lower_masses, Fraction(0))

    @property
    def p_up(self) -> Fraction:
        return sum(self.upper_masses, Fraction(0))

    def expect(self, f: ValueTable) -> Fraction:
        lo = sum((m * lookup(f, self.a - i) for i, m in enumerate(self.lower_masses)), Fraction(0))
        hi = sum((m * lookup(f, self.b + i) for i, m in enumerate(self.upper_masses)), Fraction(0))
        return lo + hi


def exit_K(N: int, a: int, b: int) -> Fraction:
    return binomial(N - a - 1, N) * binomial(N + b - 1, N)


def exit_K_product(N: int, a: int, b: int) -> Fraction:
    out = Fraction(1)
    for k in range(N):
        out *= (k - a) * (k + b)
    return out / factorial(N) ** 2


def dist_S_ab(N: int, a: int, b: int) -> ExitLaw:
    _check_ab(a, b)
    if N < 1:
        raise DomainError("N must be positive")
    K = exit_K(N, a, b)
    lower = tuple(sgn_pow(l) * K * N / (l - a) * binomial(N - 1, l) / binomial(l + b - a + N - 1, N)
                  for l in range(N))
    upper = tuple(sgn_pow(l) * K * N / (l + b) * binomial(N - 1, l) / binomial(l + b - a + N - 1, N)
                  for l in range(N))
    return ExitLaw(a, b, lower, upper, K)


def ruin_probs(N: int, a: int, b: int) -> Tuple[Fraction, Fraction]:
    law = dist_S_ab(N, a, b)
    return law.p_down, law.p_up


def moments_S_ab(N: int, a: int, b: int, n: int) -> Fraction:
    """E[S^n] at exit, by direct expectation."""
    if n < 1:
        raise DomainError("moment order must be at least 1")
    return dist_S_ab(N, a, b).expect(lambda ell: Fraction(ell) ** n)


def moment_2N_closed(N: int, a: int, b: int) -> Fraction:
    return -falling_factorial(a, N) * falling_factorial(b + N - 1, N)


def side_moments(N: int, a: int, b: int, n: int, side: str) -> Fraction:
    """E[S (S-b)_{n-1} ; exit on the given side], by direct expectation."""
    if n < 1:
        raise DomainError("n must be at least 1")
    law = dist_S_ab(N, a, b)
    f = lambda ell: ell * falling_factorial(ell - b, n - 1)
    if side == "upper":
        return sum((m * f(b + i) for i, m in enumerate(law.upper_masses)), Fraction(0))
    if side == "lower":
        return sum((m * f(a - i) for i, m in enumerate(law.lower_masses)), Fraction(0))
    raise DomainError("side must be 'upper' or 'lower'")


def side_moments_closed(N: int, a: int, b: int, n: int, side: str) -> Fraction:
    _check_ab(a, b)
    if n < 1:
        raise DomainError("n must be at least 1")
    K = exit_K(N, a, b)
    core = (K * N / (2 * N - n) * Fraction(factorial(N), factorial(N - n)) / binomial(2 * N + b - a - 2, 2 * N - n)
            if n <= N else None)
    if side == "upper":
        return sgn_pow(n - 1) * core if n <= N else Fraction(0)
    if side == "lower":
        if n <= N:
            return sgn_pow(n) * core
        if n <= 2 * N - 1:
            return Fraction(0)
        return sgn_pow(N + n - 1) * K * N * factorial(N) * factorial(n - N - 1) * binomial(n + b - a - 2, n - 2 * N)
    raise DomainError("side must be 'upper' or 'lower'")


# -- boundary coefficients from Beta integrals ---------------------------------

def _beta(x: int, y: int) -> Fraction:
    return Fraction(factorial(x - 1) * factorial(y - 1), factorial(x + y - 1))


def triangle_integral(N: int, a: int, b: int, j: int, side: str) -> Fraction:
    """Exact double integral over a triangle of the unit square.

    upper: int_{0<=v<=u<=1} u^{-a-1}(1-u)^{N-1} v^{j+b-1}(1-v)^{N-j-1}
    lower: int_{0<=u<=v<=1} u^{j-a-1}(1-u)^{N-j-1} v^{b-1}(1-v)^{N-1}
    """
    _check_ab(a, b)
    if not 0 <= j <= N - 1:
        raise DomainError("j must lie in 0..N-1")
    total = Fraction(0)
    for m in range(N - j):
        w = sgn_pow(m) * binomial(N - j - 1, m)
        if side == "upper":
            # inner v-integral from 0 to u, then a Beta integral in u
            total += w * Fraction(1, j + b + m) * _beta(j + b + m - a, N)
        elif side == "lower":
            total += w * Fraction(1, j - a + m) * _beta(j - a + m + b, N)
        else:
            raise DomainError("side must be 'upper' or 'lower'")
    return total


def I_coeffs(N: int, a: int, b: int) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """Coefficients (I^-_j, I^+_j) with
    E f(S) = sum_j I^-_j (Delta^-)^j f(a) + sum_j I^+_j (Delta^+)^j f(b)."""
    K = exit_K(N, a, b)
    minus = tuple(K * N * N * binomial(N - 1, j) * triangle_integral(N, a, b, j, "lower") for j in range(N))
    plus = tuple(sgn_pow(j) * K * N * N * binomial(N - 1, j) * triangle_integral(N, a, b, j, "upper")
                 for j in range(N))
    return minus, plus


def expect_f_S_ab(N: int, a: int, b: int, f: ValueTable) -> Fraction:
    minus, plus = I_coeffs(N, a, b)
    return (sum((c * backward_diff(f, a, j) for j, c in enumerate(minus)), Fraction(0))
            + sum((c * forward_diff(f, b, j) for j, c in enumerate(plus)), Fraction(0)))


def genfun_S_ab(N: int, a: int, b: int, zeta: Fraction) -> Fraction:
    zeta = Fraction(zeta)
    minus, plus = I_coeffs(N, a, b)
    return (zeta ** a * sum((c * (1 - 1 / zeta) ** j for j, c in enumerate(minus)), Fraction(0))
            + zeta ** b * sum((c * (zeta - 1) ** j for j, c in enumerate(plus)), Fraction(0)))


# -- boundary polynomials --------------------------------------------------------

@dataclass(frozen=True)
class BoundaryPolys:
    a: int
    b: int
    pminus: Tuple[Tuple[Fraction, ...], ...]
    pplus: Tuple[Tuple[Fraction, ...], ...]

    def minus(self, j: int, x) -> Fraction:
        return poly_eval(self.pminus[j], Fraction(x))

    def plus(self, j: int, x) -> Fraction:
        return poly_eval(self.pplus[j], Fraction(x))


def boundary_polys(N: int, a: int, b: int) -> BoundaryPolys:
    _check_ab(a, b)
    lead = Fraction(1, factorial(N - 1) * factorial(N))
    left = poly_from_roots([Fraction(a - k) for k in range(N)])
    pplus = []
    for j in range(N):
        acc = [Fraction(0)]
        for m in range(j, N):
            right = [Fraction(1)]
            for k in range(N):
                if k != m:
                    right = poly_mul(right, [Fraction(b + k), Fraction(-1)])
            w = sgn_pow(m) * binomial(m, j) * binomial(N - 1, m) / binomial(m + b - a + N - 1, N)
            acc = poly_add(acc, poly_scale(poly_mul(left, right), w))
        pplus.append(tuple(lead * c for c in acc))
    pminus = []
    for j in range(N):
        # x -> (-1)^j P^+_j(a + b - x)
        q = [Fraction(0)]
        power = [Fraction(1)]
        for c in pplus[j]:
            q = poly_add(q, poly_scale(power, c))
            power = poly_mul(power, [Fraction(a + b), Fraction(-1)])
        pminus.append(tuple(sgn_pow(j) * c for c in q))
    return BoundaryPolys(a, b, tuple(pminus), tuple(pplus))


def expect_exit_from_x(N: int, a: int, b: int, x: int, f: ValueTable) -> Fraction:
    """E_x f(exit cell) for a walk started at x."""
    P = boundary_polys(N, a, b)
    return (sum((P.minus(j, x) * backward_diff(f, a, j) for j in range(N)), Fraction(0))
            + sum((P.plus(j, x) * forward_diff(f, b, j) for j in range(N)), Fraction(0)))


def iterated_laplacian(f: ValueTable, i: int, N: int) -> Fraction:
    return laplacian_power(f, i, N)


def iterated_laplacian_composed(f: ValueTable, i: int, N: int) -> Fraction:
    """(Delta^+)^N applied to (Delta^-)^N f, evaluated at i."""
    return forward_diff(lambda j: backward_diff(f, j, N), i, N)


@dataclass(frozen=True)
class LauricellaSolution:
    N: int
    a: int
    b: int
    values: Dict[int, Fraction] = field(default_factory=dict)

    def interior_residuals(self) -> Dict[int, Fraction]:
        return {x: iterated_laplacian(self.values, x, self.N) for x in range(self.a + 1, self.b)}

    def boundary_residuals(self, phi: ValueTable) -> Dict[str, Fraction]:
        out = {}
        for k in range(self.N):
            out[f"minus{k}"] = backward_diff(self.values, self.a, k) - backward_diff(phi, self.a, k)
            out[f"plus{k}"] = forward_diff(self.values, self.b, k) - forward_diff(phi, self.b, k)
        return out

    def satisfied(self, phi: ValueTable) -> bool:
        return (all(v == 0 for v in self.interior_residuals().values())
                and all(v == 0 for v in self.boundary_residuals(phi).values()))


def lauricella_solve(N: int, a: int, b: int, phi: ValueTable) -> LauricellaSolution:
    """Solution of Delta^N Phi = 0 on (a, b) with N backward conditions at a
    and N forward conditions at b, as Phi(x) = E_x phi(exit cell)."""
    _check_ab(a, b)
    for ell in exit_set(N, a, b):
        lookup(phi, ell)
    P = boundary_polys(N, a, b)
    dm = [backward_diff(phi, a, j) for j in range(N)]
    dp = [forward_diff(phi, b, j) for j in range(N)]
    vals = {}
    for x in range(a - N + 1, b + N):
        vals[x] = (sum((P.minus(j, x) * dm[j] for j in range(N)), Fraction(0))
                   + sum((P.plus(j, x) * dp[j] for j in range(N)), Fraction(0)))
    return LauricellaSolution(N, a, b, vals)


@dataclass(frozen=True)
class MarkovCheckAB:
    lhs: Fraction
    rhs: Fraction
    gf_lhs: Fraction
    gf_rhs: complex
    gf_tail: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs and abs(float(self.gf_lhs) - self.gf_rhs) <= float(self.gf_tail) + 1e-9


def markov_ab_check(params: WalkParams, a: int, b: int, x: int, n: int, f: ValueTable,
                    z: Fraction = Fraction(1, 20), horizon: int = 40) -> MarkovCheckAB:
    from .oracle import AbsorbingDP, eval_series, markov_functional_series

    _check_ab(a, b)
    if not a < x < b:
        raise DomainError("start x must lie strictly inside (a, b)")
    N = params.N
    law_n = walk_pmf_closed(params, n)
    g = lambda ell: law_n.expect(lambda k: lookup(f, ell + k))
    law = dist_S_ab(N, a - x, b - x)
    lhs = law.expect(lambda ell: g(ell + x))
    P = boundary_polys(N, a, b)
    rhs = (sum((P.minus(j, x) * backward_diff(g, a, j) for j in range(N)), Fraction(0))
           + sum((P.plus(j, x) * forward_diff(g, b, j) for j in range(N)), Fraction(0)))
    series = markov_functional_series(AbsorbingDP(params, lower=a, upper=b, horizon=horizon, start=x), x, n, f)
    gf_lhs, tail = eval_series(series, z)
    H = exit_H_all(params, a - x, b - x, float(z))
    gf_rhs = sum(h * float(g(ell + x)) for ell, h in H.items())
    return MarkovCheckAB(lhs, rhs, gf_lhs, gf_rhs, tail)

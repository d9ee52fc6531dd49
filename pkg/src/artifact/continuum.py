"""Limits of the rescaled walk: the pseudo-process X_t = lim eps S_{t/eps^{2N}}.

Everything here is floating point. The exit laws of the limit are
combinations of Dirac masses and their derivatives at the boundary; they are
stored as coefficient lists (``DiracComb``) rather than densities.

The ``*_discrete`` helpers evaluate the matching exact walk quantity at mesh
eps, so convergence can be checked numerically.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import List, Sequence, Tuple

from .combinatorics import binomial, det
from .errors import DomainError, NearSingular
from .spectral import continuum_phis
from .walk import WalkParams


@dataclass(frozen=True)
class DiracComb:
    """sum over anchors x of sum_j c_j delta_x^{(j)}."""

    anchors: Tuple[Tuple[float, Tuple[float, ...]], ...]

    def total_mass(self) -> float:
        return sum(cs[0] for _, cs in self.anchors if cs)

    def fourier(self, mu: float) -> complex:
        # the Fourier transform of delta_x^{(j)} is (-i mu)^j e^{i mu x}
        out = 0j
        for x, cs in self.anchors:
            out += cmath.exp(1j * mu * x) * sum(c * (-1j * mu) ** j for j, c in enumerate(cs))
        return out

    def to_json_obj(self) -> list:
        return [{"location": x, "coefficients": list(cs)} for x, cs in self.anchors]


def _check_positive(name: str, x: float) -> None:
    if not x > 0:
        raise DomainError(f"{name} must be positive, got {x}")


def _rate(c, lam: float, N: int) -> float:
    return (lam / float(c)) ** (1.0 / (2 * N))


def all_phis(N: int) -> List[complex]:
    """phi_1..phi_N followed by their negatives."""
    phi = list(continuum_phis(N).phi)
    return phi + [-p for p in phi]


def lambda_potential(N: int, c, lam: float, x: float) -> complex:
    """int_0^inf e^{-lam t} p_t(x) dt, even in x."""
    _check_positive("lambda", lam)
    _check_positive("c", float(c))
    y = _rate(c, lam, N)
    pref = 1.0 / (2 * N * float(c) ** (1 / (2 * N)) * lam ** (1 - 1 / (2 * N)))
    return pref * sum(p * cmath.exp(-p * y * abs(x)) for p in continuum_phis(N).phi)


def lf_tau_b(N: int, c, b: float, lam: float, mu: float) -> complex:
    """E[e^{-lam tau + i mu X} ; tau < inf] for the first passage above b."""
    _check_positive("b", b)
    _check_positive("lambda", lam)
    y = _rate(c, lam, N)
    phi = continuum_phis(N).phi
    out = 0j
    for k in range(N):
        term = cmath.exp(-phi[k] * y * b)
        for j in range(N):
            if j != k:
                term *= phi[j] / (phi[j] - phi[k]) * (1 - 1j * phi[j].conjugate() * mu / y)
        out += term
    return cmath.exp(1j * mu * b) * out


def law_X_b_plus(N: int, b: float) -> DiracComb:
    _check_positive("b", b)
    return DiracComb(((float(b), tuple(b ** j / factorial(j) for j in range(N))),))


def fourier_X_b_plus(N: int, b: float, mu: float) -> complex:
    _check_positive("b", b)
    return cmath.exp(1j * mu * b) * sum((-1j * mu * b) ** j / factorial(j) for j in range(N))


def bold_I_coeffs(N: int, a: float, b: float) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """Weights of (i mu)^j e^{i mu a} and (i mu)^j e^{i mu b} in E e^{i mu X}."""
    if not a < 0 < b:
        raise DomainError(f"need a < 0 < b, got a={a}, b={b}")
    L = b - a
    lo = (b / L) ** N
    hi = (-a / L) ** N
    minus = tuple(lo * (-a) ** j / factorial(j) * sum(comb(k + N - 1, k) * (-a / L) ** k for k in range(N - j))
                  for j in range(N))
    plus = tuple(hi * (-b) ** j / factorial(j) * sum(comb(k + N - 1, k) * (b / L) ** k for k in range(N - j))
                 for j in range(N))
    return minus, plus


def law_X_ab(N: int, a: float, b: float) -> DiracComb:
    minus, plus = bold_I_coeffs(N, a, b)
    sgn = [(-1) ** j for j in range(N)]
    return DiracComb(((float(a), tuple(s * m for s, m in zip(sgn, minus))),
                      (float(b), tuple(s * p for s, p in zip(sgn, plus)))))


def fourier_X_ab(N: int, a: float, b: float, mu: float) -> complex:
    minus, plus = bold_I_coeffs(N, a, b)
    return (cmath.exp(1j * mu * a) * sum(m * (1j * mu) ** j for j, m in enumerate(minus))
            + cmath.exp(1j * mu * b) * sum(p * (1j * mu) ** j for j, p in enumerate(plus)))


def _exit_matrix(N: int, y: float, L: float) -> List[List[complex]]:
    rows = []
    for p in all_phis(N):
        e = cmath.exp(-p * y * L)
        rows.append([p ** m for m in range(N)] + [e * p ** m for m in range(N)])
    return rows


def lf_tau_ab(N: int, c, a: float, b: float, lam: float, mu: float) -> complex:
    """E[e^{-lam tau + i mu X} ; tau < inf] for the exit from (a, b), as a
    ratio of 2N x 2N determinants."""
    if not a < 0 < b:
        raise DomainError(f"need a < 0 < b, got a={a}, b={b}")
    _check_positive("lambda", lam)
    y = _rate(c, lam, N)
    L = b - a
    delta = -1j * mu / y
    try:
        M = _exit_matrix(N, y, L)
    except OverflowError:
        raise NearSingular(f"exponentials overflow for (b-a)(lambda/c)^(1/2N) = {y * L:.3e}") from None
    D = det(M)
    scale = 1.0
    for row in M:
        scale *= math.sqrt(sum(abs(v) ** 2 for v in row))
    if abs(D) < 1e-12 * scale:
        raise NearSingular(f"|D| = {abs(D):.3e} is negligible against {scale:.3e}")
    lower_row = [delta ** m for m in range(N)] + [0j] * N
    upper_row = [0j] * N + [delta ** m for m in range(N)]
    out = 0j
    for k, p in enumerate(all_phis(N)):
        weight = cmath.exp(p * y * a)
        Dm = det(M[:k] + [lower_row] + M[k + 1:])
        Dp = det(M[:k] + [upper_row] + M[k + 1:])
        out += weight * (cmath.exp(1j * mu * a) * Dm + cmath.exp(1j * mu * b) * Dp)
    return out / D


# -- discrete counterparts at mesh eps ----------------------------------------

def _mesh(x: float, eps: float) -> int:
    return int(round(x / eps))


def _z_of(lam: float, eps: float, N: int) -> Tuple[float, float]:
    t = lam * eps ** (2 * N)
    return math.exp(-t), -math.expm1(-t)


def _check_scaling(params: WalkParams) -> None:
    if params.c > Fraction(1, 2 ** (2 * params.N - 1)):
        raise DomainError("convergence needs c <= 1/2^(2N-1)")


def tau_b_discrete(params: WalkParams, b: float, lam: float, mu: float, eps: float) -> complex:
    """E[z^sigma zeta^S] above b/eps with z = e^{-lam eps^{2N}}, zeta = e^{i mu eps}."""
    from .overshoot import H_plus_double

    _check_scaling(params)
    z, omz = _z_of(lam, eps, params.N)
    return H_plus_double(params, _mesh(b, eps), z, cmath.exp(1j * mu * eps), omz)


def tau_ab_discrete(params: WalkParams, a: float, b: float, lam: float, mu: float, eps: float) -> complex:
    from .exit import exit_H_double

    _check_scaling(params)
    z, omz = _z_of(lam, eps, params.N)
    return exit_H_double(params, _mesh(a, eps), _mesh(b, eps), z, cmath.exp(1j * mu * eps), omz)


def bold_I_discrete(N: int, a: float, b: float, eps: float) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """eps^j times the exact boundary coefficients of the walk on (a/eps, b/eps)."""
    from .exit import I_coeffs

    minus, plus = I_coeffs(N, _mesh(a, eps), _mesh(b, eps))
    return (tuple(float(m) * eps ** j for j, m in enumerate(minus)),
            tuple(float(p) * eps ** j for j, p in enumerate(plus)))


def X_b_coeffs_discrete(N: int, b: float, mu: float, eps: float) -> Tuple[complex, ...]:
    """C(j+b_eps-1, b_eps-1) (1 - e^{i mu eps})^j for j < N."""
    be = _mesh(b, eps)
    d = 1 - cmath.exp(1j * mu * eps)
    return tuple(float(binomial(j + be - 1, be - 1)) * d ** j for j in range(N))


def X_b_coeffs(N: int, b: float, mu: float) -> Tuple[complex, ...]:
    return tuple((-1j * mu * b) ** j / factorial(j) for j in range(N))


def deviations(exact, approx: Sequence) -> List[float]:
    """Max absolute deviation of each approximation from the limit."""
    def flat(v):
        if isinstance(v, (tuple, list)):
            return [x for item in v for x in flat(item)]
        return [v]
    ref = flat(exact)
    return [max(abs(r - x) for r, x in zip(ref, flat(ap))) for ap in approx]

"""The signed random walk whose generator is a multiple of the iterated
discrete Laplacian: step law, n-step law, bounds and transforms."""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .combinatorics import ValueTable, as_rational, binomial, lookup, sgn_pow
from .errors import DomainError


@dataclass(frozen=True)
class WalkParams:
    N: int
    c: Fraction
    kappa: int = field(default=0)

    def __post_init__(self) -> None:
        if not isinstance(self.N, int) or self.N < 1:
            raise DomainError(f"N must be a positive integer, got {self.N!r}")
        c = as_rational(self.c)
        if c <= 0:
            raise DomainError(f"c must be positive, got {c}")
        object.__setattr__(self, "c", c)
        kappa = (-1) ** (self.N - 1)
        if self.kappa not in (0, kappa):
            raise DomainError(f"kappa must equal (-1)^(N-1) = {kappa}")
        object.__setattr__(self, "kappa", kappa)


@dataclass(frozen=True)
class SignedMeasure:
    """Finitely supported signed measure on the integers with exact masses."""

    support: Tuple[int, ...]
    masses: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.support) != len(self.masses):
            raise DomainError("support and masses differ in length")
        if any(b <= a for a, b in zip(self.support, self.support[1:])):
            raise DomainError("support must be strictly increasing")

    @classmethod
    def from_dict(cls, d: Mapping[int, Union[int, Fraction]]) -> "SignedMeasure":
        items = sorted((int(k), Fraction(v)) for k, v in d.items() if v != 0)
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items))

    @classmethod
    def dirac(cls, k: int = 0) -> "SignedMeasure":
        return cls((k,), (Fraction(1),))

    def as_dict(self) -> Dict[int, Fraction]:
        return dict(zip(self.support, self.masses))

    def __getitem__(self, k: int) -> Fraction:
        return self.as_dict().get(k, Fraction(0))

    def items(self) -> Iterable[Tuple[int, Fraction]]:
        return zip(self.support, self.masses)

    def total_mass(self) -> Fraction:
        return sum(self.masses, Fraction(0))

    def total_variation(self) -> Fraction:
        return sum((abs(m) for m in self.masses), Fraction(0))

    def expect(self, f: ValueTable) -> Fraction:
        return sum((m * lookup(f, k) for k, m in self.items()), Fraction(0))

    def shift(self, x: int) -> "SignedMeasure":
        return SignedMeasure(tuple(k + x for k in self.support), self.masses)

    def convolve(self, other: "SignedMeasure") -> "SignedMeasure":
        out: Dict[int, Fraction] = {}
        for k, m in self.items():
            for j, w in other.items():
                out[k + j] = out.get(k + j, Fraction(0)) + m * w
        return SignedMeasure.from_dict(out)

    def to_csv(self) -> str:
        lines = ["k,numerator,denominator"]
        lines += [f"{k},{m.numerator},{m.denominator}" for k, m in self.items()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps([{"k": k, "num": m.numerator, "den": m.denominator} for k, m in self.items()])


@dataclass(frozen=True)
class Bounds:
    m1: Fraction
    m_inf: Fraction


def step_pmf(params: WalkParams) -> SignedMeasure:
    N, c = params.N, params.c
    d = {0: 1 - c * binomial(2 * N, N)}
    for k in range(1, N + 1):
        d[k] = d[-k] = sgn_pow(k - 1) * c * binomial(2 * N, k + N)
    return SignedMeasure.from_dict(d)


def step_cdf(params: WalkParams, k: int) -> Fraction:
    N = params.N
    if abs(k) > N:
        raise DomainError(f"step CDF is tabulated on -N..N, got k={k}")
    return int(k >= 0) + sgn_pow(k - 1) * params.c * binomial(2 * N - 1, k + N)


def bounds(params: WalkParams) -> Bounds:
    N, c = params.N, params.c
    if c <= Fraction(1) / binomial(2 * N, N):
        m1 = 1 + c * (4 ** N - 2 * binomial(2 * N, N))
    else:
        m1 = c * 4 ** N - 1
    m_inf = Fraction(1) if c <= Fraction(1, 2 ** (2 * N - 1)) else c * 4 ** N - 1
    return Bounds(m1=Fraction(m1), m_inf=m_inf)


def char_fn(params: WalkParams, theta: float) -> float:
    return 1.0 - float(params.c) * 4 ** params.N * math.sin(theta / 2) ** (2 * params.N)


def step_genfun(params: WalkParams, zeta: complex) -> complex:
    """E zeta^{U_1} = 1 + kappa c (1 - zeta)^{2N} / zeta^N."""
    N = params.N
    return 1 + params.kappa * float(params.c) * (1 - zeta) ** (2 * N) / zeta ** N


def walk_pmf_closed(params: WalkParams, n: int) -> SignedMeasure:
    if n < 0:
        raise DomainError("number of steps must be non-negative")
    N, c = params.N, params.c
    d = {}
    for k in range(-N * n, N * n + 1):
        d[k] = sgn_pow(k) * sum(
            ((-c) ** l * binomial(n, l) * binomial(2 * N * l, k + N * l) for l in range(n + 1)),
            Fraction(0))
    return SignedMeasure.from_dict(d)


def walk_cdf_closed(params: WalkParams, n: int, k: int) -> Fraction:
    N, c = params.N, params.c
    if abs(k) > N * n:
        raise DomainError(f"|k| must not exceed N*n = {N * n}, got k={k}")
    s = sum(((-c) ** l * binomial(n, l) * binomial(2 * N * l - 1, k + N * l) for l in range(1, n + 1)),
            Fraction(0))
    return int(k >= 0) + sgn_pow(k) * s


def walk_pmf_convolution(params: WalkParams, n: int) -> SignedMeasure:
    step = step_pmf(params)
    out = SignedMeasure.dirac(0)
    for _ in range(n):
        out = out.convolve(step)
    return out


def laplacian_power(f: ValueTable, j: int, N: int) -> Fraction:
    """N-th power of the discrete Laplacian, sum_k (-1)^{k+N} C(2N,k+N) f(j+k)."""
    return sum((sgn_pow(k + N) * binomial(2 * N, k + N) * lookup(f, j + k)
                for k in range(-N, N + 1)), Fraction(0))


def generator_apply(params: WalkParams, f: ValueTable, j: int) -> Fraction:
    """E f(j + U_1) - f(j), by direct summation over the step law."""
    return step_pmf(params).expect(lambda k: lookup(f, j + k)) - lookup(f, j)


def char_fn_from_pmf(params: WalkParams, theta: float) -> complex:
    return sum(float(m) * cmath.exp(1j * k * theta) for k, m in step_pmf(params).items())

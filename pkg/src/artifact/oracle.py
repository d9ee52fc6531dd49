"""Brute-force reference engine.

Propagates the signed path measure step by step in exact rationals, removes
mass as soon as it leaves the allowed region and records where and when it
left. The recorded masses are the coefficients of first-passage generating
functions, and they are certified to a horizon T by the bound
|coefficient of z^n| <= m1^n, where m1 is the total variation of one step.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .combinatorics import ValueTable
from .errors import DomainError, HorizonTooLarge
from .walk import SignedMeasure, WalkParams, bounds, step_pmf

MAX_AFTER = 8


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: Tuple[Fraction, ...]
    horizon: int
    tail_bound_base: Fraction
    tail_scale: Fraction = Fraction(1)

    def tail(self, z: Fraction) -> Fraction:
        q = self.tail_bound_base * z
        if q >= 1:
            raise DomainError(f"need m1*z < 1, got {q}")
        return self.tail_scale * q ** (self.horizon + 1) / (1 - q)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.horizon != other.horizon or self.tail_bound_base != other.tail_bound_base:
            raise DomainError("series must share horizon and tail base")
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.horizon,
                               self.tail_bound_base, self.tail_scale + other.tail_scale)


@dataclass(frozen=True)
class AbsorbingDP:
    params: WalkParams
    lower: Optional[int] = None
    upper: Optional[int] = None
    horizon: int = 40
    start: int = 0
    band: Optional[int] = None

    def __post_init__(self) -> None:
        if self.lower is None and self.upper is None:
            raise DomainError("at least one boundary is required")
        if self.lower is not None and self.upper is not None and self.upper - self.lower < 2:
            raise DomainError("the open interval (lower, upper) must contain an integer")
        if self.horizon < 0:
            raise DomainError("horizon must be non-negative")

    def exit_set(self) -> List[int]:
        N = self.params.N
        out = []
        if self.lower is not None:
            out += list(range(self.lower - N + 1, self.lower + 1))
        if self.upper is not None:
            out += list(range(self.upper, self.upper + N))
        return out

    def _absorbed(self, k: int) -> bool:
        return (self.lower is not None and k <= self.lower) or (self.upper is not None and k >= self.upper)

    def _reach(self) -> int:
        # extra width kept beyond the exact truncation band
        return self.band if self.band is not None else 0


@lru_cache(maxsize=256)
def _run(dp: AbsorbingDP) -> Tuple[Tuple[Dict[int, Fraction], ...], Tuple[Dict[int, Fraction], ...]]:
    """Absorbed mass per step and the surviving interior measure per step."""
    N, T = dp.params.N, dp.horizon
    step = list(step_pmf(dp.params).items())
    absorbed: List[Dict[int, Fraction]] = []
    interior: List[Dict[int, Fraction]] = []
    cur: Dict[int, Fraction] = {}
    if dp._absorbed(dp.start):
        absorbed.append({dp.start: Fraction(1)})
    else:
        absorbed.append({})
        cur = {dp.start: Fraction(1)}
    interior.append(dict(cur))
    for n in range(1, T + 1):
        nxt: Dict[int, Fraction] = {}
        for k, m in cur.items():
            for s, p in step:
                nxt[k + s] = nxt.get(k + s, Fraction(0)) + m * p
        hit: Dict[int, Fraction] = {}
        cur = {}
        remaining = T - n
        extra = dp._reach()
        for k, m in nxt.items():
            if m == 0:
                continue
            if dp._absorbed(k):
                hit[k] = m
                continue
            # a point further than N*(T-n) from every boundary cannot be
            # absorbed before the horizon; dropping it leaves all recorded
            # coefficients unchanged
            if dp.lower is None and k < dp.upper - N * remaining - extra:
                continue
            if dp.upper is None and k > dp.lower + N * remaining + extra:
                continue
            cur[k] = m
        absorbed.append(hit)
        interior.append(dict(cur))
    return tuple(absorbed), tuple(interior)


def first_passage_series(dp: AbsorbingDP, ell: int) -> TruncatedSeries:
    """Coefficients P{sigma = n, S_sigma = ell}, n = 0..T."""
    if ell not in dp.exit_set():
        raise DomainError(f"{ell} is not a reachable exit point {dp.exit_set()}")
    absorbed, _ = _run(dp)
    return TruncatedSeries(tuple(h.get(ell, Fraction(0)) for h in absorbed), dp.horizon, bounds(dp.params).m1)


def absorbed_masses(dp: AbsorbingDP) -> Tuple[Dict[int, Fraction], ...]:
    return _run(dp)[0]


def interior_masses(dp: AbsorbingDP) -> Tuple[Dict[int, Fraction], ...]:
    return _run(dp)[1]


def eval_series(s: TruncatedSeries, z: Fraction) -> Tuple[Fraction, Fraction]:
    z = Fraction(z)
    tail = s.tail(z)
    value = Fraction(0)
    for c in reversed(s.coeffs):
        value = value * z + c
    return value, tail


def walk_series(params: WalkParams, k: int, horizon: int = 40) -> TruncatedSeries:
    """Coefficients P{S_n = k}, n = 0..T, by repeated convolution."""
    step = step_pmf(params)
    cur = SignedMeasure.dirac(0)
    out = []
    for _ in range(horizon + 1):
        out.append(cur[k])
        cur = cur.convolve(step)
    return TruncatedSeries(tuple(out), horizon, bounds(params).m1)


def expect_after(params: WalkParams, start: int, n: int, f: ValueTable) -> Fraction:
    """E_start[f(S_n)] by exact convolution."""
    step = step_pmf(params)
    cur = SignedMeasure.dirac(start)
    for _ in range(n):
        cur = cur.convolve(step)
    return cur.expect(f)


def markov_functional_series(dp: AbsorbingDP, x: int, n_after: int, f: ValueTable) -> TruncatedSeries:
    """Coefficients of E_x[f(S_{sigma + n_after}); sigma = n] in z^n."""
    if n_after > MAX_AFTER:
        raise HorizonTooLarge(f"n_after must be at most {MAX_AFTER}")
    if n_after < 0:
        raise DomainError("n_after must be non-negative")
    if dp.start != x:
        dp = AbsorbingDP(dp.params, dp.lower, dp.upper, dp.horizon, x, dp.band)
    g = {ell: expect_after(dp.params, ell, n_after, f) for ell in dp.exit_set()}
    absorbed = absorbed_masses(dp)
    coeffs = tuple(sum((m * g[k] for k, m in h.items()), Fraction(0)) for h in absorbed)
    scale = max(abs(v) for v in g.values())
    return TruncatedSeries(coeffs, dp.horizon, bounds(dp.params).m1, scale)

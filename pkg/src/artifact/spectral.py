"""Roots of the characteristic polynomial and the generating functions built
from them.

For z in (0,1) the polynomial

    P_z(u) = (1 - z) u^N - kappa c z (u - 1)^{2N}

has N roots inside the unit disc and their N reciprocals outside. They are
computed from explicit radicals so that each root keeps a fixed label j.
"""

from __future__ import annotations

import cmath
import math
from math import comb
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from .errors import DomainError
from .walk import WalkParams, bounds

Z_MIN = 1e-6


@dataclass(frozen=True)
class RootSet:
    z: float
    u: Tuple[complex, ...]
    v: Tuple[complex, ...]
    w: float
    # u_j - 1 and v_j - 1 computed without cancellation
    du: Tuple[complex, ...] = ()
    dv: Tuple[complex, ...] = ()

    def to_json_obj(self) -> dict:
        return {
            "z": self.z,
            "w": self.w,
            "u": [[r.real, r.imag] for r in self.u],
            "v": [[r.real, r.imag] for r in self.v],
        }


@dataclass(frozen=True)
class ContinuumRoots:
    phi: Tuple[complex, ...]


def _check_z(z: float, one_minus_z: Optional[float] = None) -> None:
    # z may round to 1.0 when 1 - z is supplied separately
    if one_minus_z is not None:
        if not (one_minus_z > 0 and 0 < z <= 1):
            raise DomainError(f"z must lie in (0,1), got z={z}, 1-z={one_minus_z}")
    elif not (0 < z < 1):
        raise DomainError(f"z must lie in (0,1), got {z}")
    if z < Z_MIN:
        raise DomainError(f"z below {Z_MIN} is not supported (roots degenerate as z -> 0)")


def _eps(N: int, j: int) -> int:
    # sign of sin((2j-1) pi / N), decided exactly
    m = 2 * j - 1
    if m < N:
        return 1
    if m == N:
        return 0
    return -1


def root_pieces(N: int, w: float, j: int) -> Tuple[complex, float, float, int]:
    """theta_j, a_j, b_j and eps_j for a given value of w."""
    ang = (2 * j - 1) * math.pi / N
    theta = -cmath.exp(1j * ang)
    cos = math.cos(ang)
    eps = _eps(N, j)
    sin = 0.0 if eps == 0 else abs(math.sin(ang))
    rad = math.sqrt(w * w - 4 * cos * w + 4)
    lin = w - 2 * cos
    # take the larger of a, b from its radical and the other from a*b = |sin|,
    # which avoids cancellation in rad - |lin|
    if lin >= 0:
        a = math.sqrt((rad + lin) / 2)
        b = sin / a
    else:
        b = math.sqrt((rad - lin) / 2)
        a = sin / b
    return theta, a, b, eps


def roots(params: WalkParams, z: float, one_minus_z: Optional[float] = None) -> RootSet:
    """Labelled roots u_j (inside) and v_j = 1/u_j (outside) of P_z.

    ``one_minus_z`` may be supplied when z is very close to 1 and 1 - z is
    known more precisely than the rounded z.
    """
    _check_z(z, one_minus_z)
    N = params.N
    omz = (1.0 - z) if one_minus_z is None else float(one_minus_z)
    w = omz ** (1.0 / N) / (2.0 * (float(params.c) * z) ** (1.0 / N))
    sw = math.sqrt(w)
    du, dv = [], []
    for j in range(1, N + 1):
        theta, a, b, eps = root_pieces(N, w, j)
        shift = theta * sw * complex(a, eps * b)
        du.append(theta * w - shift)
        dv.append(theta * w + shift)
    return RootSet(z=z, u=tuple(1 + d for d in du), v=tuple(1 + d for d in dv), w=w,
                   du=tuple(du), dv=tuple(dv))


def root_offsets(params: WalkParams, z: float, one_minus_z: Optional[float] = None) -> Tuple[complex, ...]:
    """u_j - 1 without cancellation, for z near 1."""
    return roots(params, z, one_minus_z).du


def eval_Pz(params: WalkParams, z: float, u: complex) -> complex:
    N = params.N
    return (1 - z) * u ** N - params.kappa * float(params.c) * z * (u - 1) ** (2 * N)


def Pz_coefficients(params: WalkParams, z: float) -> list:
    """Coefficients of P_z in ascending powers of u."""
    N = params.N
    kc = params.kappa * float(params.c) * z
    coeffs = [-kc * comb(2 * N, m) * (-1) ** (2 * N - m) for m in range(2 * N + 1)]
    coeffs[N] += 1 - z
    return coeffs


def G_k(params: WalkParams, z: float, k: int) -> complex:
    """Generating function sum_n P{S_n = k} z^n."""
    _check_z(z)
    rs = roots(params, z)
    N = params.N
    s = sum((1 - u) / (1 + u) * u ** abs(k) for u in rs.u)
    return s / (N * (1 - z))


def G_double(params: WalkParams, zeta: complex, z: float) -> complex:
    """Double generating function sum_{n,k} P{S_n = k} z^n zeta^k."""
    _check_z(z)
    if float(bounds(params).m_inf) * z >= 1:
        raise DomainError("need m_inf * z < 1")
    rs = roots(params, z)
    r = abs(zeta)
    if not all(abs(u) < r < abs(v) for u, v in zip(rs.u, rs.v)):
        raise DomainError("zeta must lie in the annulus between the inner and outer roots")
    N = params.N
    return zeta ** N / ((1 - z) * zeta ** N - params.kappa * float(params.c) * z * (1 - zeta) ** (2 * N))


def G_on_circle(params: WalkParams, theta: float, z: float) -> float:
    N = params.N
    return 1.0 / (1 - z + float(params.c) * 4 ** N * z * math.sin(theta / 2) ** (2 * N))


def continuum_phis(N: int) -> ContinuumRoots:
    if N < 1:
        raise DomainError("N must be positive")
    return ContinuumRoots(tuple(-1j * cmath.exp(1j * math.pi * (2 * j - 1) / (2 * N)) for j in range(1, N + 1)))


@dataclass(frozen=True)
class AsymptoticReport:
    deviations: Dict[float, float]
    limit_z: float
    limit_deviation: float


def root_asymptotic_check(params: WalkParams, z_grid: Sequence[float]) -> AsymptoticReport:
    """Max over j of |(u_j - 1) / (-phi_j (1-z)^{1/2N} c^{-1/2N}) - 1| per z."""
    N = params.N
    phis = continuum_phis(N).phi
    devs = {}
    for z in z_grid:
        offs = root_offsets(params, z)
        scale = (1 - z) ** (1 / (2 * N)) * float(params.c) ** (-1 / (2 * N))
        devs[z] = max(abs(o / (-p * scale) - 1) for o, p in zip(offs, phis))
    zl = max(z_grid)
    return AsymptoticReport(deviations=devs, limit_z=zl, limit_deviation=devs[zl])

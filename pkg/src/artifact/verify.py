"""Cross-check suites behind ``artifact verify``.

Each case returns (ok, max_error). Exact cases report max_error 0 when they
pass; oracle cases report the largest excess over the certified tail.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from . import combinatorics as cb
from . import continuum as ct
from . import exit as ex
from . import overshoot as ov
from . import spectral as sp
from . import walk as wk
from .oracle import AbsorbingDP, eval_series, first_passage_series, walk_series

Z = Fraction(1, 20)
Case = Callable[[], Tuple[bool, float]]


def _exact(flag: bool) -> Tuple[bool, float]:
    return bool(flag), 0.0


def _walk_cases(seed: int, horizon: int) -> Dict[str, Case]:
    cases: Dict[str, Case] = {}
    for N in range(1, 5):
        for c in (Fraction(1, 4 ** N), Fraction(1, 2 ** (2 * N - 1))):
            p = wk.WalkParams(N, c)
            cases[f"step_mass/N{N}/c{c}"] = lambda p=p: _exact(wk.step_pmf(p).total_mass() == 1)
            cases[f"generator/N{N}/c{c}"] = lambda p=p: _exact(all(
                wk.generator_apply(p, lambda i, d=d: Fraction(i) ** d, j)
                == p.kappa * p.c * wk.laplacian_power(lambda i, d=d: Fraction(i) ** d, j, p.N)
                for d in range(2 * p.N + 3) for j in (-1, 0, 2)))
    for N in (1, 2, 3):
        p = wk.WalkParams(N, Fraction(1, 8))

        def conv(p=p):
            ok = True
            for n in range(0, 6):
                law = wk.walk_pmf_closed(p, n)
                ok &= law == wk.walk_pmf_convolution(p, n)
                if n:
                    acc = Fraction(0)
                    for k in range(-p.N * n, p.N * n + 1):
                        acc += law[k]
                        ok &= wk.walk_cdf_closed(p, n, k) == acc
            return _exact(ok)
        cases[f"n_step/N{N}"] = conv
    return cases


def _tail_check(closed: complex, series, z=Z) -> Tuple[bool, float]:
    value, tail = eval_series(series, z)
    excess = abs(closed - float(value)) - float(tail)
    return excess <= 1e-9, max(excess, 0.0)


def _overshoot_cases(seed: int, horizon: int) -> Dict[str, Case]:
    cases: Dict[str, Case] = {}
    for N in (1, 2, 3):
        p = wk.WalkParams(N, Fraction(1, 2 ** (2 * N - 1)) if N > 1 else Fraction(1, 4))
        for k in (-2, 0, 3):
            cases[f"G_k/N{N}/k{k}"] = lambda p=p, k=k: _tail_check(sp.G_k(p, float(Z), k), walk_series(p, k, horizon))
        for b in (1, 2, 3):
            def hplus(p=p, b=b):
                dp = AbsorbingDP(p, upper=b, horizon=horizon)
                res = [_tail_check(ov.H_plus(p, b, ell, float(Z)), first_passage_series(dp, ell))
                       for ell in range(b, b + p.N)]
                return all(r[0] for r in res), max(r[1] for r in res)
            cases[f"H_plus/N{N}/b{b}"] = hplus
            cases[f"law_S_b/N{N}/b{b}"] = lambda N=N, b=b: _exact(ov.dist_S_b_plus(N, b).measure().total_mass() == 1)
            cases[f"moments_S_b/N{N}/b{b}"] = lambda N=N, b=b: _exact(
                all(ov.moments_S_b_plus(N, b, n) == 0 for n in range(1, N))
                and ov.moments_S_b_plus(N, b, N) == -cb.falling_factorial(-b, N))
    cases["markov_b/N2/b1"] = lambda: (lambda m: (m.ok, abs(float(m.gf_lhs) - m.gf_rhs)))(
        ov.markov_check(wk.WalkParams(2, Fraction(1, 8)), 1, 0, 2, lambda i: Fraction(i * i), Z, horizon))
    return cases


def _exit_cases(seed: int, horizon: int) -> Dict[str, Case]:
    cases: Dict[str, Case] = {}
    for N in (1, 2):
        p = wk.WalkParams(N, Fraction(1, 8) if N == 2 else Fraction(1, 4))
        for a in (-1, -2):
            for b in (1, 2):
                def hab(p=p, a=a, b=b):
                    dp = AbsorbingDP(p, lower=a, upper=b, horizon=horizon)
                    H = ex.exit_H_all(p, a, b, float(Z))
                    res = [_tail_check(h, first_passage_series(dp, ell)) for ell, h in H.items()]
                    return all(r[0] for r in res), max(r[1] for r in res)
                cases[f"H_ab/N{N}/a{a}/b{b}"] = hab
    for N in (1, 2, 3):
        for a in (-3, -1):
            for b in (1, 3):
                def law(N=N, a=a, b=b):
                    d, u = ex.ruin_probs(N, a, b)
                    ok = d + u == 1
                    ok &= all(ex.moments_S_ab(N, a, b, n) == 0 for n in range(1, 2 * N))
                    ok &= ex.moments_S_ab(N, a, b, 2 * N) == ex.moment_2N_closed(N, a, b)
                    return _exact(ok)
                cases[f"law_S_ab/N{N}/a{a}/b{b}"] = law

                def bc(N=N, a=a, b=b):
                    P = ex.boundary_polys(N, a, b)
                    ok = True
                    for j in range(N):
                        fm = lambda x, j=j: P.minus(j, x)
                        fp = lambda x, j=j: P.plus(j, x)
                        for k in range(N):
                            ok &= ov.backward_diff(fm, a, k) == (1 if j == k else 0)
                            ok &= ov.forward_diff(fm, b, k) == 0
                            ok &= ov.forward_diff(fp, b, k) == (1 if j == k else 0)
                            ok &= ov.backward_diff(fp, a, k) == 0
                    return _exact(ok)
                cases[f"boundary_polys/N{N}/a{a}/b{b}"] = bc
    rng = random.Random(seed)
    for N in (1, 2):
        for a, b in ((-2, 2), (-1, 3)):
            phi = {e: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for e in ex.exit_set(N, a, b)}
            cases[f"lauricella/N{N}/a{a}/b{b}"] = lambda N=N, a=a, b=b, phi=phi: _exact(
                ex.lauricella_solve(N, a, b, phi).satisfied(phi))
    cases["markov_ab/N2/a-1/b1"] = lambda: (lambda m: (m.ok, abs(float(m.gf_lhs) - m.gf_rhs)))(
        ex.markov_ab_check(wk.WalkParams(2, Fraction(1, 8)), -1, 1, 0, 2, lambda i: Fraction(i * i), Z, horizon))
    return cases


def _appendix_cases(seed: int, horizon: int) -> Dict[str, Case]:
    cases: Dict[str, Case] = {}
    cases["sum_identity"] = lambda: _exact(all(
        cb.appendixB_lhs(al, be, n) == cb.appendixB_rhs(al, be, n)
        for al in range(1, 13) for be in range(1, 13) for n in range(1, 13)))
    for N in range(1, 6):
        def inv(N=N):
            ok = True
            for alpha in range(N + 1, N + 4):
                L, U, Linv = cb.appendixC_factors(N, alpha)
                A = cb.appendixC_A(N, alpha)
                ok &= A @ U == L and L @ Linv == cb.RationalMatrix.identity(N)
                for beta in range(N, alpha):
                    ok &= cb.gauss_solve(A, cb.appendixC_B(N, beta)) == cb.appendixC_closed_form(N, alpha, beta)
            return _exact(ok)
        cases[f"matrix_inverse/N{N}"] = inv
    rng = random.Random(seed)
    for p in range(1, 4):
        for q in range(0, 4):
            for r in range(0, 4):
                nodes = rng.sample(range(-20, 21), p + r)
                u = tuple(Fraction(x, rng.randint(1, 4)) for x in nodes)
                if len(set(u)) < p + r:
                    continue
                sys0 = ex.LacunarySystem(p, q, r, u)
                x = {e: Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for e in sys0.powers}
                sys1 = ex.LacunarySystem(p, q, r, u, tuple(sys0.apply(x)))

                def lac(sys0=sys0, sys1=sys1, x=x):
                    return _exact(ex.lacunary_det(sys0) == ex.lacunary_det_direct(sys0)
                                  and ex.lacunary_solve(sys1) == x)
                cases[f"lacunary/p{p}/q{q}/r{r}"] = lac
    return cases


def _trend(devs: List[float]) -> Tuple[bool, float]:
    return all(x > y for x, y in zip(devs, devs[1:])), devs[-1]


def _continuum_cases(seed: int, horizon: int) -> Dict[str, Case]:
    cases: Dict[str, Case] = {}
    eps = (0.1, 0.05, 0.025)
    grid = [(a, b) for a in (-2.0, -1.0, -0.3) for b in (0.5, 1.0, 3.0)]
    for N in (1, 2, 3):
        def isum(N=N):
            err = max(abs(sum(x[0] for x in ct.bold_I_coeffs(N, a, b)) - 1) for a, b in grid)
            return err <= 1e-12, err
        cases[f"bold_I_mass/N{N}"] = isum
        cases[f"fourier_X_b/N{N}"] = lambda N=N: _exact(ct.fourier_X_b_plus(N, 1.7, 0.0) == 1)
        p = wk.WalkParams(N, Fraction(1, 2 ** (2 * N - 1)))
        cases[f"trend_tau_b/N{N}"] = lambda N=N, p=p: _trend(ct.deviations(
            ct.lf_tau_b(N, float(p.c), 1.0, 1.0, 0.8), [ct.tau_b_discrete(p, 1.0, 1.0, 0.8, e) for e in eps]))
    for N in (2, 3):
        cases[f"trend_bold_I/N{N}"] = lambda N=N: _trend(ct.deviations(
            ct.bold_I_coeffs(N, -1.0, 1.5), [ct.bold_I_discrete(N, -1.0, 1.5, e) for e in eps]))

    def brownian():
        import math
        c, lam, a, b, mu = 0.25, 2.0, -1.0, 2.0, 0.0
        y = math.sqrt(lam / c)
        errs = [abs(ct.lf_tau_b(1, c, b, lam, mu) - math.exp(-y * b)),
                abs(ct.lambda_potential(1, c, lam, 0.7) - math.exp(-y * 0.7) / (2 * math.sqrt(c * lam))),
                abs(ct.lf_tau_ab(1, c, a, b, lam, mu) - (math.sinh(y * b) + math.sinh(-y * a)) / math.sinh(y * (b - a)))]
        return max(errs) <= 1e-12, max(errs)
    cases["brownian_N1"] = brownian
    return cases


SUITES = {
    "walk": _walk_cases,
    "overshoot": _overshoot_cases,
    "exit": _exit_cases,
    "appendix": _appendix_cases,
    "continuum": _continuum_cases,
}


def run_suites(suite: str = "all", seed: int = 0, horizon: int = 40) -> List[dict]:
    names = list(SUITES) if suite == "all" else [suite]
    report = []
    for name in names:
        for case, fn in SUITES[name](seed, horizon).items():
            try:
                ok, err = fn()
                status = "pass" if ok else "fail"
            except Exception as e:  # a crashing case is reported, not raised
                status, err = f"error: {type(e).__name__}: {e}", float("nan")
            report.append({"suite": name, "case": f"{name}/{case}", "status": status,
                           "max_error": float(f"{err:.3e}") if err == err else None})
    report.sort(key=lambda r: r["case"])
    return report

"""Command-line front end.

Exit codes: 0 on success, 1 when an argument violates a precondition,
2 when a verification suite reports a failing case.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import continuum, exit as exit_mod, overshoot, spectral, walk
from .errors import ArtifactError, DomainError

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class OutputSpec:
    format: str = "json"
    precision: int = 12
    path: Optional[str] = None

    def __post_init__(self) -> None:
        if self.format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.format!r}")
        if not 1 <= self.precision <= 17:
            raise DomainError(f"precision must lie in [1, 17], got {self.precision}")


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or an integer; decimals are rejected."""
    if not _RATIONAL.match(text):
        raise DomainError(f"expected an exact rational p/q, got {text!r}")
    try:
        return Fraction(text.replace(" ", ""))
    except ZeroDivisionError:
        raise DomainError(f"zero denominator in {text!r}") from None


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"expected re,im, got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def rational_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _round(x: float, prec: int) -> float:
    return float(f"{x:.{prec}g}")


def _cx(z: complex, prec: int) -> List[float]:
    z = complex(z)
    return [_round(z.real, prec), _round(z.imag, prec)]


# -- rendering ----------------------------------------------------------------

def _emit(out: OutputSpec, json_obj, csv_rows: Optional[Tuple[Sequence[str], List[Sequence]]] = None) -> None:
    if out.format == "csv" and csv_rows is not None:
        header, rows = csv_rows
        text = ",".join(header) + "\n" + "".join(",".join(str(v) for v in r) + "\n" for r in rows)
    else:
        text = json.dumps(json_obj, separators=(",", ":")) + "\n"
    if out.path:
        with open(out.path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rational_table(pairs, key: str = "k"):
    pairs = list(pairs)
    js = [{key: k, "value": rational_str(v)} for k, v in pairs]
    rows = [(k, Fraction(v).numerator, Fraction(v).denominator) for k, v in pairs]
    return js, ([key, "numerator", "denominator"], rows)


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("lam", "lambda") for m in missing))


def _params(args) -> walk.WalkParams:
    _need(args, "N", "c")
    return walk.WalkParams(args.N, parse_rational(args.c))


# -- subcommands --------------------------------------------------------------

def cmd_pmf(args, out: OutputSpec) -> int:
    _need(args, "n")
    law = walk.walk_pmf_closed(_params(args), args.n)
    _emit(out, *_rational_table(law.items()))
    return 0


def cmd_cdf(args, out: OutputSpec) -> int:
    _need(args, "n")
    p = _params(args)
    if args.n == 0:
        pairs = [(0, Fraction(1))]
    else:
        pairs = [(k, walk.walk_cdf_closed(p, args.n, k)) for k in range(-p.N * args.n, p.N * args.n + 1)]
    _emit(out, *_rational_table(pairs))
    return 0


def cmd_roots(args, out: OutputSpec) -> int:
    _need(args, "z")
    rs = spectral.roots(_params(args), args.z)
    pr = out.precision
    js = {"z": args.z, "w": _round(rs.w, pr), "u": [_cx(x, pr) for x in rs.u], "v": [_cx(x, pr) for x in rs.v]}
    rows = [(j + 1, *_cx(u, pr), *_cx(v, pr)) for j, (u, v) in enumerate(zip(rs.u, rs.v))]
    _emit(out, js, (["j", "u_re", "u_im", "v_re", "v_im"], rows))
    return 0


def cmd_genfun(args, out: OutputSpec) -> int:
    _need(args, "z")
    p = _params(args)
    if args.ell is not None:
        val = spectral.G_k(p, args.z, args.ell)
        label = {"k": args.ell}
    else:
        _need(args, "zeta")
        zeta = parse_complex(args.zeta)
        val = spectral.G_double(p, zeta, args.z)
        label = {"zeta": _cx(zeta, out.precision)}
    pr = out.precision
    _emit(out, {**label, "z": args.z, "value": _cx(val, pr)}, (["re", "im"], [_cx(val, pr)]))
    return 0


def cmd_overshoot(args, out: OutputSpec) -> int:
    _need(args, "N", "b")
    if args.z is None:
        law = overshoot.dist_S_b_plus(args.N, args.b)
        _emit(out, *_rational_table(law.measure().items(), "ell"))
        return 0
    p = _params(args)
    vals = overshoot.H_plus_newton(p, args.b, args.z)
    pr = out.precision
    _emit(out, [{"ell": k, "value": _cx(v, pr)} for k, v in sorted(vals.items())],
          (["ell", "re", "im"], [(k, *_cx(v, pr)) for k, v in sorted(vals.items())]))
    return 0


def cmd_exit(args, out: OutputSpec) -> int:
    _need(args, "N", "a", "b")
    if args.z is None:
        law = exit_mod.dist_S_ab(args.N, args.a, args.b)
        _emit(out, *_rational_table(law.measure().items(), "ell"))
        return 0
    vals = exit_mod.exit_H_all(_params(args), args.a, args.b, args.z)
    pr = out.precision
    _emit(out, [{"ell": k, "value": _cx(v, pr)} for k, v in sorted(vals.items())],
          (["ell", "re", "im"], [(k, *_cx(v, pr)) for k, v in sorted(vals.items())]))
    return 0


def cmd_ruin(args, out: OutputSpec) -> int:
    _need(args, "N", "a", "b")
    down, up = exit_mod.ruin_probs(args.N, args.a, args.b)
    js = {"p_down": rational_str(down), "p_up": rational_str(up)}
    rows = [("p_down", down.numerator, down.denominator), ("p_up", up.numerator, up.denominator)]
    _emit(out, js, (["name", "numerator", "denominator"], rows))
    return 0


def cmd_moments(args, out: OutputSpec) -> int:
    _need(args, "N", "b", "n")
    if args.a is None:
        val = overshoot.moments_S_b_plus(args.N, args.b, args.n)
    else:
        val = exit_mod.moments_S_ab(args.N, args.a, args.b, args.n)
    _emit(out, {"n": args.n, "value": rational_str(val)},
          (["n", "numerator", "denominator"], [(args.n, val.numerator, val.denominator)]))
    return 0


def cmd_lauricella(args, out: OutputSpec) -> int:
    _need(args, "N", "a", "b")
    cells = exit_mod.exit_set(args.N, args.a, args.b)
    if args.phi is not None:
        values = [parse_rational(t) for t in args.phi.split(",")]
        if len(values) != len(cells):
            raise DomainError(f"--phi needs {len(cells)} values for cells {cells}")
    else:
        rng = random.Random(args.seed)
        values = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in cells]
    phi = dict(zip(cells, values))
    sol = exit_mod.lauricella_solve(args.N, args.a, args.b, phi)
    js, rows = _rational_table(sorted(sol.values.items()), "x")
    _emit(out, {"values": js, "satisfied": sol.satisfied(phi)}, rows)
    return 0


def cmd_continuum(args, out: OutputSpec) -> int:
    pr = out.precision
    kind = args.kind
    if kind == "xab":
        _need(args, "N", "a", "b")
        comb = continuum.law_X_ab(args.N, args.a, args.b)
        js = {"anchors": [{"location": x, "coefficients": [_round(c, pr) for c in cs]} for x, cs in comb.anchors]}
        if args.mu is not None:
            js["fourier"] = _cx(continuum.fourier_X_ab(args.N, args.a, args.b, args.mu), pr)
        rows = [(x, j, _round(c, pr)) for x, cs in comb.anchors for j, c in enumerate(cs)]
        _emit(out, js, (["location", "order", "coefficient"], rows))
        return 0
    _need(args, "N", "c", "lam")
    c = float(parse_rational(args.c))
    if kind == "potential":
        x = 0.0 if args.x is None else float(args.x)
        val = continuum.lambda_potential(args.N, c, args.lam, x)
    elif kind == "taub":
        _need(args, "b")
        val = continuum.lf_tau_b(args.N, c, args.b, args.lam, args.mu or 0.0)
    else:
        _need(args, "a", "b")
        val = continuum.lf_tau_ab(args.N, c, args.a, args.b, args.lam, args.mu or 0.0)
    _emit(out, {"value": _cx(val, pr)}, (["re", "im"], [_cx(val, pr)]))
    return 0


def cmd_verify(args, out: OutputSpec) -> int:
    from .verify import run_suites

    report = run_suites(args.suite, seed=args.seed, horizon=args.horizon)
    rows = [(r["suite"], r["case"], r["status"], r["max_error"]) for r in report]
    _emit(out, report, (["suite", "case", "status", "max_error"], rows))
    failing = [r["case"] for r in report if r["status"] != "pass"]
    if failing:
        sys.stderr.write("failing cases: " + ", ".join(failing) + "\n")
        return 2
    return 0


COMMANDS: Dict[str, Callable] = {
    "pmf": cmd_pmf, "cdf": cmd_cdf, "roots": cmd_roots, "genfun": cmd_genfun, "overshoot": cmd_overshoot,
    "exit": cmd_exit, "ruin": cmd_ruin, "moments": cmd_moments, "lauricella": cmd_lauricella,
    "continuum": cmd_continuum, "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--N", type=int)
    common.add_argument("--c")
    common.add_argument("--a", type=int)
    common.add_argument("--b", type=int)
    common.add_argument("--z", type=float)
    common.add_argument("--zeta")
    common.add_argument("--n", type=int)
    common.add_argument("--ell", type=int)
    common.add_argument("--x", type=int)
    common.add_argument("--horizon", type=int, default=40)
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--precision", type=int, default=12)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output")

    parser = _Parser(prog="artifact", description="Signed random walks driven by the iterated discrete Laplacian.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        if name == "continuum":
            sp = sub.add_parser(name, parents=[common], conflict_handler="resolve")
            sp.add_argument("kind", choices=("potential", "taub", "tauab", "xab"))
            # continuum boundaries and position are real numbers
            sp.add_argument("--a", type=float)
            sp.add_argument("--b", type=float)
            sp.add_argument("--x", type=float)
            sp.add_argument("--lambda", dest="lam", type=float)
            sp.add_argument("--mu", type=float)
        elif name == "verify":
            sp = sub.add_parser(name, parents=[common])
            sp.add_argument("--suite", choices=("walk", "overshoot", "exit", "appendix", "continuum", "all"),
                            default="all")
        else:
            sp = sub.add_parser(name, parents=[common])
            if name == "lauricella":
                sp.add_argument("--phi", help="comma-separated rationals on the exit cells, ascending")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        out = OutputSpec(args.format, args.precision, args.output)
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        sys.stderr.write(parser.format_usage())
        sys.stderr.write(f"error: {e}\n")
        return 1
    except (ArtifactError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


def main() -> None:
    sys.exit(run())

"""Exact rational primitives: binomials, falling factorials, exact linear
algebra and small polynomial helpers.

Every routine here works over :class:`fractions.Fraction` and never touches
floating point, so identities can be checked with ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Iterable, Mapping, Sequence, Union

from .errors import DomainError, MissingValue, SingularMatrix

Rational = Fraction
Number = Union[int, Fraction]
ValueTable = Union[Mapping[int, Number], Callable[[int], Number]]


def as_rational(x: Union[int, Fraction, str]) -> Fraction:
    if isinstance(x, float):
        raise DomainError("floats are not accepted where an exact rational is required")
    return Fraction(x)


def lookup(f: ValueTable, k: int):
    """Value of ``f`` at ``k``; ``f`` may be a mapping or a callable."""
    if callable(f) and not isinstance(f, Mapping):
        return f(k)
    try:
        return f[k]
    except KeyError:
        raise MissingValue(f"value table has no entry at {k}") from None


def sgn_pow(e: int) -> int:
    """(-1)**e as an int, for any integer e."""
    return -1 if e % 2 else 1


def falling_factorial(i: Number, n: int) -> Fraction:
    """i(i-1)...(i-n+1), with the empty product equal to 1."""
    if n < 0:
        raise DomainError("falling factorial order must be non-negative")
    out = Fraction(1)
    for t in range(n):
        out *= i - t
    return out


def rising_factorial(i: Number, n: int) -> Fraction:
    out = Fraction(1)
    for t in range(n):
        out *= i + t
    return out


def binomial(n: int, k: int) -> Fraction:
    """Binomial coefficient, generalized to negative upper index.

    Zero when ``k < 0`` or when ``0 <= n < k``.
    """
    if k < 0:
        return Fraction(0)
    if n >= 0 and k > n:
        return Fraction(0)
    return falling_factorial(n, k) / factorial(k)


def appendixB_lhs(alpha: int, beta: int, n: int) -> Fraction:
    """Alternating sum of (k+alpha)!/(k+beta)! weighted by C(n,k), summed directly."""
    _positive(alpha=alpha, beta=beta, n=n)
    return sum(
        (Fraction((-1) ** k * comb(n, k) * factorial(k + alpha), factorial(k + beta))
         for k in range(n + 1)),
        Fraction(0),
    )


def appendixB_rhs(alpha: int, beta: int, n: int) -> Fraction:
    """Closed form alpha!/(beta+n)! * (beta-alpha+n-1)_n of the same sum."""
    _positive(alpha=alpha, beta=beta, n=n)
    return Fraction(factorial(alpha), factorial(beta + n)) * falling_factorial(beta - alpha + n - 1, n)


def _positive(**kw: int) -> None:
    for name, v in kw.items():
        if v < 1:
            raise DomainError(f"{name} must be a positive integer, got {v}")


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise DomainError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise DomainError("entries length must equal rows*cols")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        return cls(len(rows), len(rows[0]), tuple(x for r in rows for x in r))

    @classmethod
    def column(cls, values: Sequence[Number]) -> "RationalMatrix":
        return cls(len(values), 1, tuple(values))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DomainError("incompatible shapes for product")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                out.append(sum((self[i, k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return RationalMatrix(self.rows, other.cols, tuple(out))


def gauss_solve(A: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Exact solution of A x = b by Gaussian elimination.

    Pivoting takes the first nonzero entry of the current column. ``b`` may
    carry several right-hand-side columns.
    """
    n = A.rows
    if A.cols != n:
        raise DomainError("coefficient matrix must be square")
    if b.rows != n:
        raise DomainError("right-hand side must have as many rows as A")
    m = b.cols
    aug = [A.row(i) + b.row(i) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrix(f"zero pivot column {col}")
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        for r in range(col + 1, n):
            factor = aug[r][col] / p
            if factor:
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    x = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n - 1, -1, -1):
        for j in range(m):
            s = aug[i][n + j] - sum(aug[i][k] * x[k][j] for k in range(i + 1, n))
            x[i][j] = s / aug[i][i]
    sol = RationalMatrix.from_rows(x)
    if A @ sol != b:
        raise SingularMatrix("back-substitution check failed")
    return sol


def det(matrix: Sequence[Sequence]) -> object:
    """Determinant over any field; exact for Fractions, pivoted for complex."""
    a = [list(r) for r in matrix]
    n = len(a)
    if n == 0:
        return 1
    result = 1
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[piv][col] == 0:
            return 0 * a[0][0]
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result = result * p
        for r in range(col + 1, n):
            factor = a[r][col] / p
            if factor:
                for k in range(col, n):
                    a[r][k] -= factor * a[col][k]
    return result


# -- appendix C: structured inversion of A = [C(j+alpha, i+N)] --------------

def appendixC_A(N: int, alpha: int) -> RationalMatrix:
    return RationalMatrix.from_rows(
        [[binomial(j + alpha, i + N) for j in range(N)] for i in range(N)])


def appendixC_B(N: int, beta: int) -> RationalMatrix:
    return RationalMatrix.column([binomial(beta, i + N) for i in range(N)])


def appendixC_closed_form(N: int, alpha: int, beta: int) -> RationalMatrix:
    """Closed form of A^{-1} B (a column of length N)."""
    if N < 1:
        raise DomainError("N must be positive")
    if not alpha > beta >= N:
        raise DomainError(f"need alpha > beta >= N, got alpha={alpha}, beta={beta}, N={N}")
    col = []
    for i in range(N):
        v = (Fraction((-1) ** i * N, i + alpha - beta) * binomial(beta, N)
             * binomial(alpha - beta + N - 1, N) * binomial(N - 1, i) / binomial(i + alpha, N))
        col.append(v)
    return RationalMatrix.column(col)


def appendixC_factors(N: int, alpha: int) -> tuple:
    """Closed-form triangular factors (L, U, L^{-1}) with A U = L."""
    if N < 1:
        raise DomainError("N must be positive")
    if alpha <= N:
        raise DomainError(f"need alpha > N, got alpha={alpha}, N={N}")
    rng = range(N)
    U = [[(-1) ** (i + j) * binomial(j, i) * falling_factorial(j + alpha, N) / falling_factorial(i + alpha, N)
          if i <= j else Fraction(0) for j in rng] for i in rng]
    L = [[binomial(j + alpha, i + N) * falling_factorial(i, j) / falling_factorial(j + alpha - N, j)
          if i >= j else Fraction(0) for j in rng] for i in rng]
    Linv = [[Fraction((-1) ** (i + j) * factorial(j + N), factorial(j) * factorial(i - j))
             * falling_factorial(i + alpha - N, i + 1) / falling_factorial(i + alpha, j + N + 1)
             if i >= j else Fraction(0) for j in rng] for i in rng]
    return (RationalMatrix.from_rows(L), RationalMatrix.from_rows(U), RationalMatrix.from_rows(Linv))


def appendixC_Linv_B(N: int, alpha: int, beta: int) -> RationalMatrix:
    """Closed form of the intermediate product L^{-1} B."""
    if not alpha > beta >= N:
        raise DomainError(f"need alpha > beta >= N, got alpha={alpha}, beta={beta}, N={N}")
    return RationalMatrix.column([
        (-1) ** i * binomial(beta, N) * binomial(i + alpha - beta - 1, alpha - beta - 1) / binomial(i + alpha, N)
        for i in range(N)])


# -- polynomials as ascending coefficient lists ------------------------------

def poly_mul(p: Sequence, q: Sequence) -> list:
    out = [0 * p[0] * q[0]] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_add(p: Sequence, q: Sequence) -> list:
    n = max(len(p), len(q))
    return [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]


def poly_scale(p: Sequence, s) -> list:
    return [s * a for a in p]


def poly_eval(p: Sequence, x):
    acc = 0 * x
    for a in reversed(p):
        acc = acc * x + a
    return acc


def poly_from_roots(roots: Iterable) -> list:
    out = [Fraction(1)]
    for r in roots:
        out = poly_mul(out, [-r, Fraction(1)])
    return out


def poly_compose_affine(p: Sequence, shift, scale) -> list:
    """Coefficients of x -> p(shift + scale*x)."""
    out = [Fraction(0)]
    power = [Fraction(1)]
    for a in p:
        out = poly_add(out, poly_scale(power, a))
        power = poly_mul(power, [Fraction(shift), Fraction(scale)])
    return out


def elementary_symmetric(values: Sequence) -> list:
    """[s_0, s_1, ..., s_m] for the m given values."""
    coeffs = [1]
    for v in values:
        nxt = coeffs + [0]
        for i in range(len(coeffs), 0, -1):
            nxt[i] = nxt[i] + v * coeffs[i - 1]
        coeffs = nxt
    return coeffs

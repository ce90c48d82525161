"""Exact rationals, truncated power series and determinant kernels.

``Rational`` is :class:`fractions.Fraction`, which already keeps its
numerator/denominator pair in lowest terms with a positive denominator.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import ZeroConstantTerm

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: exact mode must never see a binary float.
    """
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """Render as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class SeriesTrunc:
    """Maclaurin coefficients ``c_0..c_K`` of a function, ``K = order``."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a truncated series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    @classmethod
    def constant(cls, c, order):
        return cls((Fraction(c),) + (Fraction(0),) * order)

    @classmethod
    def monomial(cls, degree, order, coeff=1):
        cs = [Fraction(0)] * (order + 1)
        if degree <= order:
            cs[degree] = Fraction(coeff)
        return cls(tuple(cs))

    def truncate(self, order):
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return SeriesTrunc(self.coeffs[: order + 1])

    def evaluate(self, z) -> Fraction:
        """Horner evaluation of the partial sum at ``z``."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc


def series_add(f: SeriesTrunc, g: SeriesTrunc) -> SeriesTrunc:
    k = min(f.order, g.order)
    return SeriesTrunc(tuple(f[i] + g[i] for i in range(k + 1)))


def series_neg(f: SeriesTrunc) -> SeriesTrunc:
    return SeriesTrunc(tuple(-c for c in f.coeffs))


def series_sub(f: SeriesTrunc, g: SeriesTrunc) -> SeriesTrunc:
    return series_add(f, series_neg(g))


def series_scale(f: SeriesTrunc, c) -> SeriesTrunc:
    c = Fraction(c)
    return SeriesTrunc(tuple(c * a for a in f.coeffs))


def series_mul(f: SeriesTrunc, g: SeriesTrunc) -> SeriesTrunc:
    k = min(f.order, g.order)
    out = []
    for i in range(k + 1):
        out.append(sum((f[j] * g[i - j] for j in range(i + 1) if f[j] and g[i - j]), Fraction(0)))
    return SeriesTrunc(tuple(out))


def series_reciprocal(f: SeriesTrunc) -> SeriesTrunc:
    c0 = f[0]
    if c0 == 0:
        raise ZeroConstantTerm("series has zero constant term")
    h = [1 / c0]
    for i in range(1, f.order + 1):
        s = sum((f[j] * h[i - j] for j in range(1, i + 1) if f[j]), Fraction(0))
        h.append(-s / c0)
    return SeriesTrunc(tuple(h))


def series_pow(f: SeriesTrunc, e: int) -> SeriesTrunc:
    if e < 0:
        return series_pow(series_reciprocal(f), -e)
    result = SeriesTrunc.constant(1, f.order)
    base = f
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def as_matrix(rows) -> tuple:
    """Validate a square matrix and return it as a tuple of Fraction tuples."""
    m = tuple(tuple(as_rational(v) for v in row) for row in rows)
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("matrix must be square with n >= 1")
    return m


def _bareiss(a: list) -> int:
    # Fraction-free elimination on an integer matrix, in place.
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * piv - aik * row_k[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def det_exact(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant.

    Each row is cleared of denominators by its own lcm, Bareiss runs on the
    integer matrix, and the product of row scales is divided out at the end.
    """
    rows = as_matrix(m)
    scale = 1
    ints = []
    for row in rows:
        d = lcm(*(v.denominator for v in row))
        scale *= d
        ints.append([v.numerator * (d // v.denominator) for v in row])
    return Fraction(_bareiss(ints), scale)


def det_float(m, precision_hint=None) -> float:
    """Determinant by Gaussian elimination with partial pivoting.

    With ``precision_hint=None`` the elimination runs in binary64. An integer
    hint runs it in mpmath with that many decimal digits and rounds the
    result once at the end.
    """
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("matrix must be square with n >= 1")
    if precision_hint is None:
        a = [[float(v) for v in row] for row in m]
        return float(_det_pivot(a, abs))

    import mpmath

    with mpmath.workdps(int(precision_hint)):
        a = [[_to_mpf(v) for v in row] for row in m]
        return float(_det_pivot(a, abs))


def _to_mpf(v):
    import mpmath

    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def _det_pivot(a, magnitude):
    n = len(a)
    det = 1
    for k in range(n):
        p = max(range(k, n), key=lambda i: magnitude(a[i][k]))
        if a[p][k] == 0:
            return 0 * det
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        piv = a[k][k]
        det = det * piv
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
    return det

"""Schur polynomials evaluated at rational points.

Vandermonde sign convention: ``vandermonde(xs) = det(x_i^(n-j)) =
prod_{i<j} (x_i - x_j)``. The bialternant divides two determinants built on
the same layout, so Schur values do not depend on it.
"""

from fractions import Fraction
from functools import lru_cache
from math import prod

from .errors import RepeatedPoints
from .numerics import as_rational, det_exact
from .partitions import Partition, staircase


def _points(xs) -> tuple:
    return tuple(as_rational(x) for x in xs)


def vandermonde(xs) -> Fraction:
    xs = _points(xs)
    n = len(xs)
    return prod((xs[i] - xs[j] for i in range(n) for j in range(i + 1, n)), start=Fraction(1))


def alternant(exponents, xs) -> Fraction:
    """``det(x_i ** exponents[j])``."""
    xs = _points(xs)
    return det_exact([[x**k for k in exponents] for x in xs])


def bialternant(lam, xs) -> Fraction:
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    return _bialternant(lam, _points(xs))


@lru_cache(maxsize=65536)
def _bialternant(lam: Partition, xs: tuple) -> Fraction:
    n = len(xs)
    if len(lam) > n:
        return Fraction(0)
    v = vandermonde(xs)
    if v == 0:
        raise RepeatedPoints(f"repeated entries in {[str(x) for x in xs]}")
    if not lam.parts:
        return Fraction(1)
    return alternant(staircase(lam, n), xs) / v


def ssyt(lam, n: int):
    """Yield semistandard tableaux of shape ``lam`` with entries ``1..n``.

    Each tableau is a tuple of rows. Cells are filled row by row; a cell must
    be >= its left neighbour and > the cell above it.
    """
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    shape = lam.parts
    if len(shape) > n:
        return
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    grid = [[0] * length for length in shape]

    def fill(idx):
        if idx == len(cells):
            yield tuple(tuple(row) for row in grid)
            return
        r, c = cells[idx]
        lo = 1
        if c > 0:
            lo = grid[r][c - 1]
        if r > 0:
            lo = max(lo, grid[r - 1][c] + 1)
        # rows below need room for strictly larger entries in this column
        below = sum(1 for rr in range(r + 1, len(shape)) if shape[rr] > c)
        for v in range(lo, n - below + 1):
            grid[r][c] = v
            yield from fill(idx + 1)
        grid[r][c] = 0

    yield from fill(0)


def ssyt_schur_oracle(lam, xs) -> Fraction:
    """Schur value as the tableau sum of ``prod x_i^(#entries equal to i)``."""
    xs = _points(xs)
    total = Fraction(0)
    for tab in ssyt(lam, len(xs)):
        term = Fraction(1)
        for row in tab:
            for v in row:
                term *= xs[v - 1]
        total += term
    return total

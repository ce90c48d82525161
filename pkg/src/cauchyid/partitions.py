"""Integer partitions indexed through their staircase exponents.

For a partition ``lam`` padded to ``n`` parts, the staircase exponents are
``k_l = lam_l + n - l`` (1-based ``l``); they form a strictly decreasing
tuple and every such tuple arises from exactly one partition.
"""

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, prod

from .errors import IndexOutOfRange, LengthExceedsN


class Parity(enum.Enum):
    EVEN = "Even"
    ODD = "Odd"
    MIXED = "Mixed"

    def __str__(self):
        return self.value


_TEXT_RE = re.compile(r"^\s*\[\s*(\d+(\s*,\s*\d+)*)?\s*\]\s*$")


@dataclass(frozen=True, order=False)
class Partition:
    parts: tuple = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def padded(self, n) -> tuple:
        if len(self.parts) > n:
            raise LengthExceedsN(len(self.parts), n)
        return self.parts + (0,) * (n - len(self.parts))

    def __str__(self):
        return "[" + ",".join(map(str, self.parts)) + "]"

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Read the bracketed form, e.g. ``"[3,1]"`` or ``"[]"``."""
        if not _TEXT_RE.match(text):
            raise ValueError(f"not a partition: {text!r}")
        body = text.strip()[1:-1].strip()
        return cls(tuple(int(p) for p in body.split(",")) if body else ())

    @classmethod
    def from_staircase(cls, ks) -> "Partition":
        n = len(ks)
        return cls(tuple(k - n + l for l, k in enumerate(ks, start=1)))


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def staircase(lam, n: int) -> tuple:
    lam = _as_partition(lam)
    return tuple(p + n - l for l, p in enumerate(lam.padded(n), start=1))


def _sort_key(lam: Partition, n: int):
    # ascending weight, then descending lexicographic order
    return (lam.weight, tuple(-p for p in lam.padded(n)))


def enumerate_partitions(n: int, k_cap: int):
    """Yield every partition with at most ``n`` parts and all staircase
    exponents ``<= k_cap``, ascending by weight then descending lex.

    There are ``binomial(k_cap + 1, n)`` of them.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if k_cap < n - 1:
        return iter(())
    found = [Partition.from_staircase(ks) for ks in combinations(range(k_cap, -1, -1), n)]
    found.sort(key=lambda lam: _sort_key(lam, n))
    return iter(found)


def staircase_layer(n: int, top: int) -> list:
    """Partitions whose largest staircase exponent is exactly ``top``.

    ``enumerate_partitions(n, K)`` is the disjoint union of the layers
    ``top = n - 1 .. K``.
    """
    if top < n - 1:
        return []
    found = [Partition.from_staircase((top,) + rest)
             for rest in combinations(range(top - 1, -1, -1), n - 1)]
    found.sort(key=lambda lam: _sort_key(lam, n))
    return found


def partitions_of(weight: int, max_parts: int | None = None, max_part: int | None = None):
    """Partitions of ``weight`` in descending lexicographic order."""
    if max_part is None:
        max_part = weight
    if weight == 0:
        yield Partition(())
        return
    if max_parts == 0:
        return
    for first in range(min(weight, max_part), 0, -1):
        rest_parts = None if max_parts is None else max_parts - 1
        for rest in partitions_of(weight - first, rest_parts, first):
            yield Partition((first,) + rest.parts)


def partitions_up_to_weight(max_weight: int, max_parts: int | None = None):
    for w in range(max_weight + 1):
        yield from partitions_of(w, max_parts)


def c_lambda(lam, n: int) -> Fraction:
    return Fraction(prod(factorial(k) for k in staircase(lam, n)))


def p_lambda(lam) -> Fraction:
    return Fraction(prod(_as_partition(lam).parts))


def b_lambda(b, lam, n: int) -> Fraction:
    """Product of polynomial coefficients ``b[k]`` over staircase exponents."""
    ks = staircase(lam, n)
    m = len(b) - 1
    if max(ks) > m:
        raise IndexOutOfRange(f"staircase exponent {max(ks)} exceeds polynomial degree {m}")
    return prod((Fraction(b[k]) for k in ks), start=Fraction(1))


def parity_class(lam, n: int) -> Parity:
    ks = staircase(lam, n)
    if all(k % 2 == 0 for k in ks):
        return Parity.EVEN
    if all(k % 2 == 1 for k in ks):
        return Parity.ODD
    return Parity.MIXED

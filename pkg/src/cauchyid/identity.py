"""Collocation-matrix determinants against Schur partition sums.

For a generating function ``g`` with Maclaurin coefficients ``c_k`` and
distinct points ``a``, ``x``::

    sum_lam  G_lam / C_lam * s_lam(a) * s_lam(x)
        = det(g(a_j x_i)) / (V(x) * V(a))

Replacing ``g`` by its degree-``m`` Taylor polynomial makes the sum finite
(partitions with every staircase exponent ``<= m``), and both sides can be
compared as exact rationals. That exact-truncated mode is the default. The
analytic mode evaluates ``g`` itself and watches the partial sums converge.
"""

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from .errors import NotStrictlyDecreasing, OutsideRadius, RepeatedPoints, SingularEntry, UnsupportedAnalyticEval
from .genfun import GenFun, as_genfun, catalog, eval_analytic, g_lambda, parse_genfun
from .numerics import as_rational, det_exact, det_float, format_rational
from .partitions import (
    Partition,
    Parity,
    c_lambda,
    enumerate_partitions,
    p_lambda,
    parity_class,
    staircase,
    staircase_layer,
)
from .schur import bialternant, vandermonde


class Verdict(str, enum.Enum):
    EXACT_MATCH = "ExactMatch"
    WITHIN_TOLERANCE = "WithinTolerance"
    FAIL = "Fail"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class EvalConfig:
    """Evaluation points plus the mode settings.

    ``mode`` is ``"exact"`` (uses ``order``) or ``"analytic"`` (uses ``tol``
    and ``k_max``).
    """

    a: tuple
    x: tuple
    mode: str = "exact"
    order: int | None = None
    tol: float = 1e-10
    k_max: int = 40

    def __post_init__(self):
        a = tuple(as_rational(v) for v in self.a)
        x = tuple(as_rational(v) for v in self.x)
        if len(a) != len(x) or not a:
            raise ValueError(f"a and x must have the same positive length, got {len(a)} and {len(x)}")
        for name, pts in (("a", a), ("x", x)):
            if len(set(pts)) != len(pts):
                raise RepeatedPoints(f"entries of {name} must be pairwise distinct")
        if self.mode not in ("exact", "analytic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def a_max(self) -> Fraction:
        return max(abs(v) for v in self.a)

    def swapped(self) -> "EvalConfig":
        return EvalConfig(self.x, self.a, self.mode, self.order, self.tol, self.k_max)

    def permuted(self, perm_a=None, perm_x=None) -> "EvalConfig":
        a = self.a if perm_a is None else tuple(self.a[i] for i in perm_a)
        x = self.x if perm_x is None else tuple(self.x[i] for i in perm_x)
        return EvalConfig(a, x, self.mode, self.order, self.tol, self.k_max)


@dataclass(frozen=True)
class Term:
    lam: Partition
    staircase: tuple
    G: Fraction
    C: Fraction
    s_a: Fraction
    s_x: Fraction
    term: Fraction

    def to_dict(self):
        return {
            "lambda": str(self.lam),
            "staircase": list(self.staircase),
            "G": format_rational(self.G),
            "C": format_rational(self.C),
            "s_a": format_rational(self.s_a),
            "s_x": format_rational(self.s_x),
            "term": format_rational(self.term),
        }


def _render(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    return v


@dataclass(frozen=True)
class IdentityReport:
    mode: str
    order: int
    partition_count: int
    lhs: object
    rhs: object
    residual: object
    verdict: Verdict
    terms: tuple | None = None
    trace: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.verdict is not Verdict.FAIL

    def to_dict(self, log_terms=False):
        out = {
            "mode": self.mode,
            "order": self.order,
            "partition_count": self.partition_count,
            "lhs": _render(self.lhs),
            "rhs": _render(self.rhs),
            "residual": _render(self.residual),
            "verdict": str(self.verdict),
        }
        if log_terms and self.terms is not None:
            out["terms"] = [t.to_dict() for t in self.terms]
        if self.trace is not None:
            out["trace"] = [{"k_cap": k, "residual": r} for k, r in self.trace]
        return out


@dataclass(frozen=True)
class AuditRecord:
    example: str
    lam: Partition
    n: int
    claimed: Fraction
    computed: Fraction
    match: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "match", self.claimed == self.computed)

    def to_dict(self):
        return {
            "example": self.example,
            "n": self.n,
            "lambda": str(self.lam),
            "claimed": format_rational(self.claimed),
            "computed": format_rational(self.computed),
            "match": self.match,
        }


# --- exact-truncated mode ------------------------------------------------------


def collocation_matrix_truncated(g, cfg: EvalConfig, m: int) -> tuple:
    """Entry ``(i, j)`` is the degree-``m`` Taylor polynomial of g at ``a_j x_i``."""
    poly = as_genfun(g).series(m)
    return tuple(tuple(poly.evaluate(aj * xi) for aj in cfg.a) for xi in cfg.x)


def _vandermonde_product(cfg):
    denom = vandermonde(cfg.x) * vandermonde(cfg.a)
    if denom == 0:
        raise RepeatedPoints("evaluation points must be pairwise distinct")
    return denom


def rhs_truncated(g, cfg: EvalConfig, m: int) -> Fraction:
    denom = _vandermonde_product(cfg)
    return det_exact(collocation_matrix_truncated(g, cfg, m)) / denom


def partition_term(g: GenFun, cfg: EvalConfig, lam: Partition, full=False) -> Term:
    """One summand ``G/C * s(a) * s(x)``.

    Schur values are skipped (left as 0) when ``G`` vanishes unless ``full``.
    """
    n = cfg.n
    G = g_lambda(g, lam, n)
    C = c_lambda(lam, n)
    ks = staircase(lam, n)
    if G == 0 and not full:
        zero = Fraction(0)
        return Term(lam, ks, G, C, zero, zero, zero)
    s_a = bialternant(lam, cfg.a)
    s_x = bialternant(lam, cfg.x)
    return Term(lam, ks, G, C, s_a, s_x, G / C * s_a * s_x)


def lhs_terms(g, cfg: EvalConfig, k_cap: int, threads=None, full=False) -> list:
    """Terms of the partition sum in canonical enumeration order."""
    g = as_genfun(g)
    _vandermonde_product(cfg)
    lams = list(enumerate_partitions(cfg.n, k_cap))
    if threads and threads > 1 and len(lams) > 1:
        g.coeff(k_cap)  # extend once up front
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda lam: partition_term(g, cfg, lam, full), lams))
    return [partition_term(g, cfg, lam, full) for lam in lams]


def lhs_partial(g, cfg: EvalConfig, k_cap: int, threads=None) -> Fraction:
    return sum((t.term for t in lhs_terms(g, cfg, k_cap, threads)), Fraction(0))


def layer_sum(g, cfg: EvalConfig, top: int) -> Fraction:
    """Contribution of partitions whose largest staircase exponent is ``top``."""
    g = as_genfun(g)
    return sum((partition_term(g, cfg, lam).term for lam in staircase_layer(cfg.n, top)), Fraction(0))


def verify_truncated(g, cfg: EvalConfig, m: int, threads=None, log_terms=False) -> IdentityReport:
    g = as_genfun(g)
    terms = lhs_terms(g, cfg, m, threads, full=log_terms)
    lhs = sum((t.term for t in terms), Fraction(0))
    rhs = rhs_truncated(g, cfg, m)
    residual = lhs - rhs
    verdict = Verdict.EXACT_MATCH if residual == 0 else Verdict.FAIL
    return IdentityReport("exact", m, len(terms), lhs, rhs, residual, verdict,
                          terms=tuple(terms) if log_terms else None)


# --- analytic mode ------------------------------------------------------------

_ENTRY_EPS = Fraction(1, 10**24)


def check_radius(g: GenFun, cfg: EvalConfig):
    if g.radius_status == "unknown":
        raise UnsupportedAnalyticEval(f"radius of convergence of {g.source!r} is unknown")
    a_max = cfg.a_max
    if g.radius == math.inf or a_max == 0:
        return
    for xk in cfg.x:
        if abs(xk) * a_max >= g.radius:
            raise OutsideRadius(f"x = {xk} lies outside (-R/a_max, R/a_max) with R = {g.radius}, a_max = {a_max}")


def rhs_analytic(g, cfg: EvalConfig, precision_hint=None) -> float:
    g = as_genfun(g)
    check_radius(g, cfg)
    denom = _vandermonde_product(cfg)
    entries = [[eval_analytic(g, aj * xi, _ENTRY_EPS) for aj in cfg.a] for xi in cfg.x]
    return det_float(entries, precision_hint) / float(denom)


def verify_analytic(g, cfg: EvalConfig, log_terms=False) -> IdentityReport:
    """Accumulate staircase layers until the partial sum is within ``cfg.tol``.

    Accumulation is sequential and exact; the residual at each cap is taken
    in floating point against the floating determinant ratio.
    """
    g = as_genfun(g)
    rhs = rhs_analytic(g, cfg)
    n = cfg.n
    lhs = Fraction(0)
    count = 0
    trace = []
    terms = []
    verdict = Verdict.FAIL
    k_cap = n - 1
    for k_cap in range(n - 1, cfg.k_max + 1):
        for lam in staircase_layer(n, k_cap):
            t = partition_term(g, cfg, lam, full=log_terms)
            lhs += t.term
            count += 1
            if log_terms:
                terms.append(t)
        residual = abs(float(lhs) - rhs)
        trace.append((k_cap, residual))
        if residual <= cfg.tol:
            verdict = Verdict.WITHIN_TOLERANCE
            break
    return IdentityReport("analytic", k_cap, count, float(lhs), rhs, trace[-1][1] if trace else None,
                          verdict, terms=tuple(terms) if log_terms else None, trace=tuple(trace))


# --- special-case checks --------------------------------------------------------


def cauchy_product_check(a, x) -> tuple:
    """``(det(1/(1 - a_j x_i)) / (V(x) V(a)), prod 1/(1 - a_j x_i))``."""
    a = tuple(as_rational(v) for v in a)
    x = tuple(as_rational(v) for v in x)
    for aj in a:
        for xi in x:
            if aj * xi == 1:
                raise SingularEntry(f"a_j * x_i = 1 for a_j = {aj}, x_i = {xi}")
    denom = vandermonde(x) * vandermonde(a)
    if denom == 0:
        raise RepeatedPoints("evaluation points must be pairwise distinct")
    det = det_exact([[1 / (1 - aj * xi) for aj in a] for xi in x])
    product = prod((1 / (1 - aj * xi) for aj in a for xi in x), start=Fraction(1))
    return det / denom, product


def vandermonde_square_check(x) -> tuple:
    """``(V(x_1^2, ..., x_n^2), V(x) * prod_{i<j} (x_i + x_j))``."""
    x = tuple(as_rational(v) for v in x)
    if len(set(x)) != len(x):
        raise RepeatedPoints("entries of x must be pairwise distinct")
    n = len(x)
    sums = prod((x[i] + x[j] for i in range(n) for j in range(i + 1, n)), start=Fraction(1))
    return vandermonde([v * v for v in x]), vandermonde(x) * sums


def single_schur_check(mu, cfg: EvalConfig) -> IdentityReport:
    """``g = sum x^mu_l`` collapses the sum to one product of Schur values."""
    mu = tuple(int(v) for v in mu)
    n = cfg.n
    if len(mu) != n:
        raise ValueError(f"mu has {len(mu)} entries but n = {n}")
    if any(mu[i] <= mu[i + 1] for i in range(n - 1)) or mu[-1] < 0:
        raise NotStrictlyDecreasing(f"mu must be strictly decreasing and nonnegative: {mu}")

    g = parse_genfun(" + ".join(f"x^{m}" for m in mu))
    lam = Partition.from_staircase(mu)
    rhs = rhs_truncated(g, cfg, mu[0])
    lhs = bialternant(lam, cfg.a) * bialternant(lam, cfg.x)
    residual = lhs - rhs
    verdict = Verdict.EXACT_MATCH if residual == 0 else Verdict.FAIL
    return IdentityReport("exact", mu[0], 1, lhs, rhs, residual, verdict)


def symmetry_check(g, cfg: EvalConfig, permutations, m=None) -> bool:
    """Both sides unchanged under each permutation of a, of x, and a <-> x."""
    g = as_genfun(g)
    if m is None:
        m = cfg.order if cfg.order is not None else 2 * cfg.n
    base = (lhs_partial(g, cfg, m), rhs_truncated(g, cfg, m))
    variants = [cfg.swapped()]
    for perm in permutations:
        variants.append(cfg.permuted(perm_a=perm))
        variants.append(cfg.permuted(perm_x=perm))
    return all((lhs_partial(g, v, m), rhs_truncated(g, v, m)) == base for v in variants)


# --- audit ----------------------------------------------------------------------

AUDIT_EXAMPLES = ("geomsq", "geomsqneg", "exp", "sinh", "sin", "log")


def _sign(exponent_num: int, lam: Partition) -> int:
    # exponent_num / 4 is an integer on the relevant parity class
    q, r = divmod(exponent_num, 4)
    if r:
        raise ValueError(f"sign exponent {exponent_num}/4 is not an integer for {lam}")
    return -1 if q % 2 else 1


def claimed_coefficient(example: str, lam: Partition, n: int) -> Fraction:
    """The closed-form ``G_lam`` each worked example states."""
    cls = parity_class(lam, n)
    w = lam.weight
    if example == "geomsq":
        return c_lambda(lam, n) if cls is Parity.EVEN else Fraction(0)
    if example == "geomsqneg":
        if cls is not Parity.EVEN:
            return Fraction(0)
        return _sign(2 * w - n * (n - 1), lam) * c_lambda(lam, n)
    if example == "exp":
        return Fraction(1)
    if example == "sinh":
        return Fraction(1) if cls is Parity.ODD else Fraction(0)
    if example == "sin":
        if cls is not Parity.ODD:
            return Fraction(0)
        return Fraction(_sign(2 * w + n * (n + 1), lam))
    if example == "log":
        return c_lambda(lam, n) / p_lambda(lam)
    raise KeyError(f"unknown example {example!r}; expected one of {', '.join(AUDIT_EXAMPLES)}")


def audit_example(example: str, n: int, lam_set) -> list:
    """Compare each claimed ``G_lam`` with the derivative product; never reconciles."""
    if example not in AUDIT_EXAMPLES:
        raise KeyError(f"unknown example {example!r}; expected one of {', '.join(AUDIT_EXAMPLES)}")
    g = catalog(example)
    records = []
    for lam in lam_set:
        lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
        records.append(AuditRecord(example, lam, n, claimed_coefficient(example, lam, n), g_lambda(g, lam, n)))
    return records

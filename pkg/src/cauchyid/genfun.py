"""Generating functions: catalog entries and parsed expressions.

Grammar accepted by :func:`parse_genfun`::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' integer)? | '-' factor
    atom   := rational | 'x' | '(' expr ')' | func '(' expr ')'
    func   := 'exp' | 'sin' | 'sinh' | 'ln'

``exp``, ``sin`` and ``sinh`` only take polynomial arguments with zero
constant term; ``ln`` only takes polynomial arguments with constant term 1.
"""

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, isqrt

from .errors import (
    DivisionByZeroSeries,
    ExpressionSyntaxError,
    OutsideRadius,
    UnsupportedAnalyticEval,
    UnsupportedComposition,
    ZeroConstantTerm,
)
from .numerics import (
    SeriesTrunc,
    as_rational,
    series_add,
    series_mul,
    series_neg,
    series_pow,
    series_reciprocal,
    series_sub,
)
from .partitions import Parity, staircase

INF = math.inf
FUNCS = ("exp", "sinh", "sin", "ln")


# --- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Call:
    func: str
    arg: object


# --- parser ----------------------------------------------------------------


def _tokenize(text):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word == "x":
                toks.append(("x", word, i))
            elif word in FUNCS:
                toks.append(("func", word, i))
            else:
                raise ExpressionSyntaxError(text, i, ["integer", "'x'", "'('", *map(repr, FUNCS)])
            i = j
        elif ch in "+-*/^()":
            toks.append((ch, ch, i))
            i += 1
        else:
            raise ExpressionSyntaxError(text, i, ["integer", "'x'", "operator", "'('", "')'"])
    toks.append(("end", "", len(text)))
    return toks


_ATOM_START = ("integer", "'x'", "'('", "'-'", *(repr(f) for f in FUNCS))


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, expected):
        raise ExpressionSyntaxError(self.text, self.peek()[2], expected)

    def expect(self, kind, expected_after=()):
        if self.peek()[0] != kind:
            self.fail([repr(kind), *expected_after])
        return self.take()

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail(["end of input", "'+'", "'-'", "'*'", "'/'"])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.take()[0]
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.peek()[0] == "-":
            self.take()
            return Neg(self.factor())
        node = self.atom()
        if self.peek()[0] == "^":
            self.take()
            if self.peek()[0] != "int":
                self.fail(["integer"])
            node = Pow(node, int(self.take()[1]))
        return node

    def atom(self):
        kind, val, _ = self.peek()
        if kind == "int":
            self.take()
            return Num(Fraction(int(val)))
        if kind == "x":
            self.take()
            return Var()
        if kind == "(":
            self.take()
            node = self.expr()
            self.expect(")", ("'+'", "'-'", "'*'", "'/'"))
            return node
        if kind == "func":
            self.take()
            self.expect("(")
            arg = self.expr()
            self.expect(")", ("'+'", "'-'", "'*'", "'/'"))
            return Call(val, arg)
        self.fail(_ATOM_START)


def parse_expr(text: str):
    """Parse ``text`` into an AST without checking composition rules."""
    return _Parser(text).parse()


# --- exact polynomial view ---------------------------------------------------


def _poly_trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _poly_trim(out)


def polynomial_coeffs(node):
    """Exact coefficient list if ``node`` is a polynomial in x, else None.

    Division is allowed only by a nonzero constant subexpression.
    """
    if isinstance(node, Num):
        return [node.value]
    if isinstance(node, Var):
        return [Fraction(0), Fraction(1)]
    if isinstance(node, Neg):
        p = polynomial_coeffs(node.arg)
        return None if p is None else [-c for c in p]
    if isinstance(node, Pow):
        p = polynomial_coeffs(node.base)
        if p is None:
            return None
        out = [Fraction(1)]
        for _ in range(node.exp):
            out = _poly_mul(out, p)
        return out
    if isinstance(node, BinOp):
        p = polynomial_coeffs(node.left)
        q = polynomial_coeffs(node.right)
        if p is None or q is None:
            return None
        if node.op in "+-":
            sign = 1 if node.op == "+" else -1
            size = max(len(p), len(q))
            p = p + [Fraction(0)] * (size - len(p))
            q = q + [Fraction(0)] * (size - len(q))
            return _poly_trim([a + sign * b for a, b in zip(p, q)])
        if node.op == "*":
            return _poly_mul(p, q)
        if len(q) == 1 and q[0] != 0:
            return [c / q[0] for c in p]
        return None
    return None


# --- series evaluation -------------------------------------------------------


def _series_exp(f: SeriesTrunc) -> SeriesTrunc:
    h = [Fraction(1)]
    for k in range(1, f.order + 1):
        h.append(sum((j * f[j] * h[k - j] for j in range(1, k + 1) if f[j]), Fraction(0)) / k)
    return SeriesTrunc(tuple(h))


def _series_sin_cos(f: SeriesTrunc, hyperbolic: bool):
    s = [Fraction(0)]
    c = [Fraction(1)]
    sign = 1 if hyperbolic else -1
    for k in range(1, f.order + 1):
        s.append(sum((j * f[j] * c[k - j] for j in range(1, k + 1) if f[j]), Fraction(0)) / k)
        c.append(sign * sum((j * f[j] * s[k - j] for j in range(1, k + 1) if f[j]), Fraction(0)) / k)
    return SeriesTrunc(tuple(s)), SeriesTrunc(tuple(c))


def _series_log(u: SeriesTrunc) -> SeriesTrunc:
    # log u = integral of u'/u, with u_0 = 1
    if u.order == 0:
        return SeriesTrunc((Fraction(0),))
    du = SeriesTrunc(tuple(k * u[k] for k in range(1, u.order + 1)))
    q = series_mul(du, series_reciprocal(u.truncate(u.order - 1)))
    return SeriesTrunc((Fraction(0),) + tuple(q[k - 1] / k for k in range(1, u.order + 1)))


def check_composition(node):
    """Raise UnsupportedComposition if any function argument breaks the rules."""
    if isinstance(node, Call):
        p = polynomial_coeffs(node.arg)
        if p is None:
            raise UnsupportedComposition(f"{node.func} needs a polynomial argument")
        if node.func == "ln":
            if p[0] != 1:
                raise UnsupportedComposition("ln needs an argument of the form 1 + p(x) with p(0) = 0")
        elif p[0] != 0:
            raise UnsupportedComposition(f"{node.func} needs a polynomial argument vanishing at 0")
        return
    for child in _children(node):
        check_composition(child)


def _children(node):
    if isinstance(node, (Neg, Call)):
        return (node.arg,)
    if isinstance(node, BinOp):
        return (node.left, node.right)
    if isinstance(node, Pow):
        return (node.base,)
    return ()


def ast_series(node, order: int) -> SeriesTrunc:
    """Maclaurin coefficients ``c_0..c_order`` of the expression."""
    if isinstance(node, Num):
        return SeriesTrunc.constant(node.value, order)
    if isinstance(node, Var):
        return SeriesTrunc.monomial(1, order)
    if isinstance(node, Neg):
        return series_neg(ast_series(node.arg, order))
    if isinstance(node, Pow):
        return series_pow(ast_series(node.base, order), node.exp)
    if isinstance(node, BinOp):
        f = ast_series(node.left, order)
        g = ast_series(node.right, order)
        if node.op == "+":
            return series_add(f, g)
        if node.op == "-":
            return series_sub(f, g)
        if node.op == "*":
            return series_mul(f, g)
        try:
            return series_mul(f, series_reciprocal(g))
        except ZeroConstantTerm:
            raise DivisionByZeroSeries("denominator has zero constant term") from None
    if isinstance(node, Call):
        check_composition(node)
        arg = ast_series(node.arg, order)
        if node.func == "exp":
            return _series_exp(arg)
        if node.func == "ln":
            return _series_log(arg)
        return _series_sin_cos(arg, hyperbolic=node.func == "sinh")[0]
    raise TypeError(f"unknown node {node!r}")


def ast_eval(node, z: Fraction) -> Fraction:
    """Exact value of a function-free expression at ``z``."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return z
    if isinstance(node, Neg):
        return -ast_eval(node.arg, z)
    if isinstance(node, Pow):
        return ast_eval(node.base, z) ** node.exp
    if isinstance(node, BinOp):
        a = ast_eval(node.left, z)
        b = ast_eval(node.right, z)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        return a / b
    raise UnsupportedAnalyticEval("expression contains a transcendental function")


def _has_call(node):
    return isinstance(node, Call) or any(_has_call(c) for c in _children(node))


# --- radius of convergence ---------------------------------------------------

_SQRT_SCALE = 10**30


def _sqrt_bounds(q: Fraction):
    """Rational ``(lo, hi, exact)`` with ``lo <= sqrt(q) <= hi``."""
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        r = Fraction(rn, rd)
        return r, r, True
    s = isqrt(num * _SQRT_SCALE**2 // den)
    return Fraction(s, _SQRT_SCALE), Fraction(s + 1, _SQRT_SCALE), False


def _min_root_modulus(p):
    """Smallest root modulus of a polynomial with p(0) != 0.

    Returns ``(radius, status)``; degrees above two give status "unknown".
    """
    deg = len(p) - 1
    if deg == 0:
        return INF, "exact"
    if deg == 1:
        return abs(p[0] / p[1]), "exact"
    if deg > 2:
        return None, "unknown"
    c, b, a = p
    disc = b * b - 4 * a * c
    if disc < 0:
        lo, _, exact = _sqrt_bounds(c / a)
        return lo, "exact" if exact else "bound"
    lo, hi, exact = _sqrt_bounds(disc)
    best = None
    for sgn in (1, -1):
        ends = sorted(((-b + sgn * lo) / (2 * a), (-b + sgn * hi) / (2 * a)))
        low_abs = Fraction(0) if ends[0] <= 0 <= ends[1] else min(abs(ends[0]), abs(ends[1]))
        best = low_abs if best is None else min(best, low_abs)
    return best, "exact" if exact else "bound"


_STATUS_RANK = {"exact": 0, "bound": 1, "unknown": 2}


def _worse(*statuses):
    return max(statuses, key=_STATUS_RANK.__getitem__)


def _rmin(*values):
    return min(values, key=lambda v: INF if v == INF else v)


def ast_radius(node):
    """Conservative radius of convergence as ``(value, status)``.

    ``status`` is "exact", "bound" (a rational lower bound of an irrational
    radius) or "unknown" (value is only the minimum over the operands).
    """
    if isinstance(node, (Num, Var)):
        return INF, "exact"
    if isinstance(node, Neg):
        return ast_radius(node.arg)
    if isinstance(node, Pow):
        return ast_radius(node.base)
    if isinstance(node, BinOp):
        r1, s1 = ast_radius(node.left)
        r2, s2 = ast_radius(node.right)
        r, s = _rmin(r1, r2), _worse(s1, s2)
        if node.op != "/":
            return r, s
        p = polynomial_coeffs(node.right)
        if p is None:
            return r, "unknown"
        rr, sr = _min_root_modulus(p)
        if rr is None:
            return r, "unknown"
        return _rmin(r, rr), _worse(s, sr)
    if isinstance(node, Call):
        if node.func != "ln":
            return INF, "exact"
        rr, sr = _min_root_modulus(polynomial_coeffs(node.arg))
        if rr is None:
            return INF, "unknown"
        return rr, sr
    raise TypeError(f"unknown node {node!r}")


# --- GenFun ----------------------------------------------------------------


class GenFun:
    """A generating function with lazily extended exact Maclaurin coefficients."""

    _INITIAL_ORDER = 16

    def __init__(self, source, ast, radius, radius_status="exact", parity=None,
                 coeff_fn=None, catalog_id=None):
        self.source = source
        self.ast = ast
        self.radius = radius
        self.radius_status = radius_status
        self.parity = parity
        self.catalog_id = catalog_id
        self._coeff_fn = coeff_fn
        self._coeffs = ()
        self._lock = threading.Lock()

    def __repr__(self):
        return f"GenFun({self.source!r})"

    def _extend(self, order):
        with self._lock:
            if len(self._coeffs) > order:
                return
            target = max(order, 2 * len(self._coeffs), self._INITIAL_ORDER)
            if self._coeff_fn is not None:
                self._coeffs = tuple(self._coeff_fn(k) for k in range(target + 1))
            else:
                self._coeffs = ast_series(self.ast, target).coeffs

    def coeff(self, k: int) -> Fraction:
        if len(self._coeffs) <= k:
            self._extend(k)
        return self._coeffs[k]

    def series(self, order: int) -> SeriesTrunc:
        if len(self._coeffs) <= order:
            self._extend(order)
        return SeriesTrunc(self._coeffs[: order + 1])


def _geom(k):
    return Fraction(1)


def _geomsq(k):
    return Fraction(1) if k % 2 == 0 else Fraction(0)


def _geomsqneg(k):
    return Fraction((-1) ** (k // 2)) if k % 2 == 0 else Fraction(0)


def _exp(k):
    return Fraction(1, factorial(k))


def _sinh(k):
    return Fraction(1, factorial(k)) if k % 2 else Fraction(0)


def _sin(k):
    return Fraction((-1) ** ((k - 1) // 2), factorial(k)) if k % 2 else Fraction(0)


def _log(k):
    return Fraction(-1, k) if k else Fraction(0)


# id -> (expression text, coefficient formula, radius, parity)
CATALOG = {
    "geom": ("1/(1-x)", _geom, Fraction(1), None),
    "geomsq": ("1/(1-x^2)", _geomsq, Fraction(1), Parity.EVEN),
    "geomsqneg": ("1/(1+x^2)", _geomsqneg, Fraction(1), Parity.EVEN),
    "exp": ("exp(x)", _exp, INF, None),
    "sinh": ("sinh(x)", _sinh, INF, Parity.ODD),
    "sin": ("sin(x)", _sin, INF, Parity.ODD),
    "log": ("ln(1-x)", _log, Fraction(1), None),
}

_CATALOG_AST = {parse_expr(text): cid for cid, (text, *_rest) in CATALOG.items()}


def catalog(cid: str) -> GenFun:
    """Catalog entry by id, with closed-form coefficients."""
    text, fn, radius, parity = CATALOG[cid]
    return GenFun(cid, parse_expr(text), radius, "exact", parity, coeff_fn=fn, catalog_id=cid)


def _detect_parity(g: GenFun, order=32):
    cs = g.series(order).coeffs
    if all(c == 0 for c in cs[1::2]):
        return Parity.EVEN
    if all(c == 0 for c in cs[0::2]):
        return Parity.ODD
    return None


def parse_genfun(text: str) -> GenFun:
    """Parse an expression into a series-backed GenFun.

    Composition and division errors surface here rather than on first use.
    """
    ast = parse_expr(text)
    check_composition(ast)
    cid = _CATALOG_AST.get(ast)
    if cid is not None:
        _, _, radius, parity = CATALOG[cid]
        g = GenFun(text, ast, radius, "exact", parity, catalog_id=cid)
        g.series(GenFun._INITIAL_ORDER)
        return g
    radius, status = ast_radius(ast)
    g = GenFun(text, ast, radius, status)
    g.series(GenFun._INITIAL_ORDER)
    g.parity = _detect_parity(g)
    return g


def as_genfun(g) -> GenFun:
    """Accept a GenFun, a catalog id, or expression text."""
    if isinstance(g, GenFun):
        return g
    if g in CATALOG:
        return catalog(g)
    return parse_genfun(g)


def deriv0(g: GenFun, k: int) -> Fraction:
    """``g^(k)(0) = k! * c_k``."""
    return factorial(k) * g.coeff(k)


def g_lambda(g: GenFun, lam, n: int) -> Fraction:
    out = Fraction(1)
    for k in staircase(lam, n):
        d = deriv0(g, k)
        if d == 0:
            return Fraction(0)
        out *= d
    return out


def radius(g: GenFun):
    return g.radius


# --- analytic evaluation -----------------------------------------------------


def _taylor(z, eps, term, tail_bound):
    total = Fraction(0)
    k = 0
    while True:
        total += term(k)
        if tail_bound(k) <= eps:
            return total
        k += 1


def _exp_tail(az):
    # sum_{j>k} |z|^j / j!  <=  |z|^(k+1)/(k+1)! / (1 - |z|/(k+2))
    def bound(k):
        if az >= k + 2:
            return INF
        return az ** (k + 1) / factorial(k + 1) / (1 - az / (k + 2))

    return bound


def eval_analytic(g: GenFun, z, eps) -> Fraction:
    """Rational ``q`` with ``|q - g(z)| <= eps``.

    Rational functions of x are evaluated exactly; exp, sin, sinh and
    ln(1-x) use Taylor partial sums stopped by a proven tail bound.
    """
    z = as_rational(z)
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if g.radius_status == "unknown":
        raise UnsupportedAnalyticEval(f"radius of {g.source!r} is unknown")
    if g.radius != INF and abs(z) >= g.radius:
        raise OutsideRadius(f"|{z}| is not inside the radius {g.radius} of {g.source!r}")
    cid = g.catalog_id
    az = abs(z)
    if cid in ("exp", "sinh", "sin"):
        if z == 0:
            return Fraction(1) if cid == "exp" else Fraction(0)
        coef = {"exp": _exp, "sinh": _sinh, "sin": _sin}[cid]
        return _taylor(z, eps, lambda k: coef(k) * z**k, _exp_tail(az))
    if cid == "log":
        def tail(k):
            return az ** (k + 1) / ((k + 1) * (1 - az))

        return _taylor(z, eps, lambda k: _log(k) * z**k, tail)
    if not _has_call(g.ast):
        return ast_eval(g.ast, z)
    raise UnsupportedAnalyticEval(f"no evaluator with a tail bound for {g.source!r}")


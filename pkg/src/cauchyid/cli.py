"""Command-line entry point.

Exit codes: 0 success, 1 failed verification (or a mismatch under
``audit --strict``, or repeated points for ``schur``), 2 usage/parse errors.
Rationals print as ``p/q``. Negative point lists need the ``--a=-1/2,1`` form.
"""

import argparse
import csv
import io
import json
import random
import sys
from fractions import Fraction

from .errors import CauchyIdError, RepeatedPoints
from .genfun import as_genfun
from .identity import AUDIT_EXAMPLES, EvalConfig, audit_example, verify_analytic, verify_truncated
from .numerics import as_rational, format_rational
from .partitions import Partition, c_lambda, enumerate_partitions, parity_class, partitions_up_to_weight, staircase
from .schur import bialternant, ssyt_schur_oracle


class UsageError(Exception):
    pass


def _points(text):
    try:
        return tuple(as_rational(v.strip()) for v in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad point list {text!r}: {exc}") from None


def _random_points(rng, n):
    pts = set()
    while len(pts) < n:
        pts.add(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    return tuple(sorted(pts))


def _render_rows(rows, fmt, columns):
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for row in rows:
            w.writerow({k: _cell(row.get(k)) for k in columns})
        return buf.getvalue()
    cells = [[str(c) for c in columns]] + [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def _cell(v):
    if isinstance(v, list):
        return "(" + ",".join(map(str, v)) + ")"
    return "" if v is None else str(v)


REPORT_COLUMNS = ["mode", "order", "partition_count", "lhs", "rhs", "residual", "verdict"]
TERM_COLUMNS = ["lambda", "staircase", "G", "C", "s_a", "s_x", "term"]


def cmd_verify(args, out):
    g = as_genfun(args.g)
    if args.a is None or args.x is None:
        if args.n is None:
            raise UsageError("give --a and --x, or --n with --seed for random points")
        rng = random.Random(args.seed)
        a = _points(args.a) if args.a else _random_points(rng, args.n)
        x = _points(args.x) if args.x else _random_points(rng, args.n)
    else:
        a, x = _points(args.a), _points(args.x)
    if args.mode == "exact":
        if args.order is None:
            raise UsageError("--mode exact needs --order")
        cfg = EvalConfig(a, x, "exact", order=args.order)
        report = verify_truncated(g, cfg, args.order, threads=args.threads, log_terms=args.log_terms)
    else:
        cfg = EvalConfig(a, x, "analytic", tol=args.tol, k_max=args.kmax)
        report = verify_analytic(g, cfg, log_terms=args.log_terms)
    data = report.to_dict(log_terms=args.log_terms)
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(_render_rows([data], args.format, REPORT_COLUMNS))
        if args.log_terms:
            out.write("\n" + _render_rows(data["terms"], args.format, TERM_COLUMNS))
        if report.trace is not None and args.format == "table":
            out.write("\n" + _render_rows(data["trace"], args.format, ["k_cap", "residual"]))
    return 0 if report.ok else 1


def cmd_schur(args, out):
    try:
        lam = Partition.parse(args.lam)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    xs = _points(args.x)
    if args.oracle:
        value = ssyt_schur_oracle(lam, xs)
    else:
        try:
            value = bialternant(lam, xs)
        except RepeatedPoints as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    out.write(format_rational(value) + "\n")
    return 0


def cmd_partitions(args, out):
    rows = []
    for lam in enumerate_partitions(args.n, args.kcap):
        rows.append({
            "lambda": str(lam),
            "staircase": list(staircase(lam, args.n)),
            "C": format_rational(c_lambda(lam, args.n)),
            "parity": str(parity_class(lam, args.n)),
        })
    out.write(_render_rows(rows, args.format, ["lambda", "staircase", "C", "parity"]))
    return 0


def cmd_audit(args, out):
    records = audit_example(args.example, args.n, partitions_up_to_weight(args.maxweight, args.n))
    rows = [r.to_dict() for r in records]
    out.write(_render_rows(rows, args.format, ["example", "n", "lambda", "claimed", "computed", "match"]))
    mismatches = sum(not r.match for r in records)
    print(f"{len(records)} records, {mismatches} mismatches", file=sys.stderr)
    return 1 if args.strict and mismatches else 0


def cmd_series(args, out):
    g = as_genfun(args.g)
    rows = [{"k": k, "coeff": format_rational(g.coeff(k))} for k in range(args.k)]
    out.write(_render_rows(rows, args.format, ["k", "coeff"]))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="cauchyid", description="Cauchy-type identities for collocation matrices")
    sub = p.add_subparsers(dest="command", required=True)

    def fmt(sp, default):
        sp.add_argument("--format", choices=("json", "csv", "table"), default=default)

    v = sub.add_parser("verify", help="compare both sides of the identity")
    v.add_argument("--g", required=True, help='expression such as "1/(1-x)" or a catalog id')
    v.add_argument("--a", help="comma-separated rationals")
    v.add_argument("--x", help="comma-separated rationals")
    v.add_argument("--n", type=int, help="dimension for random points")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--mode", choices=("exact", "analytic"), default="exact")
    v.add_argument("--order", type=int, help="truncation order m (exact mode)")
    v.add_argument("--tol", type=float, default=1e-10)
    v.add_argument("--kmax", type=int, default=40)
    v.add_argument("--log-terms", action="store_true")
    v.add_argument("--threads", type=int, default=None)
    fmt(v, "json")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("schur", help="evaluate a Schur polynomial")
    s.add_argument("--lambda", dest="lam", required=True, help='partition such as "[2,1]"')
    s.add_argument("--x", required=True)
    s.add_argument("--oracle", action="store_true", help="sum over semistandard tableaux")
    s.set_defaults(func=cmd_schur)

    pa = sub.add_parser("partitions", help="list partitions with staircase exponents <= kcap")
    pa.add_argument("--n", type=int, required=True)
    pa.add_argument("--kcap", type=int, required=True)
    fmt(pa, "table")
    pa.set_defaults(func=cmd_partitions)

    au = sub.add_parser("audit", help="compare claimed closed-form coefficients with derivatives")
    au.add_argument("--example", choices=AUDIT_EXAMPLES, required=True)
    au.add_argument("--n", type=int, required=True)
    au.add_argument("--maxweight", type=int, required=True)
    au.add_argument("--strict", action="store_true")
    fmt(au, "table")
    au.set_defaults(func=cmd_audit)

    se = sub.add_parser("series", help="print Maclaurin coefficients")
    se.add_argument("--g", required=True)
    se.add_argument("--k", type=int, default=10, help="number of coefficients")
    fmt(se, "table")
    se.set_defaults(func=cmd_series)
    return p


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, CauchyIdError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

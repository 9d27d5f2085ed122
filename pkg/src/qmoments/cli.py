"""Command-line surface: moment tables, verification suites, q -> 1 sweeps.

All values are exact rationals serialized as "num/den"; decimal renderings
use 30 significant digits, round-half-even. Re-running any command with
the same config is bit-identical (all arithmetic is rational).

Exit codes: 0 success, 1 computational/verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from . import classical, qhermite, qlaguerre, verify
from .qarith import format_rational, parse_rational
from .qcalc import TruncationPolicy, default_policy

CSV_HEADER = ["family", "method", "k", "n", "alpha", "q",
              "value_exact", "value_decimal", "bound", "status"]


def decimal_render(s: str | None) -> str | None:
    """30-significant-digit decimal string for a 'num/den' value."""
    if s in (None, ""):
        return None
    x = parse_rational(s)
    with localcontext() as ctx:
        ctx.prec = 30
        ctx.rounding = ROUND_HALF_EVEN
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return str(d)


def parse_range(s: str):
    """'a..b' inclusive, or a single integer."""
    if ".." in s:
        lo, hi = s.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty range {s!r}")
        return list(range(lo, hi + 1))
    return [int(s)]


def parse_q_list(s: str):
    out = []
    for part in s.split(","):
        q = parse_rational(part)
        if not (0 < q < 1):
            raise ValueError(f"q must satisfy 0 < q < 1, got {part!r}")
        out.append(q)
    return out


def parse_tolerance(s: str) -> Fraction:
    """Accepts 'num/den' and the shorthand '1/10^k'."""
    if "^" in s:
        mant, exp = s.split("^", 1)
        if not mant.endswith("10"):
            raise ValueError(f"cannot parse tolerance {s!r}")
        head = mant[:-2].rstrip()
        if head.endswith("/"):
            head = head[:-1]
        num = parse_rational(head) if head else Fraction(1)
        return num / Fraction(10) ** int(exp)
    return parse_rational(s)


def emit(rows, factor_reports, config, passed, failed, fmt, out):
    for row in rows:
        row["value_decimal"] = decimal_render(row.get("value_exact"))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(CSV_HEADER)
        for row in rows:
            w.writerow(["" if row.get(col) is None else row.get(col)
                        for col in CSV_HEADER])
        out.write(buf.getvalue())
    else:
        doc = {"config": config,
               "rows": rows,
               "summary": {"passed": passed, "failed": failed,
                           "factor_reports": factor_reports}}
        json.dump(doc, out, indent=2, default=str)
        out.write("\n")


def _moment_task(task):
    family, method, k, n, alpha, q_str = task
    q = parse_rational(q_str)
    try:
        if family == "q-hermite":
            fn = {"residue": qhermite.m_qh_residue,
                  "hyper": qhermite.m_qh_hyper}[method]
            val = Fraction(1) if k == 0 else fn(k, n, q)
        elif family == "q-laguerre":
            fn = {"hyper": qlaguerre.m_ql_hyper,
                  "hooksum": qlaguerre.m_ql_hooksum,
                  "schur": qlaguerre.m_ql_schur}[method]
            val = Fraction(1) if k == 0 else fn(k, n, alpha, q)
        elif family == "classical-gue":
            val = classical.gue_moment(k, n)
        else:
            val = classical.lue_moment_or_one(k, n, alpha)
        return {"family": family, "method": method, "k": k, "n": n,
                "alpha": alpha, "q": q_str,
                "value_exact": format_rational(val), "value_decimal": None,
                "bound": None, "status": "exact"}
    except Exception as exc:  # reported in the row, drives exit code 1
        return {"family": family, "method": method, "k": k, "n": n,
                "alpha": alpha, "q": q_str, "value_exact": None,
                "value_decimal": None, "bound": None,
                "status": f"error({type(exc).__name__}: {exc})"}


DEFAULT_METHODS = {
    "q-hermite": ["residue", "hyper"],
    "q-laguerre": ["hyper", "hooksum", "schur"],
    "classical-gue": ["formula"],
    "classical-lue": ["formula"],
}


def cmd_moments(args) -> int:
    family = args.family
    ks = parse_range(args.k)
    ns = parse_range(args.n)
    alphas = parse_range(args.alpha) if args.alpha else [0]
    qs = parse_q_list(args.q) if args.q else [None]
    if family.startswith("q-") and qs == [None]:
        raise ValueError(f"--q is required for family {family}")
    methods = args.methods.split(",") if args.methods else DEFAULT_METHODS[family]
    for m in methods:
        allowed = DEFAULT_METHODS[family]
        if m not in allowed:
            raise ValueError(f"method {m!r} not available for {family} "
                             f"(choose from {','.join(allowed)})")
    tasks = []
    for q in qs:
        q_str = format_rational(q) if q is not None else "0"
        for method in methods:
            for k in ks:
                for n in ns:
                    for alpha in alphas:
                        tasks.append((family, method, k, n, alpha, q_str))
    if args.parallel > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            rows = list(pool.map(_moment_task, tasks))
    else:
        rows = [_moment_task(t) for t in tasks]
    failed = sum(1 for r in rows if r["status"].startswith("error"))
    config = {"command": "moments", "family": family, "k": args.k, "n": args.n,
              "alpha": args.alpha, "q": args.q, "methods": ",".join(methods),
              "format": args.format, "parallel": args.parallel}
    emit(rows, [], config, len(rows) - failed, failed, args.format, args.out)
    return 1 if failed else 0


def cmd_verify(args) -> int:
    name = args.suite
    if name not in verify.SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from "
                         f"{', '.join(sorted(verify.SUITES))}")
    kwargs = {}
    qs = parse_q_list(args.q) if args.q else None
    kmax = max(parse_range(args.k)) if args.k else args.kmax
    nmax = max(parse_range(args.n)) if args.n else args.nmax
    if name in ("qh-cross", "qh-genfunc", "ql-cross"):
        if qs:
            kwargs["qs"] = qs
        if kmax:
            kwargs["kmax"] = kmax
        if nmax:
            kwargs["nmax"] = nmax
        if name == "ql-cross" and args.alphamax is not None:
            kwargs["alphamax"] = args.alphamax
    elif name == "qh-recurrence":
        if qs:
            kwargs["qs"] = qs
        if args.K:
            kwargs["kmax_lattice"] = args.K
    elif name == "qh-saalschutz":
        if qs:
            kwargs["qs"] = qs
        if kmax:
            kwargs["kmax"] = kmax
    elif name in ("ql-recurrence", "ql-randomized"):
        if qs:
            kwargs["qs"] = qs
        if kmax:
            kwargs["kmax"] = kmax
        if args.alphamax is not None:
            kwargs["alphamax"] = args.alphamax
    elif name == "classical-all":
        if kmax:
            kwargs["kmax"] = kmax
        if nmax:
            kwargs["nmax"] = nmax
        if args.alphamax is not None:
            kwargs["alphamax"] = args.alphamax
    elif name == "oracle-qh":
        if qs:
            kwargs["qs"] = qs
        if kmax:
            kwargs["kmax"] = kmax
        if nmax:
            kwargs["nmax"] = nmax
        if args.tol:
            kwargs["policy"] = TruncationPolicy(parse_tolerance(args.tol),
                                                default_policy().max_index)
    elif name == "oracle-ql":
        if qs:
            kwargs["qs"] = qs
        if kmax:
            kwargs["kmax"] = kmax
        if nmax:
            kwargs["nmax"] = nmax
        if args.alpha:
            kwargs["alphas"] = parse_range(args.alpha)
        if args.tol:
            kwargs["policy"] = TruncationPolicy(parse_tolerance(args.tol),
                                                default_policy().max_index)
    elif name == "transforms":
        if args.count:
            kwargs["count"] = args.count
    result = verify.SUITES[name](**kwargs)
    config = {"command": "verify", "suite": name,
              **{k: str(v) for k, v in kwargs.items() if k != "policy"}}
    emit(result.rows, result.factor_reports, config,
         result.passed, result.failed, args.format, args.out)
    if not result.ok:
        first = next(r for r in result.rows if r["status"].startswith("mismatch")
                     or r["status"].startswith("error"))
        print(f"verify {name}: FAILED first at {first}", file=sys.stderr)
        return 1
    return 0


def cmd_limit(args) -> int:
    family = args.family
    if family not in ("q-hermite", "q-laguerre"):
        raise ValueError("limit families: q-hermite | q-laguerre")
    ks = parse_range(args.k)
    ns = parse_range(args.n)
    alphas = parse_range(args.alpha) if args.alpha else [0]
    threshold = parse_tolerance(args.threshold) if args.threshold else Fraction(1, 100)
    q_list = args.q.split(",")
    all_rows, ok_all = [], True
    for k in ks:
        for n in ns:
            for alpha in alphas:
                rows, ok, target = verify.limit_rows(family, k, n, alpha,
                                                     q_list, threshold)
                for r in rows:
                    r["method"] = f"limit->{format_rational(target)}"
                all_rows.extend(rows)
                ok_all = ok_all and ok
    config = {"command": "limit", "family": family, "k": args.k, "n": args.n,
              "alpha": args.alpha, "q": args.q,
              "threshold": format_rational(threshold)}
    emit(all_rows, [], config, len(all_rows) if ok_all else 0,
         0 if ok_all else len(all_rows), args.format, args.out)
    return 0 if ok_all else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qmoments",
        description="Exact moments of discrete q-Hermite / q-Laguerre ensembles, "
                    "with cross-verification suites and q->1 sweeps.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("--out", type=argparse.FileType("w"), default=sys.stdout)

    sp = sub.add_parser("moments", help="tabulate moments over a grid")
    sp.add_argument("--family", required=True, choices=list(DEFAULT_METHODS))
    sp.add_argument("--q", help="comma-separated rationals, e.g. 1/3,1/2")
    sp.add_argument("--k", required=True, help="order or range a..b")
    sp.add_argument("--n", required=True, help="particle count or range a..b")
    sp.add_argument("--alpha", help="LUE/q-Laguerre parameter or range")
    sp.add_argument("--methods", help="comma-separated method names")
    sp.add_argument("--parallel", type=int, default=1)
    common(sp)
    sp.set_defaults(fn=cmd_moments)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True)
    sp.add_argument("--q")
    sp.add_argument("--k")
    sp.add_argument("--n")
    sp.add_argument("--K", type=int, help="q-Hahn lattice size bound")
    sp.add_argument("--kmax", type=int)
    sp.add_argument("--nmax", type=int)
    sp.add_argument("--alphamax", type=int)
    sp.add_argument("--alpha", help="alpha or range (oracle-ql)")
    sp.add_argument("--tol", help="oracle tolerance, e.g. 1/10^10")
    sp.add_argument("--count", type=int, help="points per transform (transforms)")
    common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("limit", help="q -> 1 degeneration sweep")
    sp.add_argument("--family", required=True)
    sp.add_argument("--q", required=True,
                    help="strictly increasing comma-separated q values")
    sp.add_argument("--k", required=True)
    sp.add_argument("--n", required=True)
    sp.add_argument("--alpha")
    sp.add_argument("--threshold", help="final relative error threshold")
    common(sp)
    sp.set_defaults(fn=cmd_limit)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        print(f"qmoments: config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"qmoments: computation error: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

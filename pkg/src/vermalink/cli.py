"""Command line entry point: ``vermalink <command> ...``.

Exit codes: 0 success, 1 computation error (a JSON error object is printed),
2 usage error.
"""
import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .algebra import FLAVORS, Algebra, DiagramError
from .braids import BraidParseError, parse_braid
from .cache import ResultCache
from .dg import DifferentialError, algebra_homology, parse_diff
from .linkhom import LinkComplex, WindowError
from .scalars import QFrac, specialize
from .verma import homfly, homfly_reduced


class UsageError(Exception):
    pass


def pmap(fn, items, threads=1):
    """Ordered parallel map; falls back to a plain loop for one worker."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def parse_nu(text):
    """'0:2,1:1' or a JSON object -> {label: count}."""
    text = text.strip()
    try:
        if text.startswith("{"):
            raw = json.loads(text)
            nu = {int(k): int(v) for k, v in raw.items()}
        else:
            nu = {}
            for part in text.split(","):
                k, v = part.split(":")
                nu[int(k)] = int(v)
    except (ValueError, AttributeError):
        raise UsageError(f"cannot parse nu {text!r}") from None
    if any(v < 0 for v in nu.values()) or not any(nu.values()):
        raise UsageError("nu needs nonnegative counts and at least one strand")
    return {k: v for k, v in sorted(nu.items()) if v}


def _csv(rows, header):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def _config(args):
    """Resolved run configuration, echoed into JSON output."""
    skip = {"func", "default_out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(obj, args=None):
    if args is not None:
        obj = dict(obj, config=_config(args))
    sys.stdout.write(json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n")


def read_braid(text):
    """Inline braid text, or ``@path`` for a file holding one."""
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read().strip()
        except OSError as exc:
            raise UsageError(f"cannot read braid file: {exc}") from None
    return parse_braid(text)


# commands ---------------------------------------------------------------------

def cmd_homfly(args, cache):
    b = read_braid(args.braid)
    if args.reduced and b.n < 2:
        value = QFrac(1)
    else:
        value = homfly_reduced(b) if args.reduced else homfly(b)
    out = value
    if args.specialize:
        target, N = _parse_specialization(args.specialize)
        out = specialize(value, target, N)
    if args.out == "json":
        _emit({"braid": b.to_text(), "variant": "reduced" if args.reduced else "full",
               "specialize": args.specialize, "value": out.to_json(), "text": out.to_text()}, args)
    else:
        sys.stdout.write(out.to_text() + "\n")


def _parse_specialization(text):
    if text == "alexander":
        return "alexander", None
    if text.startswith("glN="):
        try:
            return "glN", int(text[4:])
        except ValueError:
            pass
    raise UsageError(f"unknown specialization {text!r}")


def cmd_homology(args, cache):
    b = read_braid(args.braid)
    variant = "reduced" if args.reduced else "full"
    if args.page2_check and args.glN is None:
        raise UsageError("--page2-check needs --glN")
    key = {"kind": "homology", "braid": b.to_text(), "variant": variant, "qmax": args.qmax,
           "glN": args.glN, "page2": bool(args.page2_check)}
    result = cache.get(key)
    if result is None:
        result = homology_report(b, variant, args.qmax, args.glN, args.page2_check)
        cache.put(key, result)
    if args.out == "csv":
        sys.stdout.write(_csv([(r["q"], r["l"], r["h"], r["rank"]) for r in result["poincare"]],
                              ("q", "l", "h", "rank")))
    else:
        _emit(result, args)


def homology_report(b, variant, qmax, N=None, page2=False):
    lc = LinkComplex(b, variant, qmax)
    rows = lc.poincare()
    chi = lc.euler(rows)
    report = {
        "braid": b.to_text(),
        "variant": variant,
        "window": {"qmax": qmax},
        "poincare": rows,
        "euler": [{"q": q, "l": l, "coeff": c} for (q, l), c in sorted(chi.items())],
        "checks": {"euler_ok": lc.euler_ok(rows), "d2_ok": lc.d2_ok, "page2_ok": None},
    }
    if N is not None:
        report["glN"] = {"N": N, "poincare": lc.gl_n(N)}
        if page2:
            tables = lc.page2(N)
            bad = [T for T, (a, bb, c) in tables.items() if not (a == bb == c)]
            report["checks"]["page2_ok"] = not bad
            report["page2"] = [{"q": T, "a": _ranks_json(a), "b": _ranks_json(bb),
                                "c": _ranks_json(c)} for T, (a, bb, c) in sorted(tables.items())]
    return report


def _ranks_json(ranks):
    return [{"h": h, "rank": r} for h, r in sorted(ranks.items())]


def cmd_algebra_homology(args, cache):
    nu = parse_nu(args.nu)
    if args.flavor not in FLAVORS:
        raise UsageError(f"unknown flavor {args.flavor!r}")
    try:
        diff = parse_diff(args.diff)
    except DifferentialError as exc:
        raise UsageError(str(exc)) from None
    key = {"kind": "algebra-homology", "nu": sorted(nu.items()), "flavor": args.flavor,
           "diff": args.diff, "qmax": args.qmax}
    rows = cache.get(key)
    if rows is None:
        raw = algebra_homology(nu, args.flavor, diff, args.qmax)
        tally = {}
        for r in raw:
            if r["rank"]:
                k = (r["q"], _lam0(r, diff), r["hdeg"])
                tally[k] = tally.get(k, 0) + r["rank"]
        rows = [list(k) + [v] for k, v in sorted(tally.items())]
        cache.put(key, rows)
    if args.out == "json":
        _emit({"nu": {str(k): v for k, v in nu.items()}, "flavor": args.flavor, "diff": args.diff,
               "qmax": args.qmax, "rows": [dict(zip(("q", "l", "hdeg", "rank"), r)) for r in rows]}, args)
    else:
        sys.stdout.write(_csv(rows, ("q", "l", "hdeg", "rank")))


def _lam0(row, diff):
    """lambda_0 degree of a homology row; d_total mixes it, so it is left blank."""
    kind, _ = diff
    if kind == "dbeta":
        return row["block"][1]
    if kind == "dN":
        return 2 * row["hdeg"]
    return ""


def cmd_basis_dim(args, cache):
    nu = parse_nu(args.nu)
    if args.flavor not in FLAVORS:
        raise UsageError(f"unknown flavor {args.flavor!r}")
    key = {"kind": "basis-dim", "nu": sorted(nu.items()), "flavor": args.flavor,
           "qmax": args.qmax}
    rows = cache.get(key)
    if rows is None:
        tally = {}
        for (q, lam, parity), c in Algebra(args.flavor).graded_dim_total(nu, args.qmax).items():
            k = (q, dict(lam).get(0, 0), parity)
            tally[k] = tally.get(k, 0) + c
        rows = [list(k) + [v] for k, v in sorted(tally.items())]
        cache.put(key, rows)
    if args.out == "json":
        _emit({"nu": {str(k): v for k, v in nu.items()}, "flavor": args.flavor, "qmax": args.qmax,
               "rows": [dict(zip(("q_deg", "l_deg", "parity", "count"), r)) for r in rows]}, args)
    else:
        sys.stdout.write(_csv(rows, ("q_deg", "l_deg", "parity", "count")))


def cmd_oracle_check(args, cache):
    from .oracle import check_relations
    report = check_relations(max_strands=args.strands, qmax=args.qmax,
                             mapper=lambda fn, xs: pmap(fn, xs, args.threads))
    failed = sum(v[1] for v in report.values())
    rows = [{"family": f, "checked": v[0], "failed": v[1]} for f, v in sorted(report.items())]
    if args.out == "csv":
        sys.stdout.write(_csv([(r["family"], r["checked"], r["failed"]) for r in rows],
                              ("family", "checked", "failed")))
    else:
        _emit({"qmax": args.qmax, "strands": args.strands, "families": rows, "ok": not failed}, args)
    return 1 if failed else 0


def cmd_selftest(args, cache):
    from .selftest import run_suites
    results = run_suites(args.level, seed=args.seed, threads=args.threads)
    width = max(len(name) for name, _, _ in results)
    for name, ok, detail in results:
        sys.stdout.write(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {detail}\n")
    return 0 if all(ok for _, ok, _ in results) else 1


# parser ------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker processes")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--out", choices=("text", "json", "csv"), default=None)
    common.add_argument("--cache-dir", default=None, help="overrides VERMA_LINK_CACHE")
    common.add_argument("--no-cache", action="store_true")

    p = _Parser(prog="vermalink", description="HOMFLY-PT values, floating-dot KLR algebras "
                "and triply graded link homology.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    h = sub.add_parser("homfly", parents=[common], help="HOMFLY-PT polynomial of a braid closure")
    h.add_argument("braid", help="e.g. 'n=2 s1 s1^-1', or @file")
    h.add_argument("--reduced", action="store_true")
    h.add_argument("--specialize", help="glN=<N> or alexander")
    h.set_defaults(func=cmd_homfly, default_out="text")

    h = sub.add_parser("homology", parents=[common], help="triply graded homology on a window")
    h.add_argument("braid", help="e.g. 'n=2 s1 s1^-1', or @file")
    h.add_argument("--reduced", action="store_true")
    h.add_argument("--qmax", type=int, default=6)
    h.add_argument("--glN", type=int, default=None)
    h.add_argument("--page2-check", action="store_true")
    h.set_defaults(func=cmd_homology, default_out="json")

    h = sub.add_parser("algebra-homology", parents=[common], help="homology of R(nu) under d")
    h.add_argument("--nu", required=True)
    h.add_argument("--flavor", default="b")
    h.add_argument("--diff", default="dbeta", help="dbeta | dN:<N> | dtotal:<N>")
    h.add_argument("--qmax", type=int, default=6)
    h.set_defaults(func=cmd_algebra_homology, default_out="csv")

    h = sub.add_parser("basis-dim", parents=[common], help="graded dimensions of R(nu)")
    h.add_argument("--nu", required=True)
    h.add_argument("--flavor", default="b")
    h.add_argument("--qmax", type=int, default=6)
    h.set_defaults(func=cmd_basis_dim, default_out="csv")

    h = sub.add_parser("oracle-check", parents=[common], help="relations on the polynomial rep")
    h.add_argument("--qmax", type=int, default=6)
    h.add_argument("--strands", type=int, default=3)
    h.set_defaults(func=cmd_oracle_check, default_out="json")

    h = sub.add_parser("selftest", parents=[common], help="quick consistency suites")
    h.add_argument("--level", choices=("quick", "full"), default="quick")
    h.set_defaults(func=cmd_selftest, default_out="text")
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.out is None:
        args.out = args.default_out
    if args.threads < 1:
        return _usage(parser, "--threads must be at least 1")
    if getattr(args, "qmax", 0) is not None and getattr(args, "qmax", 0) > 40:
        return _usage(parser, "--qmax above 40 is not supported")
    cache = ResultCache(args.cache_dir, enabled=not args.no_cache)
    try:
        code = args.func(args, cache)
    except (UsageError, BraidParseError, DiagramError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args)
        return 2
    except (WindowError, ArithmeticError, ValueError, KeyError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, args)
        return 1
    return code or 0


def _usage(parser, message):
    parser.print_usage(sys.stderr)
    sys.stderr.write(f"vermalink: error: {message}\n")
    return 2


if __name__ == "__main__":
    sys.exit(main())

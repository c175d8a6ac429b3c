"""Command-line front end.

Every subcommand parses its flags, calls one library function and renders
the result; no set arithmetic happens here.  JSON output uses sorted keys so
identical invocations print identical bytes.  The worker count never
appears in the output.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from itertools import product as _cartesian

from . import bounds as B
from .checks import DEFAULT_SEED, CheckSpec, UnknownCheckError, list_checks, run_checks
from .constructions import (
    interval_set, odd_spaced_ap, rho_s_witness, subgroup_interval, symmetrize_chain,
)
from .groups import INFINITY, GroupError, Subset, parse_group, parse_subset
from .rho import MAX_SEARCH_SPACE, EmptyClassError, EnvelopeError, RhoQuery, rho, rho_parallel
from .structure import sdeg
from .sumsets import Kind, PreconditionError, parse_multiplicities, union_fold

WORKERS_ENV = "SIGNSUM_WORKERS"
FORMATS = ("text", "json", "csv")
RECIPES = ("odd_spaced_ap", "interval_set", "rho_s_witness", "subgroup_interval", "symmetrize")
THEOREMS = ("plain", "rho-s", "signed-field", "restricted-field", "restricted-interval",
            "restricted-classes", "restricted-plain")
SWEEP_COLUMNS = ("index", "type", "group", "kind", "H", "m", "filter", "A", "value", "witness")


class CliError(Exception):
    pass


def default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise CliError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise CliError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return n


def _config(args) -> dict:
    """Run configuration echoed into report headers (workers excluded)."""
    return {
        "seed": getattr(args, "seed", DEFAULT_SEED),
        "max_search": getattr(args, "max_search", MAX_SEARCH_SPACE),
        "degree_cap": B.DEGREE_CAP,
        "format": args.format,
    }


def _braces(A: Subset | None) -> str | None:
    return None if A is None else "{" + A.to_literal() + "}"


def _count(v):
    return "inf" if v == INFINITY else v


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow(["" if r.get(c) is None else r.get(c) for c in header])
    return buf.getvalue()


def _emit(args, record: dict, text: str):
    if args.format == "json":
        print(_dump(record))
    elif args.format == "csv":
        print(_csv([record], sorted(record)), end="")
    else:
        print(text)


def _parse_p(text: str):
    return INFINITY if text.strip().lower() in ("inf", "infinity") else int(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_sumset(args) -> int:
    g = parse_group(args.group)
    A = parse_subset(g, args.set)
    H = parse_multiplicities(args.H)
    kind = Kind.parse(args.kind)
    S = union_fold(A, H, kind)
    rec = {"group": str(g), "A": _braces(A), "kind": kind.value, "H": list(H),
           "sumset": _braces(S), "size": len(S)}
    _emit(args, rec, f"{_braces(S)}\nsize: {len(S)}")
    return 0


def cmd_rho(args) -> int:
    g = parse_group(args.group)
    q = RhoQuery(g, args.m, parse_multiplicities(args.H), args.kind, args.filter)
    workers = args.workers or default_workers()
    if workers > 1:
        res = rho_parallel(q, workers, prune=not args.no_prune, max_search=args.max_search)
    else:
        res = rho(q, prune=not args.no_prune, max_search=args.max_search, progress=args.progress)
    rec = {"config": _config(args), "group": str(g), "m": q.m, "H": list(q.H),
           "kind": q.kind.value, "filter": str(q.filter), "value": res.value,
           "witness": _braces(res.witness), "sets_examined": res.sets_examined,
           "pruned_by_automorphism": res.pruned_by_automorphism}
    if args.format == "csv":
        rec.pop("config")
    _emit(args, rec, f"rho = {res.value}\nwitness: {_braces(res.witness)}\n"
                     f"examined: {res.sets_examined}, pruned: {res.pruned_by_automorphism}")
    return 0


def _verify_specs(args) -> list:
    ids = [c[0] for c in list_checks()] if args.check == ["all"] else args.check
    grid = json.loads(args.grid) if args.grid else None
    if grid is not None and len(ids) != 1:
        raise CliError("--grid needs exactly one --check id")
    return [CheckSpec(i, grid=grid, mode=args.mode, seed=args.seed, count=args.count) for i in ids]


def cmd_verify(args) -> int:
    specs = _verify_specs(args)
    workers = args.workers or default_workers()
    reports = run_checks(specs, workers=workers)
    timing = not args.no_timing
    ok = all(r.passed for r in reports)
    if args.format == "json":
        print(_dump({"config": _config(args), "passed": ok,
                     "reports": [r.as_dict(timing) for r in reports]}))
    elif args.format == "csv":
        header = ["id", "mode", "seed", "cells", "skipped", "failures_total", "passed", "elapsed_ms", "anchor"]
        rows = []
        for r in reports:
            d = r.as_dict(timing)
            d["passed"] = "PASS" if r.passed else "FAIL"
            rows.append(d)
        print(_csv(rows, header), end="")
    else:
        for r in reports:
            t = f" {r.elapsed_ms:9.1f} ms" if timing else ""
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.id:<20} cells={r.cells:<7} "
                  f"skipped={r.skipped:<7} failures={r.failures_total}{t}")
            for f in r.failures[:5]:
                print(f"      {json.dumps(f.params, sort_keys=True)}  witness={f.witness}  "
                      f"expected={json.dumps(f.expected, sort_keys=True)}  "
                      f"actual={json.dumps(f.actual, sort_keys=True)}")
    return 0 if ok else 1


def cmd_list_checks(args) -> int:
    rows = list_checks()
    if args.format == "json":
        print(_dump([{"id": i, "anchor": a, "grid": g} for i, a, g in rows]))
    elif args.format == "csv":
        print(_csv([{"id": i, "anchor": a, "grid": json.dumps(g, sort_keys=True)} for i, a, g in rows],
                   ["id", "anchor", "grid"]), end="")
    else:
        for i, a, _ in rows:
            print(f"{i:<20} {a}")
    return 0


def cmd_construct(args) -> int:
    r = args.recipe
    chain = None
    if r != "symmetrize":
        _need(args, "m", *(("s",) if r == "rho_s_witness" else ()))
    if r in ("odd_spaced_ap", "interval_set"):
        fn = odd_spaced_ap if r == "odd_spaced_ap" else interval_set
        A = fn(args.d, args.m)
    elif r == "rho_s_witness":
        A = rho_s_witness(parse_group(args.group), args.m, args.s)
    elif r == "subgroup_interval":
        A = subgroup_interval(parse_group(args.group), args.m)
    else:
        if args.set is None or args.H is None:
            raise CliError("symmetrize needs -A and -H")
        g = parse_group(args.group)
        chain = symmetrize_chain(parse_subset(g, args.set), int(args.H))
        A = chain[-1]
    rec = {"recipe": r, "group": str(A.group), "set": _braces(A), "size": len(A), "sdeg": sdeg(A)}
    text = f"{_braces(A)}\nsize: {len(A)}, sdeg: {sdeg(A)}"
    if chain is not None:
        rec["chain"] = [_braces(C) for C in chain]
        text = "\n".join(_braces(C) for C in chain) + f"\nsize: {len(A)}, sdeg: {sdeg(A)}"
    _emit(args, rec, text)
    return 0


def factorize(n: int) -> list:
    """Prime factorization as [(prime, exponent), ...]."""
    out, d = [], 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _format_factors(fs) -> str:
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in fs) or "1"


def cmd_coeff(args) -> int:
    fn = {2: B.coeff_h2, 3: B.coeff_h3, 4: B.coeff_h4}[args.h]
    val = fn(args.k, args.l)
    fs = factorize(val)
    rec = {"h": args.h, "k": args.k, "l": args.l, "value": val,
           "factorization": _format_factors(fs)}
    if args.oracle:
        rec["oracle"] = B.symbolic_coefficient_oracle(args.h, args.k, args.l)
    text = f"{val} = {_format_factors(fs)}"
    if args.oracle:
        text += f"\noracle: {rec['oracle']} ({'match' if rec['oracle'] == val else 'MISMATCH'})"
    _emit(args, rec, text)
    return 0 if not args.oracle or rec["oracle"] == val else 1


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        what = f"bound --theorem {args.theorem}" if hasattr(args, "theorem") else f"construct --recipe {args.recipe}"
        raise CliError(f"{what} needs " + ", ".join("--" + n for n in missing))


def cmd_bound(args) -> int:
    t = args.theorem
    p = _parse_p(args.p)
    if t == "signed-field":
        _need(args, "k", "h")
        res = B.bound_signed_field(args.k, p, args.h)
    elif t == "restricted-field":
        _need(args, "k", "h", "s")
        res = B.bound_restricted_field(args.k, p, args.h, args.s)
    elif t == "restricted-classes":
        _need(args, "m", "h")
        vals = B.bound_restricted_classes(p, args.m, args.h)
        rec = {"theorem": t, "p": _count(p), "m": args.m, "h": args.h, "value": vals}
        _emit(args, rec, "\n".join(f"{c}: {v}" for c, v in sorted(vals.items())))
        return 0
    else:
        if t == "plain":
            _need(args, "m", "h")
            v, br = B.bound_plain(p, args.m, args.h), "min(p,hm-h+1)"
        elif t == "rho-s":
            _need(args, "m", "h", "s")
            v, br = B.bound_rho_s(p, args.m, args.h, args.s), "min(p,2hm-hs-h+1)"
        elif t == "restricted-interval":
            _need(args, "m", "h", "s")
            v = B.bound_restricted_interval(p, args.m, args.h, args.s, args.zero)
            br = "0 in A" if args.zero else "0 not in A"
        else:
            _need(args, "m", "h")
            v, br = B.bound_restricted_plain(p, args.m, args.h), "min(p,hm-h^2+1)"
        res = B.BoundResult(v, br, {})
    rec = {"theorem": t, "p": _count(p), **res.as_dict()}
    value = "inapplicable" if res.value is None else res.value
    text = f"{value}  [{res.branch}]"
    for k, ok in sorted(res.hypotheses.items()):
        text += f"\n  {'yes' if ok else 'no '}  {k}"
    _emit(args, rec, text)
    return 0


def _expand(query: dict) -> list:
    """A query whose group or m is a list stands for one query per value."""
    keys = [k for k in ("group", "m") if isinstance(query.get(k), list)]
    if not keys:
        return [query]
    out = []
    for vals in _cartesian(*(query[k] for k in keys)):
        q = dict(query)
        q.update(zip(keys, vals))
        out.append(q)
    return out


def _sweep_row(q: dict, workers: int) -> dict:
    typ = q.get("type", "rho")
    g = parse_group(q["group"])
    H = parse_multiplicities(str(q.get("H", "1")))
    kind = Kind.parse(q.get("kind", "signed"))
    row = {"type": typ, "group": str(g), "kind": kind.value, "H": ",".join(map(str, H))}
    if typ == "sumset":
        A = parse_subset(g, q["A"])
        S = union_fold(A, H, kind)
        row.update(A=_braces(A), value=len(S), witness=_braces(S))
    elif typ == "rho":
        rq = RhoQuery(g, int(q["m"]), H, kind, q.get("filter", "all"))
        row.update(m=rq.m, filter=str(rq.filter))
        try:
            res = rho_parallel(rq, workers) if workers > 1 else rho(rq)
            row.update(value=res.value, witness=_braces(res.witness))
        except EmptyClassError:
            row.update(value="empty")
    else:
        raise CliError(f"unknown sweep query type {typ!r}")
    return row


def cmd_sweep(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        cfg = json.load(fh)
    queries = cfg["queries"] if isinstance(cfg, dict) else cfg
    workers = args.workers or default_workers()
    rows = []
    for q in queries:
        for one in _expand(q):
            row = _sweep_row(one, workers)
            row["index"] = len(rows)
            rows.append(row)
    out = _csv(rows, SWEEP_COLUMNS)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        print(out, end="")
    return 0


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="signsum", description="Signed and restricted signed sumsets.")
    sub = ap.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("sumset", help="compute an H-fold sumset")
    p.add_argument("-g", "--group", required=True, help="Z, Z12, Z2xZ4, F7, F3^2")
    p.add_argument("-A", "--set", required=True, help="element literals, e.g. 1,2,3 or (0,1),(1,1)")
    p.add_argument("-k", "--kind", default="plain", choices=[k.value for k in Kind])
    p.add_argument("-H", default="1", help="2, 1,3 or [0,3]")
    fmt(p)
    p.set_defaults(fn=cmd_sumset)

    p = sub.add_parser("rho", help="exhaustive minimum over m-subsets")
    p.add_argument("-g", "--group", required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-k", "--kind", default="signed", choices=[k.value for k in Kind])
    p.add_argument("-H", default="1")
    p.add_argument("--filter", default="all", help="all, sym, asym, nsym, classA, zero or sdeg=S")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-prune", action="store_true", help="disable automorphism pruning")
    p.add_argument("--max-search", type=int, default=MAX_SEARCH_SPACE)
    p.add_argument("--progress", type=float, default=None, metavar="SECONDS",
                   help="report progress to stderr at this interval (single worker)")
    fmt(p)
    p.set_defaults(fn=cmd_rho)

    p = sub.add_parser("verify", help="run catalog checks")
    p.add_argument("--check", action="append", default=None, help="check id or 'all' (repeatable)")
    p.add_argument("--grid", default=None, help="JSON object overriding grid keys of a single check")
    p.add_argument("--mode", choices=("exhaustive", "sampled"), default=None)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--count", type=int, default=None, help="sample size in sampled mode")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--no-timing", action="store_true", help="omit elapsed times")
    fmt(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("list-checks", help="list registered checks")
    fmt(p)
    p.set_defaults(fn=cmd_list_checks)

    p = sub.add_parser("construct", help="build an extremal set")
    p.add_argument("--recipe", required=True, choices=RECIPES)
    p.add_argument("-g", "--group", default="Z")
    p.add_argument("-A", "--set", default=None)
    p.add_argument("-H", default=None)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--m", "-m", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    fmt(p)
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("coeff", help="closed-form polynomial coefficient")
    p.add_argument("--h", type=int, required=True, choices=(2, 3, 4))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="also expand the polynomial")
    fmt(p)
    p.set_defaults(fn=cmd_coeff)

    p = sub.add_parser("bound", help="evaluate a lower-bound formula")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--p", default="inf", help="p(G), an integer or 'inf'")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--h", type=int, default=None)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--zero", action="store_true", help="0 is in A")
    fmt(p)
    p.set_defaults(fn=cmd_bound)

    p = sub.add_parser("sweep", help="run a JSON list of queries and write CSV")
    p.add_argument("config")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(fn=cmd_sweep, format="csv")
    return ap


def _glue_negative_literals(argv: list) -> list:
    """argparse takes ``-A -1,2`` for two flags; rewrite it as ``-A=-1,2``."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("-A", "--set") and i + 1 < len(argv) and re.match(r"-\d", argv[i + 1]):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_negative_literals(argv))
    if getattr(args, "check", "unset") is None:
        args.check = ["all"]
    if getattr(args, "workers", None) is not None and args.workers < 1:
        print("error: --workers must be positive", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except EnvelopeError as e:
        print(f"error: outside the supported envelope: {e}", file=sys.stderr)
        return 2
    except (GroupError, PreconditionError, EmptyClassError, UnknownCheckError, CliError,
            ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line frontend: identity sweeps, series expansion, module dimensions.

Exit codes: 0 success / all checks pass, 1 at least one verification failure,
2 usage or input error, 3 result not stabilized and --allow-unstable absent.
Set HYPERWEYL_THREADS to run sweep cases on a thread pool; output order stays
deterministic either way (cases are generated and printed in sorted order).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .coeffalg import CoeffAlgebra
from .hyper import (
    IDENTITY_IDS,
    collect,
    format_monomial,
    lambda_poly,
    verify_identity,
)
from .oracle import get_oracle
from .rootdata import build_root_datum, parse_type_string
from .weyl import (
    EvalData,
    Window,
    default_window,
    evaluation_table,
    relation_closure,
    result_to_json,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_UNSTABLE = 3


class UsageError(ValueError):
    pass


# -- shared argument plumbing ---------------------------------------------------

def _datum(type_string):
    try:
        series, rank = parse_type_string(type_string)
        return build_root_datum(series, rank)
    except ValueError as err:
        raise UsageError(str(err))


def _algebra(spec):
    try:
        return CoeffAlgebra.from_spec_string(spec)
    except ValueError as err:
        raise UsageError(str(err))


def _int_tuple(text, n, what):
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be a comma-separated integer list")
    if len(vals) != n:
        raise UsageError(f"{what} needs {n} entries, got {len(vals)}")
    return vals


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _thread_count():
    raw = os.environ.get("HYPERWEYL_THREADS", "")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# -- identity sweeps ----------------------------------------------------------------

@dataclass(frozen=True)
class SweepLimits:
    rmax: int = 3
    smax: int = 3
    kmax: int = 3
    lmax: int = 3
    adeg: int = 3
    count: int = 100
    seed: int = 0


def identity_cases(o, which, lim):
    """Deterministic parameter sweep for one identity id over one oracle.

    Cases come out sorted by their parameter tuples so reruns and parallel
    runs print in the same order.
    """
    A, d = o.algebra, o.datum
    roots = range(len(d.pos_roots))
    nodes = range(d.rank)
    mons = sorted(A.monomials_up_to_deg(lim.adeg))
    nonunit = [b for b in mons if b != A.unit()]
    cases = []
    if which == "basicrel":
        for alpha in roots:
            for a in mons:
                for b in mons:
                    for s in range(1, lim.smax + 1):
                        for r in range(1, min(s, lim.rmax) + 1):
                            cases.append({"alpha": alpha, "a": a, "b": b,
                                          "r": r, "s": s})
    elif which == "commutrels1":
        # [g2,g1] = -[g1,g2], so unordered pairs suffice for the degree bound
        sides = [(alpha, sign, a, k)
                 for alpha in roots for sign in "+-"
                 for a in mons for k in range(1, lim.kmax + 1)]
        for left in sides:
            for right in sides:
                if left > right:
                    continue
                alpha, s1, a, k = left
                beta, s2, b, l = right
                if alpha == beta and s1 != s2:
                    continue  # rank-one opposite pair is basicrel territory
                if l > lim.lmax:
                    continue
                cases.append({"alpha": alpha, "beta": beta, "sign1": s1,
                              "sign2": s2, "a": a, "b": b, "k": k, "l": l})
    elif which == "commutrels2":
        for alpha in roots:
            for k in range(1, lim.kmax + 1):
                for l in range(1, lim.lmax + 1):
                    cases.append({"alpha": alpha, "k": k, "l": l})
    elif which == "commutrels3":
        for i in nodes:
            for alpha in roots:
                for sign in "+-":
                    for a in mons:
                        for k in range(1, lim.kmax + 1):
                            for l in range(1, lim.lmax + 1):
                                cases.append({"i": i, "alpha": alpha,
                                              "sign": sign, "a": a,
                                              "k": k, "l": l})
    elif which == "commutrels4":
        for alpha in roots:
            for sign in "+-":
                for a in mons:
                    for k in range(1, lim.kmax + 1):
                        for l in range(1, lim.lmax + 1):
                            cases.append({"alpha": alpha, "sign": sign,
                                          "a": a, "k": k, "l": l})
    elif which == "commutrels5":
        for alpha in roots:
            for a in mons:
                for b in mons:
                    for r in range(1, lim.rmax + 1):
                        for k in range(1, lim.kmax + 1):
                            cases.append({"alpha": alpha, "a": a, "b": b,
                                          "r": r, "k": k})
    elif which == "a_k_reduction":
        for i in nodes:
            for a in nonunit:
                for k in range(1, lim.kmax + 1):
                    for r in range(1, lim.rmax + 1):
                        cases.append({"i": i, "a": a, "k": k, "r": r})
    elif which == "gAforms_integrality":
        cases.append({"count": lim.count, "seed": lim.seed,
                      "max_k": min(lim.kmax, 3), "max_deg": min(lim.adeg, 2),
                      "max_len": 3})
    else:
        raise UsageError(f"unknown identity id {which!r}; "
                         f"known: {', '.join(IDENTITY_IDS)}, all")
    return cases


def run_sweep(o, which, cases):
    """verify_identity over a case list; HYPERWEYL_THREADS > 1 fans out."""
    n = _thread_count()
    if n > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=n) as pool:
            return list(pool.map(lambda p: verify_identity(o, which, p), cases))
    return [verify_identity(o, which, p) for p in cases]


def _jsonable_params(params):
    return {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}


def cmd_verify(args):
    datum = _datum(args.type)
    algebra = _algebra(args.coeff)
    o = get_oracle(datum, algebra)
    lim = SweepLimits(rmax=args.rmax, smax=args.smax, kmax=args.kmax,
                      lmax=args.lmax, adeg=args.adeg,
                      count=args.count, seed=args.seed)
    ids = list(IDENTITY_IDS) if args.id == "all" else [args.id]
    blocks = []
    total = failures = 0
    for which in ids:
        cases = identity_cases(o, which, lim)
        reports = run_sweep(o, which, cases)
        bad = [r for r in reports if not r["pass"]]
        total += len(reports)
        failures += len(bad)
        blocks.append((which, len(reports), bad))
    if args.json:
        _emit({
            "type": datum.type_string(),
            "coeff": algebra.spec_string(),
            "cases": total,
            "pass": failures == 0,
            "identities": [{
                "id": which,
                "cases": n,
                "failures": [{"params": _jsonable_params(r["params"]),
                              "lhs": r["lhs"], "rhs": r["rhs"],
                              "residual": r["residual"]} for r in bad],
            } for which, n, bad in blocks],
        })
    else:
        for which, n, bad in blocks:
            for r in bad:
                print(f"FAIL {which} {r['params']}")
                print(f"  residual: {r['residual']}")
            if len(blocks) > 1:
                word = "all pass" if not bad else f"{len(bad)} failures"
                print(f"{which}: {n} cases, {word}")
        if failures:
            print(f"{total} cases, {failures} failures")
        else:
            print(f"{total} cases, all pass")
    return EXIT_OK if failures == 0 else EXIT_FAIL


# -- series expansion --------------------------------------------------------------

def _fmt_basis_elt(o, h):
    if not h:
        return "0"
    bits = []
    for m in sorted(h):
        c, ms = h[m], format_monomial(o, m)
        if not m:
            bits.append(str(c))
        elif c == 1:
            bits.append(ms)
        elif c == -1:
            bits.append(f"-{ms}")
        else:
            bits.append(f"{c}*{ms}")
    return " + ".join(bits)


def cmd_lambda(args):
    datum = _datum(args.type)
    algebra = _algebra(args.coeff)
    o = get_oracle(datum, algebra)
    if not 1 <= args.i <= datum.rank:
        raise UsageError(f"node index must be in 1..{datum.rank}")
    a = algebra.parse(args.a)
    orders = range(args.upto + 1) if args.upto is not None else [args.r]
    rows = [(r, collect(o, lambda_poly(o, args.i - 1, a, r))) for r in orders]
    if args.json:
        _emit({
            "type": datum.type_string(),
            "coeff": algebra.spec_string(),
            "i": args.i,
            "a": algebra.format(a),
            "orders": [{"r": r,
                        "element": [[format_monomial(o, m), str(h[m])]
                                    for m in sorted(h)]}
                       for r, h in rows],
        })
    else:
        for r, h in rows:
            text = _fmt_basis_elt(o, h)
            if len(rows) > 1:
                print(f"r={r}: {text}")
            else:
                print(text)
    return EXIT_OK


# -- module computations ----------------------------------------------------------

def load_eval_table(path, algebra):
    """EvalData from a JSON table file.

    Shape: {"lambda": [2], "c": [{"i": 1, "b": "t^2", "r": 1, "value": "3"}],
    "field": {"char": 5}}.  Node index i is 1-based, b parses through the
    coefficient algebra, value is an integer (string or number).
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as err:
        raise UsageError(f"cannot read eval table: {err}")
    except json.JSONDecodeError as err:
        raise UsageError(f"malformed eval table JSON: {err}")
    try:
        lam = tuple(int(x) for x in data["lambda"])
        char = int(data.get("field", {}).get("char", 0))
        c = {}
        for entry in data.get("c", []):
            i = int(entry["i"]) - 1
            b = algebra.parse(str(entry["b"]))
            r = int(entry["r"])
            val = int(str(entry["value"]))
            if val:
                c[(i, b, r)] = val
    except (KeyError, TypeError, ValueError) as err:
        raise UsageError(f"bad eval table entry: {err}")
    return EvalData(lam=lam, char=char, c=c)


def _parse_points(text, lam, rank):
    groups = text.split("/")
    if len(groups) != rank:
        raise UsageError(f"points preset needs {rank} node group(s) "
                         "separated by '/'")
    points = []
    for g in groups:
        try:
            points.append([int(x) for x in g.split(",")] if g else [])
        except ValueError:
            raise UsageError("points must be integers")
    return points


def _resolve_window(datum, lam, args):
    base = default_window(datum, lam, slack=args.slack)
    caps = base.exp_caps
    drop = base.drop_cap
    if getattr(args, "exp_caps", None):
        caps = _int_tuple(args.exp_caps, len(datum.pos_roots), "--exp-caps")
    if getattr(args, "drop_cap", None):
        drop = _int_tuple(args.drop_cap, datum.rank, "--drop-cap")
    return Window(caps, drop, args.slack)


def _print_result(res, args):
    if args.json:
        _emit(result_to_json(res))
    else:
        w = res.window
        print(f"type: {res.type_string}")
        print(f"lambda: {','.join(map(str, res.lam))}")
        print(f"coeff: {res.coeff}  char: {res.char}  eval: {res.eval_name}")
        print(f"dimension: {res.dimension}")
        print(f"stabilized: {str(res.stabilized).lower()}  (slack {w.slack})")
        print("character:")
        for mu in sorted(res.character, reverse=True):
            print(f"  {','.join(map(str, mu))}: {res.character[mu]}")
    if not res.stabilized and not args.allow_unstable:
        print("result did not stabilize; rerun with a larger --max-slack "
              "or pass --allow-unstable", file=sys.stderr)
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_weyl(args):
    datum = _datum(args.type)
    lam = _int_tuple(args.lam, datum.rank, "--lambda")
    window = _resolve_window(datum, lam, args)
    ev = EvalData(lam=lam, char=args.char)
    res = relation_closure(datum, lam, CoeffAlgebra("poly", 0), ev,
                           window=window, max_slack=args.max_slack)
    return _print_result(res, args)


def cmd_local_weyl(args):
    datum = _datum(args.type)
    algebra = _algebra(args.coeff)
    if args.eval_table:
        ev = load_eval_table(args.eval_table, algebra)
        lam = ev.lam
        if args.lam is not None and _int_tuple(args.lam, datum.rank, "--lambda") != lam:
            raise UsageError("--lambda disagrees with the eval table")
        if args.char is not None and args.char != ev.char:
            raise UsageError("--char disagrees with the eval table")
    else:
        if args.lam is None:
            raise UsageError("--lambda is required without --eval-table")
        lam = _int_tuple(args.lam, datum.rank, "--lambda")
        char = args.char if args.char is not None else 0
        if args.eval == "graded":
            ev = EvalData(lam=lam, char=char)
        elif args.eval.startswith("points:"):
            if algebra.spec_string() != "poly:1":
                raise UsageError("points preset needs --coeff poly:1")
            window = _resolve_window(datum, lam, args)
            degree = 64 + 8 * (max(window.exp_caps, default=0) + args.max_slack)
            points = _parse_points(args.eval[len("points:"):], lam, datum.rank)
            ev = EvalData(lam=lam, char=char,
                          c=evaluation_table(lam, points, degree))
        else:
            raise UsageError("--eval must be 'graded' or 'points:...'")
    window = _resolve_window(datum, lam, args)
    res = relation_closure(datum, lam, algebra, ev, window=window,
                           max_slack=args.max_slack)
    return _print_result(res, args)


def cmd_basis_check(args):
    datum = _datum(args.type)
    algebra = _algebra(args.coeff)
    o = get_oracle(datum, algebra)
    params = {"count": args.count, "seed": args.seed, "max_k": args.max_k,
              "max_deg": args.max_deg, "max_len": args.max_len}
    rep = verify_identity(o, "gAforms_integrality", params)
    if args.json:
        _emit({
            "type": datum.type_string(),
            "coeff": algebra.spec_string(),
            "count": args.count,
            "seed": args.seed,
            "pass": rep["pass"],
            "failure": rep["residual"],
        })
    elif rep["pass"]:
        print(f"{args.count} random products: integer coefficients, "
              "exact round-trip")
    else:
        print(f"FAIL: {rep['residual']}")
    return EXIT_OK if rep["pass"] else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------

def _add_common(sp):
    sp.add_argument("--type", default="A1", help="simple type, e.g. A1, A2")
    sp.add_argument("--json", action="store_true", help="emit JSON")


def _add_window(sp):
    sp.add_argument("--slack", type=int, default=2,
                    help="initial window slack (default 2)")
    sp.add_argument("--max-slack", type=int, default=8,
                    help="deepening bound for stabilization (default 8)")
    sp.add_argument("--exp-caps", help="per-root coefficient exponent caps, "
                    "comma list")
    sp.add_argument("--drop-cap", help="weight-drop cap in simple-root "
                    "coordinates, comma list")
    sp.add_argument("--allow-unstable", action="store_true",
                    help="exit 0 even when the result did not stabilize")


def build_parser():
    p = argparse.ArgumentParser(
        prog="hyperweyl",
        description="Exact hyperalgebra computations for map algebras: "
                    "straightening identities, Garland series, Weyl modules.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="sweep a straightening identity")
    _add_common(v)
    v.add_argument("--id", default="all",
                   help=f"identity id or 'all' ({', '.join(IDENTITY_IDS)})")
    v.add_argument("--coeff", default="poly:1",
                   help="coefficient algebra spec (default poly:1)")
    v.add_argument("--rmax", type=int, default=3)
    v.add_argument("--smax", type=int, default=3)
    v.add_argument("--kmax", type=int, default=3)
    v.add_argument("--lmax", type=int, default=3)
    v.add_argument("--adeg", type=int, default=3,
                   help="coefficient degree bound (default 3)")
    v.add_argument("--count", type=int, default=100,
                   help="random products for the integrality check")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(fn=cmd_verify)

    l = sub.add_parser("lambda", help="expand a Garland series coefficient")
    _add_common(l)
    l.add_argument("--coeff", default="poly:1")
    l.add_argument("--i", type=int, default=1, help="node index, 1-based")
    l.add_argument("--a", default="t", help="coefficient basis element")
    l.add_argument("--r", type=int, default=1, help="series order")
    l.add_argument("--upto", type=int, help="print all orders 0..UPTO instead")
    l.set_defaults(fn=cmd_lambda)

    w = sub.add_parser("weyl", help="Weyl module of the simple algebra")
    _add_common(w)
    w.add_argument("--lambda", dest="lam", required=True,
                   help="dominant weight, comma list")
    w.add_argument("--char", type=int, default=0)
    _add_window(w)
    w.set_defaults(fn=cmd_weyl)

    lw = sub.add_parser("local-weyl", help="local Weyl module of a map algebra")
    _add_common(lw)
    lw.add_argument("--coeff", default="poly:1")
    lw.add_argument("--lambda", dest="lam",
                    help="dominant weight, comma list")
    lw.add_argument("--char", type=int)
    lw.add_argument("--eval", default="graded",
                    help="'graded' or 'points:a,b/...' per node")
    lw.add_argument("--eval-table", help="JSON series-scalar table file")
    _add_window(lw)
    lw.set_defaults(fn=cmd_local_weyl)

    b = sub.add_parser("basis-check",
                       help="random straighten/round-trip integrality sweep")
    _add_common(b)
    b.add_argument("--coeff", default="poly:1")
    b.add_argument("--count", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--max-k", type=int, default=3)
    b.add_argument("--max-deg", type=int, default=2)
    b.add_argument("--max-len", type=int, default=3)
    b.set_defaults(fn=cmd_basis_check)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_USAGE if err.code else EXIT_OK
    try:
        return args.fn(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

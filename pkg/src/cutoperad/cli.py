"""Command-line interface.

Machine-readable results go to stdout (JSON, CSV, JSONL or SVG); short human
summaries go to stderr.  Exit status: 0 success, 1 verification failure or
"not equal", 2 usage or parse error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import assass, series
from .enumeration import (ShapeGenerator, count_by_enumeration, count_by_recurrence, crosscheck,
                          default_budget)
from .errors import BudgetExceeded, CutOperadError
from .operad import compose, partial_compose
from .signature import Signature, binary_signature
from .subdivision import LabelledSubdivision, to_json, to_sexpr
from .terms import equivalent, evaluate, parse_term

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def _sig(args):
    return Signature.load(args.sig) if args.sig else binary_signature(2)


def _emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2, default=str) + "\n")


def _note(msg):
    sys.stderr.write(msg + "\n")


def _budget(args):
    return args.budget if getattr(args, "budget", None) else default_budget()


# ---------------------------------------------------------------------------
# subcommands


def cmd_count(args):
    sig = _sig(args)
    rec = count_by_recurrence(sig, args.max)
    if args.brute_force:
        report = crosscheck(sig, args.max, _budget(args))
        rows = report["rows"]
        ok = report["pass"]
    else:
        rows = [{"arity": r["arity"], "recurrence": r["shapes"], "elements": r["elements"]}
                for r in rec.rows()]
        ok = True
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        _emit({"pass": ok, "rows": rows})
    _note("shapes: " + ", ".join(str(r.get("recurrence")) for r in rows)
          + ("" if ok else "  MISMATCH"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_enumerate(args):
    sig = _sig(args)
    gen = ShapeGenerator(sig, _budget(args))
    shapes = sorted(gen.iter_shapes(args.arity), key=to_sexpr)
    if args.emit == "jsonl":
        for s in shapes:
            sys.stdout.write(json.dumps(to_json(s)) + "\n")
    elif args.emit == "sexpr":
        for s in shapes:
            sys.stdout.write(to_sexpr(s) + "\n")
    else:
        _emit([to_json(s) for s in shapes])
    _note(f"{len(shapes)} shapes of arity {args.arity}")
    return EXIT_OK


def cmd_normalize(args):
    sig = _sig(args)
    e = evaluate(parse_term(args.term, sig), sig)
    if args.format == "json":
        _emit(to_json(e.tree))
    else:
        sys.stdout.write(to_sexpr(e.tree) + "\n")
    return EXIT_OK


def cmd_eq(args):
    sig = _sig(args)
    same = equivalent(parse_term(args.lhs, sig), parse_term(args.rhs, sig), sig)
    sys.stdout.write(("equal" if same else "not equal") + "\n")
    return EXIT_OK if same else EXIT_FAIL


def cmd_compose(args):
    sig = _sig(args)
    outer = evaluate(parse_term(args.outer, sig), sig)
    inners = [LabelledSubdivision(1) if s == "1" else evaluate(parse_term(s, sig), sig)
              for s in args.inner]
    if args.at is not None:
        if len(inners) != 1:
            raise CutOperadError("--at takes exactly one inner element")
        e = partial_compose(outer, args.at, inners[0])
    else:
        e = compose(outer, inners)
    sys.stdout.write(to_sexpr(e.tree) + "\n")
    return EXIT_OK


def _coeffs(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CutOperadError(f"expected a JSON array of numbers: {exc}") from exc
    if not isinstance(data, list):
        raise CutOperadError("expected a JSON array of numbers")
    from fractions import Fraction
    return [Fraction(str(x)) for x in data]


def _jsonable(xs):
    return [x if isinstance(x, int) else str(x) for x in xs]


def cmd_series(args):
    if args.op == "invert":
        g = series.Series.from_list(_coeffs(args.coeffs), args.order)
        f = series.series_inverse(g)
        _emit({"inverse": _jsonable(f.to_list())})
        return EXIT_OK
    if args.op == "dirichlet":
        a = series.Dirichlet.from_list(_coeffs(args.a))
        b = series.Dirichlet.from_list(_coeffs(args.b))
        _emit({"product": _jsonable(series.dirichlet_product(a, b).to_list())})
        return EXIT_OK
    sig = _sig(args)
    counts = count_by_enumeration(sig, args.max, _budget(args)).shapes
    report = series.euler_check(sig, args.max, counts)
    report["g"], report["f"] = _jsonable(report["g"]), _jsonable(report["f"])
    _emit(report)
    _note("euler check " + ("passed" if report["pass"] else "FAILED"))
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_verify(args):
    from .homology import verify_resolution
    sig = _sig(args)
    report = verify_resolution(sig, args.max_arity, check_ranks=args.ranks,
                               budget=_budget(args))
    _emit(report)
    for a in report["arities"]:
        _note(f"arity {a['arity']}: dims {a['dims']} "
              + ("ok" if a["pass"] else f"FAILED {a['failures'][:1]}"))
    return EXIT_OK if report["pass"] else EXIT_FAIL


def cmd_assass(args):
    src, dst = assass.parse(args.src), assass.parse(args.dst)
    res = assass.reachable(src, dst, args.budget, args.max_memory_mb, args.cache)
    _emit(res.to_json())
    if res.found:
        _note(f"FOUND: {len(res.path) - 1} moves, {res.states} states")
        return EXIT_OK
    _note(f"inconclusive: {res.reason} after {res.states} states")
    return EXIT_BUDGET


def cmd_render(args):
    from .render import render2d
    sig = _sig(args)
    e = evaluate(parse_term(args.term, sig), sig)
    svg = render2d(e, sig)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_selftest(args):
    from .checks import completeness_trials, operad_axiom_trials, soundness_trials
    sig = _sig(args)
    report = {"seed": args.seed,
              "completeness": completeness_trials(sig, args.trials, args.seed),
              "soundness": soundness_trials(sig, args.trials, args.seed + 1),
              "operad_axioms": operad_axiom_trials(sig, max(1, args.trials // 10), args.seed + 2)}
    ok = (report["completeness"]["failures"] == 0 and report["soundness"]["failures"] == 0
          and not any(report["operad_axioms"]["failures"].values()))
    report["pass"] = ok
    _emit(report)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="cutoperad", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=1,
                   help="parallelism cap (computations currently run in one thread)")
    sub = p.add_subparsers(dest="command", required=True)

    def with_sig(sp):
        sp.add_argument("--sig", help="signature JSON file (default: d=2, binary h and v)")
        return sp

    def with_budget(sp):
        sp.add_argument("--budget", type=int, default=None,
                        help="node/state budget (default from CUTOPERAD_BUDGET or 10^7)")
        return sp

    sp = with_budget(with_sig(sub.add_parser("count", help="shape counts by arity")))
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--brute-force", action="store_true",
                    help="also enumerate and compare with the functional equation")
    sp.add_argument("--format", choices=["json", "csv"], default="json")
    sp.set_defaults(fn=cmd_count)

    sp = with_budget(with_sig(sub.add_parser("enumerate", help="list canonical shapes")))
    sp.add_argument("--arity", type=int, required=True)
    sp.add_argument("--emit", choices=["jsonl", "json", "sexpr"], default="jsonl")
    sp.set_defaults(fn=cmd_enumerate)

    sp = with_sig(sub.add_parser("normalize", help="canonical form of a term"))
    sp.add_argument("term")
    sp.add_argument("--format", choices=["sexpr", "json"], default="sexpr")
    sp.set_defaults(fn=cmd_normalize)

    sp = with_sig(sub.add_parser("eq", help="decide equality of two terms"))
    sp.add_argument("lhs")
    sp.add_argument("rhs")
    sp.set_defaults(fn=cmd_eq)

    sp = with_sig(sub.add_parser("compose", help="operadic composition of elements"))
    sp.add_argument("outer")
    sp.add_argument("inner", nargs="+", help="inner elements; '1' is the unit")
    sp.add_argument("--at", type=int, default=None, help="partial composition at this box")
    sp.set_defaults(fn=cmd_compose)

    sp = sub.add_parser("series", help="series utilities")
    ssub = sp.add_subparsers(dest="op", required=True)
    s1 = ssub.add_parser("invert", help="compositional inverse of [g_1, g_2, ...]")
    s1.add_argument("coeffs")
    s1.add_argument("--order", type=int, default=None)
    s1.set_defaults(fn=cmd_series)
    s2 = ssub.add_parser("dirichlet", help="Dirichlet product of [a_1, ...] and [b_1, ...]")
    s2.add_argument("a")
    s2.add_argument("b")
    s2.set_defaults(fn=cmd_series)
    s3 = with_budget(with_sig(ssub.add_parser("euler-check", help="Euler characteristic check")))
    s3.add_argument("--max", type=int, default=8)
    s3.set_defaults(fn=cmd_series)

    sp = with_budget(with_sig(sub.add_parser("verify-resolution",
                                             help="exhaustive checks of the resolution")))
    sp.add_argument("--max-arity", type=int, required=True)
    sp.add_argument("--ranks", dest="ranks", action="store_true", default=True,
                    help="compute homology ranks (default)")
    sp.add_argument("--no-ranks", dest="ranks", action="store_false")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("assass", help="interchange rewriting for two associative products")
    asub = sp.add_subparsers(dest="op", required=True)
    a1 = asub.add_parser("search", help="bidirectional search between two terms")
    a1.add_argument("--src", required=True)
    a1.add_argument("--dst", required=True)
    a1.add_argument("--budget", type=int, default=assass.DEFAULT_STATE_BUDGET)
    a1.add_argument("--max-memory-mb", type=float, default=None)
    a1.add_argument("--cache", default=None, help="directory for cached results")
    a1.set_defaults(fn=cmd_assass)

    sp = with_sig(sub.add_parser("render", help="SVG drawing of a 2-d element"))
    sp.add_argument("term")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_render)

    sp = with_sig(sub.add_parser("selftest", help="seeded randomized normal-form trials"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1000)
    sp.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.threads < 1:
        _note("--threads must be positive")
        return EXIT_USAGE
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        _note(f"budget exhausted: {exc}")
        return EXIT_BUDGET
    except (CutOperadError, ValueError) as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

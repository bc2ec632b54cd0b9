"""Command line front end: ``torusgrowth <command> [flags]``.

Exit codes: 0 success, 1 usage error, 2 certification mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time

from .group import BudgetExceeded, GroupElement, GroupParams, bfs_ball
from .laurent import LaurentPoly, evaluate_rep, format_poly, n_length, parse_poly, word_representative
from .reduction import ReductionError, reduce_full
from .series import CertificationError, assemble_growth_series
from .successor import ClassificationError, classify, enumerate_reduced, stream_csv, succ_effect, successor

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, default=2, help="trace parameter, d = 2k+1 (k >= 2)")
    common.add_argument("--n", type=int, default=0, help="t-exponent / level")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="torusgrowth", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ball", parents=[common], help="BFS sphere and ball sizes")
    s.add_argument("--radius", type=int, required=True)

    s = sub.add_parser("dist", parents=[common], help="word length of an element")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--poly", help="representative as 'lo=<low>;c_low,...'")
    g.add_argument("--word", help="word over a A b B t T")
    s.add_argument("--radius", type=int, default=10, help="BFS radius for the oracle distance")

    s = sub.add_parser("reduce", parents=[common], help="rewrite to an n-reduced pair")
    s.add_argument("--poly", required=True)
    s.add_argument("--trace", action="store_true")

    s = sub.add_parser("classify", parents=[common], help="n-type and n-class")
    s.add_argument("--poly", required=True)

    s = sub.add_parser("succ", parents=[common], help="successor and its effect")
    s.add_argument("--poly", required=True)

    s = sub.add_parser("enumerate", parents=[common], help="successor stream as CSV")
    s.add_argument("--max-length", type=int, required=True)

    for name, hlp in (("series", "growth series as a rational function"),
                      ("verify", "certify series coefficients against BFS")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("--mode", choices=("ball", "sphere"), default="sphere")
        if name == "series":
            s.add_argument("--verify-to", type=int, default=8)
            s.add_argument("--unchecked", action="store_true")
        else:
            s.add_argument("--radius", type=int, required=True)
    return p


def _poly(text: str) -> LaurentPoly:
    try:
        return parse_poly(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _emit(obj: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(list(obj))
    w.writerow([json.dumps(v) if isinstance(v, (list, dict)) else v for v in obj.values()])


def _cmd_ball(a, out):
    table = bfs_ball(GroupParams(a.k), a.radius)
    out.write(table.to_json() + "\n" if a.format == "json" else table.to_csv())


def _cmd_dist(a, out):
    params = GroupParams(a.k)
    if a.word is not None:
        F, n = word_representative(a.word)
    else:
        F, n = _poly(a.poly), a.n
    x = evaluate_rep(params, F)
    R = reduce_full(F, n, a.k)
    table = bfs_ball(params, a.radius)
    d = table.distance(GroupElement(n, *x))
    _emit({"k": a.k, "x": list(x), "n": n, "reduced": format_poly(R),
           "reduced_length": n_length(R, n)[0], "bfs_distance": d}, a.format, out)


def _cmd_reduce(a, out):
    F = _poly(a.poly)
    steps = []
    R = reduce_full(F, a.n, a.k, trace=steps.append if a.trace else None)
    obj = {"input": format_poly(F), "n": a.n, "reduced": format_poly(R),
           "length_before": n_length(F, a.n)[0], "length_after": n_length(R, a.n)[0]}
    if a.trace:
        obj["trace"] = [
            {"rule": str(s.violation), "before": format_poly(s.before), "after": format_poly(s.after),
             "length_before": s.length_before, "length_after": s.length_after, "mirrored": s.mirrored}
            for s in steps
        ]
    _emit(obj, a.format, out)


def _cmd_classify(a, out):
    c = classify(_poly(a.poly), a.n, a.k)
    _emit({"poly": a.poly, "n": a.n, "type": str(c.type), "class": str(c.cls) if c.cls else None},
          a.format, out)


def _cmd_succ(a, out):
    P = _poly(a.poly)
    S = successor(P, a.n, a.k)
    eff = succ_effect(P, a.n, a.k)
    _emit({"poly": a.poly, "n": a.n, "successor": format_poly(S), "length_delta": eff[0],
           "group_step": str(eff[1])}, a.format, out)


def _cmd_enumerate(a, out):
    if a.format == "csv":
        for line in stream_csv(a.n, a.k, a.max_length):
            out.write(line)
        return
    for item in enumerate_reduced(a.n, a.k, a.max_length):
        out.write(json.dumps({"index": item.index, "poly": format_poly(item.poly),
                              "class": str(item.cls) if item.cls else None, "type": str(item.type),
                              "length": item.length}) + "\n")


def _cmd_series(a, out):
    res = assemble_growth_series(a.k, a.verify_to, mode=a.mode, unchecked=a.unchecked)
    out.write(res.to_json() + "\n" if a.format == "json" else res.to_csv())


def _cmd_verify(a, out):
    t0 = time.perf_counter()
    table = bfs_ball(GroupParams(a.k), a.radius)
    t_bfs = time.perf_counter() - t0
    res = assemble_growth_series(a.k, a.radius, mode=a.mode, unchecked=True)
    expected = table.sphere_sizes if a.mode == "sphere" else table.ball_sizes
    rows = [(r, expected[r], res.coefficients[r]) for r in range(a.radius + 1)]
    bad = [r for r, e, g in rows if e != g]
    if a.format == "json":
        out.write(json.dumps({"k": a.k, "radius": a.radius, "mode": a.mode, "ok": not bad,
                              "rows": [{"r": r, "bfs": e, "series": g} for r, e, g in rows],
                              "numerator": res.series.num.c, "denominator": res.series.den.c}) + "\n")
    else:
        out.write(f"k={a.k}  mode={a.mode}  radius={a.radius}  bfs {t_bfs:.1f}s\n")
        out.write(f"{'r':>3} {'bfs':>10} {'series':>10}  ok\n")
        for r, e, g in rows:
            out.write(f"{r:>3} {e:>10} {g:>10}  {'yes' if e == g else 'NO'}\n")
        out.write(f"denominator degree {res.series.den.degree}; "
                  f"{'all radii agree' if not bad else f'first mismatch at r={bad[0]}'}\n")
    if bad:
        r = bad[0]
        raise CertificationError(a.k, r, expected[r], res.coefficients[r], a.mode)


_COMMANDS = {
    "ball": _cmd_ball, "dist": _cmd_dist, "reduce": _cmd_reduce, "classify": _cmd_classify,
    "succ": _cmd_succ, "enumerate": _cmd_enumerate, "series": _cmd_series, "verify": _cmd_verify,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = _parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if a.command == "verify" and a.format == "json" and "--format" not in (argv or sys.argv):
        a.format = "table"
    try:
        GroupParams(a.k)
        _COMMANDS[a.command](a, out)
    except CertificationError as e:
        sys.stderr.write(json.dumps({"error": "certification mismatch", **e.as_dict()}) + "\n")
        return EXIT_MISMATCH
    except (UsageError, ValueError, ClassificationError, ReductionError, BudgetExceeded) as e:
        sys.stderr.write(f"torusgrowth {a.command}: {e}\n")
        return EXIT_USAGE
    return EXIT_OK


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()

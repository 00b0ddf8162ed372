"""Command-line interface: ``python -m qsing <command> ...``.

Exit codes: 0 success, 1 domain / unsupported-fragment / internal-consistency
errors (and failing verify suites), 2 usage and parse errors. Every error is
printed to stderr as ``error[<category>]: <message>``.
"""

from __future__ import annotations

import argparse
import sys

from .diffops import LogContext, diff_ideal, diff_plus_ideal, log_diff_plus_ideal
from .errors import QsingError, UsageError
from .ffpoly import Ring, check_prime, q_expand, strip_q_power
from .geom import a_transform_module, blowup_chart, total_transform_module
from .ideals import Ideal
from .jobs import load_job
from .parse import parse_monomial_exp, parse_name_list, parse_point, parse_poly, parse_vars
from .qdiff import run_sequence
from .qmod import (candidate_points, eta_at, is_permissible_center, max_a_for_center, max_over,
                   normal_form, q_order_at, sing_test)
from .report import LEVELS, fmt_value, render_json, render_text
from .verify import SUITES, VerifyConfig, run_suites


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ring_args(sp, gens=True, at=False):
    sp.add_argument("--p", type=int, required=True, help="prime characteristic")
    sp.add_argument("--e", type=int, default=1, help="q = p^e (default 1)")
    sp.add_argument("--vars", required=True, help="variables, e.g. x1..x5 or x,y,z")
    if gens:
        sp.add_argument("--gen", action="append", required=True, metavar="EXPR",
                        help="generator polynomial (repeatable)")
    if at:
        sp.add_argument("--at", action="append", metavar="POINT",
                        help="origin | point:a1,...,an | generic:v1,... (repeatable)")
        sp.add_argument("--box", type=int, default=2,
                        help="rational candidates use coordinates below this bound")
        sp.add_argument("--codim", type=int, default=None,
                        help="largest codimension of generic candidates")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="qsing", description="Singularity invariants of O^q-modules over F_p.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("qexpand", help="q-expansion buckets and the non-q-power part")
    _ring_args(sp)

    sp = sub.add_parser("qorder", help="q-order nu^(q) of the module at points")
    _ring_args(sp, at=True)

    sp = sub.add_parser("eta", help="eta of the module at points (or its maximum over candidates)")
    _ring_args(sp, at=True)

    sp = sub.add_parser("diff", help="Diff^i_+ of the module, Diff^i of an ideal, or the log variant")
    _ring_args(sp)
    sp.add_argument("--i", type=int, required=True, dest="order")
    sp.add_argument("--ideal", action="store_true", help="treat generators as an ideal (gamma = 0 included)")
    sp.add_argument("--lambda", dest="lam", default=None, help="log hypersurfaces, e.g. x1,x2")
    sp.add_argument("--L", default=None, help="monomial L (default: product of the lambda variables)")

    sp = sub.add_parser("sing", help="is the point in Sing(M, a)?")
    _ring_args(sp, at=True)
    sp.add_argument("--a", type=int, required=True)

    sp = sub.add_parser("permissible", help="is V(center) permissible for (M, a)?")
    _ring_args(sp)
    sp.add_argument("--center", required=True, help="variables of the center, e.g. x1,x2")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--a", type=int)
    g.add_argument("--max", action="store_true", help="print the largest permissible a")

    sp = sub.add_parser("blowup", help="total transform and a-transform on blowup charts")
    _ring_args(sp)
    sp.add_argument("--center", required=True)
    sp.add_argument("--chart", default="all", help="chart variable, or 'all'")
    sp.add_argument("--a", type=int, default=None, help="also print the a-transform")

    sp = sub.add_parser("run", help="run a sequence job file")
    sp.add_argument("job")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--verbosity", choices=LEVELS, default=None,
                    help="text detail level (default from QSING_VERBOSITY, else normal)")

    sp = sub.add_parser("verify", help="run the randomized verification suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--scale", type=float, default=1.0, help="multiply case counts")
    sp.add_argument("--suite", action="append", choices=sorted(SUITES),
                    help="restrict to these suites (repeatable)")
    return ap


def _ring(args) -> Ring:
    if args.e < 1:
        raise UsageError("--e must be >= 1")
    return Ring(check_prime(args.p), parse_vars(args.vars))


def _module(args, ring):
    return normal_form([parse_poly(g, ring) for g in args.gen], args.e, ring=ring)


def _points(args, ring):
    return [parse_point(s, ring) for s in args.at] if args.at else None


def _cmd_qexpand(args, out):
    ring = _ring(args)
    for src in args.gen:
        f = parse_poly(src, ring)
        exp = q_expand(f, args.e)
        print(f"f = {f}", file=out)
        for alpha in sorted(exp.buckets, key=lambda a: (sum(a), a)):
            print(f"  bucket {','.join(map(str, alpha))}: {exp.buckets[alpha]}", file=out)
        plus, is_power = strip_q_power(f, args.e)
        print(f"  f+ = {plus}", file=out)
        print(f"  q-th power: {'yes' if is_power else 'no'}", file=out)


def _pointwise(args, out, fn):
    ring = _ring(args)
    M = _module(args, ring)
    pts = _points(args, ring)
    if pts is None:
        values = {pt: fn(M, pt) for pt in candidate_points(ring, args.box, args.codim)}
        best, locus = max_over(values)
        where = "; ".join(pt.to_str(ring.names) for pt in locus)
        print(f"max over candidates = {fmt_value(best)}, attained along: {where}", file=out)
        return
    if len(pts) == 1:
        print(fmt_value(fn(M, pts[0])), file=out)
        return
    for pt in pts:
        print(f"{pt.to_str(ring.names)}: {fmt_value(fn(M, pt))}", file=out)


def _cmd_diff(args, out):
    ring = _ring(args)
    gens = [parse_poly(g, ring) for g in args.gen]
    if args.ideal:
        if args.lam is not None:
            raise UsageError("--ideal and --lambda cannot be combined")
        if args.order < 0:
            raise UsageError("--i must be >= 0")
        print(diff_ideal(Ideal(ring, gens), args.order), file=out)
        return
    M = normal_form(gens, args.e, ring=ring)
    if args.lam is None:
        print(diff_plus_ideal(M, args.order), file=out)
        return
    lam = frozenset(parse_name_list(args.lam, ring))
    if args.L is not None:
        L = parse_monomial_exp(args.L, ring)
    else:
        L = tuple(1 if j in lam else 0 for j in range(ring.nvars))
    print(log_diff_plus_ideal(M, LogContext(ring, lam, L), args.order), file=out)


def _cmd_sing(args, out):
    ring = _ring(args)
    M = _module(args, ring)
    pts = _points(args, ring)
    if not pts:
        raise UsageError("sing needs at least one --at point")
    for pt in pts:
        ans = "yes" if sing_test(M, args.a, pt) else "no"
        print(ans if len(pts) == 1 else f"{pt.to_str(ring.names)}: {ans}", file=out)


def _cmd_permissible(args, out):
    ring = _ring(args)
    M = _module(args, ring)
    center = parse_name_list(args.center, ring)
    if args.max:
        print(max_a_for_center(M, center), file=out)
    else:
        print("yes" if is_permissible_center(M, args.a, center) else "no", file=out)


def _cmd_blowup(args, out):
    ring = _ring(args)
    M = _module(args, ring)
    center = sorted(parse_name_list(args.center, ring))
    charts = center if args.chart == "all" else [ring.index(args.chart)]
    for t in charts:
        c = blowup_chart(ring, center, t)
        names = c.names_out
        print(f"{c}:", file=out)
        print(f"  total transform: {total_transform_module(M, c).to_str(names)}", file=out)
        if args.a is not None:
            print(f"  {args.a}-transform: {a_transform_module(M, c, args.a).to_str(names)}", file=out)


def _cmd_run(args, out):
    report = run_sequence(load_job(args.job))
    if args.format == "json":
        out.write(render_json(report))
    else:
        out.write(render_text(report, args.verbosity))
    return 1 if report.consistency_failures else 0


def _cmd_verify(args, out):
    results = run_suites(VerifyConfig(seed=args.seed, scale=args.scale), args.suite)
    for r in results:
        print(r.line(), file=out)
        for msg in r.failures:
            print(f"    {msg}", file=out)
    # the log-operator oracle is informational: it never fails the command
    blocking = [r for r in results if not r.ok and r.name != "log-operator oracle"]
    return 1 if blocking else 0


COMMANDS = {
    "qexpand": _cmd_qexpand,
    "qorder": lambda a, o: _pointwise(a, o, q_order_at),
    "eta": lambda a, o: _pointwise(a, o, eta_at),
    "diff": _cmd_diff,
    "sing": _cmd_sing,
    "permissible": _cmd_permissible,
    "blowup": _cmd_blowup,
    "run": _cmd_run,
    "verify": _cmd_verify,
}


def run_cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out) or 0
    except QsingError as exc:
        print(f"error[{exc.category}]: {exc}", file=err)
        return 2 if exc.category in ("usage", "parse") else 1
    except OverflowError as exc:
        print(f"error[domain]: {exc}", file=err)
        return 1


def main():
    sys.exit(run_cli())

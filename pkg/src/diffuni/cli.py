"""Command-line front end.

Exit codes: 0 success, 1 check/suite failure, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from datetime import datetime, timezone

from . import bounds, geometry, suites
from .funcspace import (
    PolyFunc,
    format_function,
    interpolate,
    is_normalized,
    normalize,
    parse_function,
    parse_table,
)
from .gf2m import GF2m, load_default_moduli
from .mvpoly import format_tripoly, pf_polynomial
from .uniformity import (
    FieldTooLarge,
    ddt_table,
    delta_exhaustive,
    delta_monomial,
    delta_sampled,
    delta,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _field(args) -> GF2m:
    if args.m is None:
        raise UsageError("--m is required")
    modulus = args.mod
    if modulus is None and args.moduli_file:
        modulus = load_default_moduli(args.moduli_file)[args.m]
    return GF2m(args.m, modulus)


def _function(args, F: GF2m) -> PolyFunc:
    if args.func and args.table:
        raise UsageError("give either --func or --table, not both")
    if args.func:
        return parse_function(F, args.func)
    if args.table:
        with open(args.table) as fh:
            return interpolate(F, parse_table(F, fh))
    raise UsageError("--func or --table is required")


def _config(args) -> dict:
    keys = ("command", "m", "mod", "func", "table", "d", "seed", "alpha_budget",
            "mode", "cross_check", "suite", "format")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def _emit(args, report: dict) -> None:
    report["config"] = _config(args)
    if not args.no_timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if args.format == "text":
        for k, v in report.items():
            print(f"{k}: {json.dumps(v)}")
    else:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")


def _function_info(f: PolyFunc) -> dict:
    return {"function": format_function(f), "degree": f.degree, "normalized": is_normalized(f)}


def cmd_delta(args) -> int:
    F = _field(args)
    f = _function(args, F)
    if args.format == "csv":
        table = ddt_table(f)
        w = csv.writer(sys.stdout)
        w.writerow(["alpha"] + [f"{b:#x}" for b in range(F.q)])
        for a, row in enumerate(table):
            w.writerow([f"{a:#x}"] + [int(c) for c in row])
        return EXIT_OK
    if args.mode == "exhaustive":
        r = delta_exhaustive(f)
    elif args.mode == "monomial":
        d = f.monomial_degree()
        if d is None:
            raise UsageError("--mode monomial needs a single-term function")
        r = delta_monomial(d, F)
    elif args.mode == "sampled":
        r = delta_sampled(f, args.alpha_budget, args.seed)
    else:
        r = delta(f, alpha_budget=args.alpha_budget, seed=args.seed)
    out = r.to_dict()
    out.update(_function_info(f))
    _emit(args, out)
    return EXIT_OK


def cmd_geom(args) -> int:
    F = _field(args)
    f = _function(args, F)
    r = geometry.contained_in_V(f)
    if args.count:
        r.x_point_count = geometry.x_point_count(normalize(f))
    out = r.to_dict()
    out.update(_function_info(f))
    status = EXIT_OK
    if args.cross_check:
        v = geometry.equivalence_verdicts(f)
        out["cross_check"] = v
        out["agree"] = len(set(v.values())) == 1
        if not out["agree"]:
            status = EXIT_FAIL
    _emit(args, out)
    return status


def cmd_curve(args) -> int:
    if args.d is None or args.m is None:
        raise UsageError("--d and --m are required")
    F = _field(args)
    n = geometry.proj_curve_points(args.d, F)
    out = {"d": args.d, "m": args.m, "count": n, "field": F.to_dict()}
    if args.d >= 5 and args.d % 2:
        g = bounds.arithmetic_genus(args.d)
        lo, hi = bounds.weil_interval(F.q, g)
        out.update(genus=g, weil_interval=[lo, hi], within_interval=lo <= n <= hi)
    checks = geometry.structural_checks(args.d, F) if F.m <= geometry.STRUCTURAL_MAX_M else None
    out["structural_checks"] = checks.to_dict() if checks else None
    _emit(args, out)
    return EXIT_OK


def cmd_predict(args) -> int:
    if args.d is None or args.m is None:
        raise UsageError("--d and --m are required")
    r = bounds.bound_report(args.d, args.m)
    out = r.to_dict()
    if not r.hypotheses_met:
        out["note"] = "theorem hypotheses unmet: d is not 2^r - 1 with r >= 3"
    _emit(args, out)
    return EXIT_OK


def cmd_pf(args) -> int:
    F = _field(args)
    f = _function(args, F)
    print(format_tripoly(pf_polynomial(f)))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in suites.SUITES:
        print("unknown suite; available: " + ", ".join(suites.SUITES), file=sys.stderr)
        return EXIT_USAGE
    kwargs = {}
    if args.seed is not None and args.suite in ("equivalence", "invariances", "pf", "lawe"):
        kwargs["seed"] = args.seed
    if args.m is not None and args.suite in ("equivalence", "invariances", "pf", "oracles"):
        kwargs["ms"] = (args.m,)
    cases = suites.run_suite(args.suite, **kwargs)
    for c in cases:
        print(c.line())
    failed = sum(not c.ok for c in cases)
    print(f"{args.suite}: {len(cases) - failed}/{len(cases)} ok")
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, help="field degree (q = 2^m)")
    common.add_argument("--mod", help="irreducible modulus in hex, e.g. 0x11B")
    common.add_argument("--moduli-file", help="alternative 'm: hex' default modulus table")
    common.add_argument("--func", help='function, e.g. "x^7" or "0x3*x^7+x^5"')
    common.add_argument("--table", help="file with q hex values, one per line")
    common.add_argument("--d", type=int, help="monomial degree")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--no-timestamp", action="store_true")

    p = argparse.ArgumentParser(prog="diffuni", description="Differential uniformity over F_{2^m}.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("delta", parents=[common], help="differential uniformity of a function")
    s.add_argument("--alpha-budget", type=int, default=10_000)
    s.add_argument("--mode", choices=("auto", "exhaustive", "monomial", "sampled"), default="auto")
    s.set_defaults(run=cmd_delta)

    s = sub.add_parser("geom", parents=[common], help="is X(F_q) inside the seven hyperplanes?")
    s.add_argument("--cross-check", action="store_true")
    s.add_argument("--count", action="store_true", help="also count #X(F_q) (m <= 7)")
    s.set_defaults(run=cmd_geom)

    s = sub.add_parser("curve", parents=[common], help="points of P_{x^d} = 0 and structural checks")
    s.set_defaults(run=cmd_curve)

    s = sub.add_parser("predict", parents=[common], help="threshold inequalities for (d, m)")
    s.set_defaults(run=cmd_predict)

    s = sub.add_parser("pf", parents=[common], help="print P_f term by term")
    s.set_defaults(run=cmd_pf)

    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("--suite", required=True)
    s.set_defaults(run=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is None and args.command != "verify":
        args.seed = 0
    try:
        return args.run(args)
    except FieldTooLarge as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, ValueError) as exc:
        # ParseError, FieldError and DegenerateFunction are ValueErrors too
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: evaluate expressions, run law suites, benchmark.

Exit codes: 0 success, 1 law failure, 2 usage or parse error.  The RB_SEED
environment variable overrides the default law-suite seed.  All JSON output
carries a top-level {"schema": "rb-shuffle/1"} tag; the check command's JSON
is byte-stable for a fixed (seed, configuration).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from math import comb

from . import algebra, exprs, laws
from .algebra import Poly, ShaHandle
from .coeffs import Ring, RingError, parse_ring, parse_scalar
from .exprs import EvalContext, EvalError, ParseError
from .freerb import Tensor

SCHEMA = "rb-shuffle/1"
BENCH_MAX = 8


def _json_print(obj: dict) -> None:
    obj = {"schema": SCHEMA, **obj}
    print(json.dumps(obj, sort_keys=True))


def _ring_of(args) -> Ring:
    try:
        return parse_ring(args.ring)
    except (RingError, ValueError) as e:
        raise SystemExit(_usage_error(str(e)))


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


def _context(args, ring: Ring) -> EvalContext:
    lam_text = args.weight if args.weight is not None else "0"
    try:
        lam = parse_scalar(lam_text, ring)
    except (RingError, ValueError) as e:
        raise SystemExit(_usage_error(f"bad weight {lam_text!r}: {e}"))
    return EvalContext(ring=ring, weight=lam, precision=args.precision,
                       rb_choice=args.rb)


def _declared_handle(args, ring: Ring, ctx: EvalContext):
    try:
        return exprs.parse_handle(args.handle, ring, ctx.weight, ctx.precision)
    except (ParseError, ValueError) as e:
        raise SystemExit(_usage_error(f"bad handle {args.handle!r}: {e}"))


def cmd_eval(args) -> int:
    ring = _ring_of(args)
    ctx = _context(args, ring)
    handle = _declared_handle(args, ring, ctx)
    try:
        value = exprs.eval_text(args.expr, handle, ctx)
    except ParseError as e:
        return _usage_error(str(e))
    except (EvalError, ValueError) as e:
        return _usage_error(str(e))
    if args.json:
        _json_print({"handle": str(value.handle), "ring": str(ring),
                     "weight": str(ctx.weight), "value": value.to_json()})
    else:
        print(value)
    return 0


def cmd_repl(args) -> int:
    ring = _ring_of(args)
    ctx = _context(args, ring)
    handle = _declared_handle(args, ring, ctx)
    print(f"carrier {handle}; :handle H switches, :quit leaves")
    while True:
        try:
            line = input("rb> ").strip()
        except EOFError:
            print()
            return 0
        if not line:
            continue
        if line in (":quit", ":q"):
            return 0
        if line.startswith(":handle"):
            spec = line[len(":handle"):].strip()
            try:
                handle = exprs.parse_handle(spec, ring, ctx.weight, ctx.precision)
                print(f"carrier {handle}")
            except (ParseError, ValueError) as e:
                print(f"error: {e}")
            continue
        try:
            print(exprs.eval_text(line, handle, ctx))
        except (ParseError, EvalError, ValueError) as e:
            print(f"error: {e}")
    return 0


def cmd_check(args) -> int:
    ring = _ring_of(args)
    if args.weight is not None:
        try:
            parse_scalar(args.weight, ring)
        except (RingError, ValueError) as e:
            return _usage_error(f"bad weight {args.weight!r}: {e}")
        lambdas: tuple[str, ...] = (args.weight,)
    else:
        lambdas = laws.default_lambdas(ring)
    cfg = laws.SampleConfig(ring=ring, lambdas=lambdas, precision=args.precision)
    names = args.suite or None
    try:
        reports = laws.run_all(args.seed, cfg, names)
    except KeyError as e:
        return _usage_error(e.args[0])
    if args.json:
        _json_print({"seed": args.seed, "ring": str(ring),
                     "lambdas": list(lambdas),
                     "reports": [r.to_json() for r in reports]})
    else:
        for r in reports:
            mark = "PASS" if r.passed else "FAIL"
            print(f"{mark} {r.law:26s} samples={r.samples:4d} {r.wall_ms:8.1f} ms")
            if not r.passed:
                for k, v in sorted(r.counterexample.items()):
                    print(f"     {k}: {v}")
        failed = sum(1 for r in reports if not r.passed)
        print(f"{len(reports) - failed}/{len(reports)} suites passed")
    return 0 if all(r.passed for r in reports) else 1


def bench_product(m: int, n: int, ring: Ring, lam) -> dict:
    """Time one pure-tensor product of lengths m+1 and n+1 over distinct
    symbols and report term counts by output length."""
    names = tuple(f"a{k}" for k in range(m + 1)) + tuple(f"b{k}" for k in range(n + 1))
    h = algebra.poly_handle(names, ring, lam)
    s = ShaHandle(h)
    left = Tensor.from_factors(s, tuple(Poly.variable(h, f"a{k}") for k in range(m + 1)))
    right = Tensor.from_factors(s, tuple(Poly.variable(h, f"b{k}") for k in range(n + 1)))
    started = time.perf_counter()
    product = left * right
    elapsed_ms = (time.perf_counter() - started) * 1e3
    by_length = product.lengths()
    top = by_length.get(m + n + 1, 0)
    return {"m": m, "n": n, "weight": str(lam),
            "total_terms": sum(by_length.values()),
            "terms_by_length": {str(k): v for k, v in sorted(by_length.items())},
            "top_terms": top, "top_expected": comb(m + n, n),
            "elapsed_ms": round(elapsed_ms, 3)}


def cmd_bench(args) -> int:
    if args.m > BENCH_MAX or args.n > BENCH_MAX or args.m < 0 or args.n < 0:
        return _usage_error(f"tensor tail lengths must be between 0 and {BENCH_MAX}")
    ring = _ring_of(args)
    try:
        lam = parse_scalar(args.weight if args.weight is not None else "1", ring)
    except (RingError, ValueError) as e:
        return _usage_error(f"bad weight: {e}")
    report = bench_product(args.m, args.n, ring, lam)
    if args.json:
        _json_print(report)
    else:
        print(f"lengths {args.m + 1} x {args.n + 1}, weight {report['weight']}: "
              f"{report['total_terms']} terms in {report['elapsed_ms']:.2f} ms")
        for k, v in report["terms_by_length"].items():
            print(f"  length {k}: {v}")
        print(f"  top stratum {report['top_terms']} (expected {report['top_expected']})")
    if report["top_terms"] != report["top_expected"]:
        print("error: top-stratum count mismatch", file=sys.stderr)
        return 1
    return 0


def _add_common(p: argparse.ArgumentParser, with_handle: bool) -> None:
    p.add_argument("--ring", default="q", help="coefficient ring: q, z, or zmod:M")
    p.add_argument("--lambda", dest="weight", default=None, metavar="VALUE",
                   help="weight, e.g. 0, 1, 1/2 (default 0; check cycles defaults)")
    p.add_argument("--precision", type=int, default=4,
                   help="working precision for series carriers (default 4)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    if with_handle:
        p.add_argument("--handle", required=True,
                       help='carrier, e.g. "sha(poly(x,y))" or "hur(poly(x),4)"')
        p.add_argument("--rb", choices=("auto", "integration", "scaled"),
                       default="auto",
                       help="base operator P resolves on polynomial carriers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbshuffle",
        description="Exact tensor, series, and distributive-law calculator "
                    "with a machine-checked law suite.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate an expression on a carrier")
    _add_common(p_eval, with_handle=True)
    p_eval.add_argument("expr", help='expression, e.g. "P(x # y) + 2*(x # 1)"')
    p_eval.set_defaults(fn=cmd_eval)

    p_check = sub.add_parser("check", help="run law suites")
    _add_common(p_check, with_handle=False)
    p_check.add_argument("--suite", action="append", metavar="NAME",
                         help="run only the named suite (repeatable)")
    p_check.add_argument("--seed", type=int,
                         default=int(os.environ.get("RB_SEED", "0")),
                         help="master seed (default RB_SEED or 0)")
    p_check.set_defaults(fn=cmd_check)

    p_bench = sub.add_parser("bench", help="profile one pure-tensor product")
    _add_common(p_bench, with_handle=False)
    p_bench.add_argument("-m", type=int, default=3, help="left tail length (<= 8)")
    p_bench.add_argument("-n", type=int, default=3, help="right tail length (<= 8)")
    p_bench.set_defaults(fn=cmd_bench)

    p_repl = sub.add_parser("repl", help="interactive evaluator")
    _add_common(p_repl, with_handle=True)
    p_repl.set_defaults(fn=cmd_repl)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as e:
        code = e.code
        return code if isinstance(code, int) else 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())

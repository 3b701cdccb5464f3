"""Command-line interface: ``moore {eval,fmt,solve,lebesgue,bench}``.

Exit status is 0 on success, 2 on malformed input and 1 when ``solve``
leaves an enclosure it could not verify.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections.abc import Sequence

import numpy as np

from .core import Interval
from .endpoints import parse_kind
from .errors import MooreError
from .expr import Expr
from .linalg import Box
from .roots import (PolyInterval, RootStatus, barycentric_weights, chebyshev_nodes, grid_points,
                    lebesgue, lebesgue_grid, solve)
from .textio import format_hex, format_interval, parse_format, parse_interval, text_format
from . import bench

__all__ = ["main"]


def _show(x: Interval, hex_: bool) -> str:
    if hex_:
        return format_hex(x)
    return "[]" if x.is_empty() else format_interval(x)


def _split_top(text: str) -> list[str]:
    """Split on commas outside brackets."""
    items, depth, cur = [], 0, []
    for ch in text:
        if ch in "[{(":
            depth += 1
        elif ch in "]})":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    items.append("".join(cur).strip())
    return items


def parse_coefficients(text: str, kind) -> list[Interval]:
    """``"[-2, 0, 1]"`` or ``"{[1,2], 0, 1}"``, constant term first."""
    s = text.strip()
    if len(s) >= 2 and (s[0], s[-1]) in (("[", "]"), ("{", "}")):
        s = s[1:-1]
    items = _split_top(s)
    if not items or any(not it for it in items):
        raise ValueError(f"bad coefficient list {text!r}")
    return [parse_interval(it if it.startswith("[") else f"[{it}]", kind) for it in items]


def _bindings(pairs: Sequence[str], kind) -> dict:
    env = {}
    for p in pairs:
        name, sep, value = p.partition("=")
        if not sep or not name.strip().isidentifier():
            raise ValueError(f"--let expects name=value, got {p!r}")
        v = value.strip()
        env[name.strip()] = parse_interval(v if v.startswith("[") else f"[{v}]", kind)
    return env


def cmd_eval(args) -> int:
    kind = parse_kind(args.kind)
    e = Expr(args.expr, kind)
    r = e(**_bindings(args.let, kind))
    print(_show(r, args.hex))
    return 0


def cmd_fmt(args) -> int:
    kind = parse_kind(args.kind)
    for lit in args.literal:
        x = parse_interval(lit, kind)
        print(format_hex(x) if args.hex else format_interval(x))
    return 0


def cmd_solve(args) -> int:
    kind = parse_kind(args.kind)
    if args.poly is not None:
        f = PolyInterval(parse_coefficients(args.poly, kind), kind)
    else:
        e = Expr(args.expr, kind)
        if len(e.variables) > 1:
            raise ValueError("--expr must use a single variable")
        f = e
    x0 = parse_interval(args.interval, kind)
    roots = solve(f, x0, args.tol, args.max_iter, args.mode)
    if not roots:
        print("no roots")
    for r in roots:
        print(f"{_show(r.interval, args.hex)} {r.status}")
    if roots.exhausted:
        print(f"iteration budget of {args.max_iter} exhausted")
    return 1 if any(r.status is RootStatus.POSSIBLE for r in roots) else 0


def _read_weights(path: str, n: int, kind) -> Box:
    with open(path, encoding="utf-8") as fh:
        lits = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
    ws = [parse_interval(s if s.startswith("[") else f"[{s}]", kind) for s in lits]
    if len(ws) != n + 1:
        raise ValueError(f"expected {n + 1} weights, found {len(ws)}")
    return Box(ws, kind)


def cmd_lebesgue(args) -> int:
    if args.n < 1 or args.t_samples < 1:
        raise ValueError("--n and --t-samples must be at least 1")
    kind = parse_kind(args.kind)
    nodes = chebyshev_nodes(args.n, kind)
    w = _read_weights(args.weights, args.n, kind) if args.weights else barycentric_weights(args.n, kind)
    ts = grid_points(args.t_samples)
    t0 = time.perf_counter()
    if args.t_radius:
        lo, hi, skipped = [], [], 0
        for t in ts:
            x = Interval(float(t) - args.t_radius, float(t) + args.t_radius, kind)
            if any(not (x & nd).is_empty() for nd in nodes):
                skipped += 1
                continue
            r = lebesgue(w, nodes, x)
            lo.append(float(r.lo))
            hi.append(float(r.hi))
        lo, hi = np.array(lo), np.array(hi)
    else:
        g = lebesgue_grid(w, nodes, ts)
        lo, hi, skipped = g.lo, g.hi, g.skipped
    wall = time.perf_counter() - t0
    print(f"n = {args.n}")
    print(f"samples = {args.t_samples}")
    print(f"evaluated = {len(lo)}")
    print(f"skipped = {skipped}")
    if len(lo):
        print(f"min lower = {float(lo.min())!r}")
        print(f"min upper = {float(hi.min())!r}")
        print(f"max upper = {float(hi.max())!r}")
        print(f"contain one = {int(((lo <= 1) & (1 <= hi)).sum())}")
    print(f"wall_s = {wall:.6f}")
    return 0


def cmd_bench(args) -> int:
    reports, raw = bench.run_suite(args.suite, args.count, args.seed, args.repeats, parse_kind(args.kind))
    for r in reports:
        print(r.to_json())
    if args.raw_out:
        with open(args.raw_out, "w", encoding="utf-8") as fh:
            json.dump(raw, fh, indent=2)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="moore", description="Rigorous interval arithmetic.")
    p.add_argument("--format", help="output format, e.g. '+11.2E3W26' (default: $MOORE_FORMAT or 23.16E)")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--kind", default="binary64", help="binary64, binary32 or bigfloat(N)")
        sp.add_argument("--hex", action="store_true", help="print exact hex-float endpoints")

    sp = sub.add_parser("eval", help="evaluate an interval expression")
    sp.add_argument("expr")
    sp.add_argument("--let", action="append", default=[], metavar="NAME=VALUE")
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("fmt", help="parse interval literals and print them")
    sp.add_argument("literal", nargs="+")
    common(sp)
    sp.set_defaults(func=cmd_fmt)

    sp = sub.add_parser("solve", help="enclose the roots of a function")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--poly", help="coefficients, constant term first, e.g. '[-2,0,1]'")
    src.add_argument("--expr", help="expression in one variable, e.g. 'x^2 - 2'")
    sp.add_argument("--interval", required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--max-iter", type=int, default=10_000)
    sp.add_argument("--mode", choices=["midpoint", "paper-literal"], default="midpoint")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("lebesgue", help="evaluate the Lebesgue function on a grid")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t-samples", type=int, default=1000)
    sp.add_argument("--t-radius", type=float, default=0.0, help="evaluate at [t-r, t+r] instead of points")
    sp.add_argument("--weights", help="file with n+1 weight literals, one per line")
    sp.add_argument("--kind", default="binary64")
    sp.set_defaults(func=cmd_lebesgue)

    sp = sub.add_parser("bench", help="time this library on random intervals (JSON lines)")
    sp.add_argument("--suite", choices=sorted(bench.SUITES), default="elem")
    sp.add_argument("--count", type=int, default=100_000)
    sp.add_argument("--seed", type=lambda s: int(s, 0), default=bench.DEFAULT_SEED)
    sp.add_argument("--repeats", type=int, default=5)
    sp.add_argument("--raw-out", help="write all raw timings and environment metadata here")
    sp.add_argument("--kind", default="binary64")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.format:
            with text_format(parse_format(args.format)):
                return args.func(args)
        return args.func(args)
    except (MooreError, ValueError, NameError, TypeError, ZeroDivisionError) as exc:
        print(f"moore: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

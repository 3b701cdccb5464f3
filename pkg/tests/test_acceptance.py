"""Gated acceptance criteria, one test per criterion.

Each test carries an ``acceptance`` marker; conftest prints a PASS/FAIL line
per criterion at the end of the run.  These are the slow tests (the whole
module takes a few minutes on one core).
"""

import math
import random
import re
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from moore import (BINARY32, BINARY64, DOWN, UP, BigFloat, BoxMatrix, Interval, PolyInterval, RootStatus, adtnf,
                   arith, barycentric_weights, bigfloat, chebyshev_nodes, cos, format_gradient, format_hex,
                   format_matrix, grid_points, lebesgue_grid, parse_interval, sin, solve)
from moore.bigfloat import bf_add, bf_div, bf_mul, bf_sqrt, bf_sub
from exprgen import fd_check, random_expr, show
from oracles import mp_fraction, poly_from_roots, random_interval64, ulps
from test_autodiff import PAPER_BLOCK, PAPER_BOX, multivariate_example

I = Interval
BF256 = bigfloat(256)
OPS = ("add", "sub", "mul", "div")


def _nu(x: float) -> float:
    return math.nextafter(x, math.inf)


def _nd(x: float) -> float:
    return math.nextafter(x, -math.inf)


# -- format fidelity ---------------------------------------------------------------------


@pytest.mark.acceptance("format fidelity")
def test_format_fidelity():
    start = time.perf_counter()
    a = BoxMatrix([[I(2.0 ** -1021, 2.0 ** 100), I()],
                   [I("[-inf,0]"), I("[0,inf]")],
                   [I(-12343, 0), I(50, 10000)]])
    expected = (" [ +4.45E-308, +1.27E+030] [                       ]\n"
                " [       -INF, +0.00E+000] [ +0.00E+000,       +INF]\n"
                " [ -1.24E+004, +0.00E+000] [ +5.00E+001, +1.00E+004]")
    assert format_matrix(a, "+11.2E3W26") == expected
    assert time.perf_counter() - start < 1


# -- containment ---------------------------------------------------------------------------


def _limit_quotients(a, b, c, d):
    """Closure of {p/q} when the divisor touches 0 at one end: a 0 endpoint of
    the divisor is approached from inside, so p/0 tends to sign(p)*inf."""
    pos_inf, neg_inf = BigFloat.inf(256), BigFloat.inf(256, negative=True)
    out = []
    for q in (c, d):
        for p in (a, b):
            if not q.is_zero():
                out.append((bf_div(p, q, DOWN), bf_div(p, q, UP)))
            elif p.is_zero():
                out.append((p, p))
            else:
                toward = 1 if q is c else -1  # c = 0 means q -> 0+, d = 0 means q -> 0-
                v = pos_inf if (p > 0) == (toward > 0) else neg_inf
                out.append((v, v))
    return min(v[0] for v in out), max(v[1] for v in out)


def _oracle(op, a, b, c, d):
    """Rigorous 256-bit bounds (L, U) on the closed hull of [a,b] op [c,d]."""
    if op == "add":
        return bf_add(a, c, DOWN), bf_add(b, d, UP)
    if op == "sub":
        return bf_sub(a, d, DOWN), bf_sub(b, c, UP)
    if op == "div" and c <= 0 <= d:
        if a.is_zero() and b.is_zero() and not (c.is_zero() and d.is_zero()):
            return a, a
        if c < 0 < d or (c.is_zero() and d.is_zero()):
            # two rays (or no quotient at all): the whole line by convention
            return BigFloat.inf(256, negative=True), BigFloat.inf(256)
        return _limit_quotients(a, b, c, d)
    f = bf_mul if op == "mul" else bf_div
    corners = [(p, q) for p in (a, b) for q in (c, d)]
    return min(f(p, q, DOWN) for p, q in corners), max(f(p, q, UP) for p, q in corners)


def _check_pair(op, x, y, fx, fy):
    r = arith(op, x, y)
    lo, hi = _oracle(op, *fx, *fy)
    # containment: the computed bounds enclose the oracle's outward bounds
    if not (r.lo <= lo and hi <= r.hi):
        return "containment"
    # tightness: the exact bound lies in [lo, lo.next_up()], so an endpoint more
    # than one double away from the optimal one would fail this
    if not (_nu(_nu(r.lo)) > lo.next_up() and _nd(_nd(r.hi)) < hi.next_down()):
        return "tightness"
    return None


@pytest.mark.acceptance("containment suite")
def test_containment_suite(note):
    n = 10 ** 6
    rng = random.Random(20240601)
    failures = {op: [] for op in OPS}
    straddle = 0
    start = time.perf_counter()
    for _ in range(n):
        a, b = random_interval64(rng)
        c, d = random_interval64(rng)
        x, y = I(a, b), I(c, d)
        fx = (BigFloat(a, 256), BigFloat(b, 256))
        fy = (BigFloat(c, 256), BigFloat(d, 256))
        straddle += c <= 0 <= d
        for op in OPS:
            bad = _check_pair(op, x, y, fx, fy)
            if bad:
                failures[op].append((bad, a, b, c, d))
    note(f"containment: {n} pairs x 4 ops in {time.perf_counter() - start:.1f} s, "
         f"{straddle} divisors containing 0")
    assert all(not v for v in failures.values()), {k: v[:5] for k, v in failures.items() if v}


# -- hex persistence -----------------------------------------------------------------------


@pytest.mark.parametrize("kind", [pytest.param(k, id=str(k), marks=pytest.mark.acceptance(f"hex persistence {k}"))
                                  for k in (BINARY64, BINARY32, BF256)])
def test_hex_persistence(kind):
    rng = random.Random(7)
    failures = []
    for i in range(10 ** 5):
        a, b = random_interval64(rng)
        x = I(a, b).to_kind(kind)
        if kind is BF256:
            x = x / 3
        if i % 1000 == 0:
            x = I.empty(kind) if i % 2000 == 0 else parse_interval("[-inf, 1]", kind)
        text = format_hex(x)
        y = parse_interval(text, kind)
        if not (y == x and y.kind is kind and format_hex(y) == text):
            failures.append(text)
    assert not failures, failures[:5]


# -- elementary accuracy --------------------------------------------------------------------


def _random_point(rng):
    sign = rng.choice((-1.0, 1.0))
    if rng.random() < 0.5:
        return sign * 10.0 ** rng.uniform(-3, 15)
    return sign * rng.uniform(0, 1e15)


@pytest.mark.acceptance("elementary accuracy")
def test_elementary_accuracy(note):
    rng = random.Random(99)
    failures = []
    worst = 0
    for _ in range(10 ** 4):
        t = _random_point(rng)
        for name, f in (("sin", sin), ("cos", cos)):
            r = f(I(t))
            with mpmath.workprec(400):
                v = getattr(mpmath, name)(mpmath.mpf(t))
            q = mp_fraction(v)
            width = ulps(r.lo, r.hi)
            worst = max(worst, width)
            if not (Fraction(r.lo) <= q <= Fraction(r.hi)) or width > 10:
                failures.append((name, t, r.lo, r.hi))
    note(f"elementary: widest sin/cos enclosure {worst} ulps")
    assert not failures, failures[:5]


# -- AD reproduction -------------------------------------------------------------------------

_NUM = re.compile(r"([+-])(\d)\.(\d+)E([+-]\d+)")


def _printed_numbers(text):
    """Each printed endpoint as (value, unit in the last displayed digit)."""
    out = []
    for sign, lead, frac, exp in _NUM.findall(text):
        unit = Fraction(10) ** (int(exp) - len(frac))
        value = int(lead + frac) * unit
        out.append((-value if sign == "-" else value, unit))
    return out


@pytest.mark.acceptance("AD reproduction")
def test_ad_reproduction():
    g = adtnf(PAPER_BOX, multivariate_example)
    ours = format_gradient(g, "+10.4E")
    assert [ln.split("=")[0] for ln in ours.splitlines()] == [ln.split("=")[0] for ln in PAPER_BLOCK.splitlines()]
    got, want = _printed_numbers(ours), _printed_numbers(PAPER_BLOCK)
    assert len(got) == len(want) == 12
    for (v, _), (w, unit) in zip(got, want):
        assert abs(v - w) <= 2 * unit, (ours, PAPER_BLOCK)
    rng = random.Random(2718)
    bad = []
    for _ in range(10 ** 3):
        node = random_expr(rng)
        t = rng.uniform(-3, 3)
        if not fd_check(node, t):
            bad.append((show(node), t))
    assert not bad, bad[:5]


# -- Newton --------------------------------------------------------------------------------


@pytest.mark.acceptance("Newton")
def test_newton(note):
    r = solve(PolyInterval([-2, 0, 1]), I(1, 2), 1e-14)
    assert len(r) == 1 and r[0].status is RootStatus.UNIQUE
    x = r[0].interval
    root = BigFloat(2, 256)
    lo, hi = bf_sqrt(root, DOWN), bf_sqrt(root, UP)
    assert x.lo <= lo and hi <= x.hi
    assert x.hi - x.lo <= 1e-14 and r.iterations <= 60

    rng = random.Random(1618)
    lost = []
    start = time.perf_counter()
    for _ in range(10 ** 4):
        roots = [Fraction(rng.randint(-40, 40), rng.choice((1, 2, 3, 4, 8))) for _ in range(3)]
        found = solve(PolyInterval(poly_from_roots(roots)), I(-64, 64), 1e-10)
        for z in roots:
            if not any(Fraction(e.interval.lo) <= z <= Fraction(e.interval.hi) for e in found):
                lost.append(roots)
    note(f"newton: 10^4 cubics in {time.perf_counter() - start:.1f} s, sqrt2 in {r.iterations} iterations")
    assert not lost, lost[:5]


# -- Lebesgue ------------------------------------------------------------------------------


@pytest.mark.acceptance("Lebesgue")
def test_lebesgue(note):
    g = lebesgue_grid(barycentric_weights(1), chebyshev_nodes(1), grid_points(10 ** 4))
    assert len(g.t) + g.skipped == 10 ** 4
    assert np.all(g.lo <= 1) and np.all(g.hi >= 1)

    n, samples = 256, 10 ** 6
    start = time.perf_counter()
    g = lebesgue_grid(barycentric_weights(n), chebyshev_nodes(n), grid_points(samples))
    elapsed = time.perf_counter() - start
    assert len(g.t) + g.skipped == samples and len(g.t) > 0
    assert np.all(g.hi >= 1)
    note(f"lebesgue: n=256 at {samples} points in {elapsed:.1f} s, max upper bound {g.hi.max():.6f}")


# -- mixed-kind coherence --------------------------------------------------------------------


def _exact_set(op, x, y):
    xs = (Fraction(x.lo), Fraction(x.hi))
    ys = (y.lo.to_fraction(), y.hi.to_fraction())
    fn = {"add": lambda p, q: p + q, "sub": lambda p, q: p - q,
          "mul": lambda p, q: p * q, "div": lambda p, q: p / q}[op]
    vals = [fn(p, q) for p in xs for q in ys]
    return min(vals), max(vals)


@pytest.mark.acceptance("mixed-kind coherence")
def test_mixed_kind_coherence():
    rng = random.Random(4242)
    mismatches, lost = [], []
    for _ in range(10 ** 5):
        a, b = random_interval64(rng)
        c, d = random_interval64(rng)
        x32 = I(a, b).to_kind(BINARY32)
        x64 = I(x32.lo, x32.hi)
        y = I(c, d)
        op = rng.choice(OPS)
        for r1, r2 in ((arith(op, x32, y), arith(op, x64, y)), (arith(op, y, x32), arith(op, y, x64))):
            if r1.kind is not BINARY64 or format_hex(r1) != format_hex(r2):
                mismatches.append((op, a, b, c, d))
        y256 = I(c, d).to_kind(BF256) / 3
        if op == "div" and y256.lo <= 0 <= y256.hi:
            continue
        r = arith(op, I(a, b), y256)
        lo, hi = _exact_set(op, I(a, b), y256)
        if r.kind is not BF256 or not (r.lo.to_fraction() <= lo and hi <= r.hi.to_fraction()):
            lost.append((op, a, b, c, d))
    assert not mismatches, mismatches[:5]
    assert not lost, lost[:5]


# -- performance smoke (reported, not gated) --------------------------------------------------


def test_performance_smoke(note):
    rng = random.Random(5)
    xs = [I(*random_interval64(rng, wide=False)) for _ in range(1000)]
    n = 10 ** 6
    start = time.perf_counter()
    for i in range(n // 1000):
        y = xs[i % 1000]
        for x in xs:
            x * y
    mul = time.perf_counter() - start
    pts = [I(t, t + abs(t) * 1e-12) for t in (rng.uniform(-10, 10) for _ in range(1000))]
    start = time.perf_counter()
    for _ in range(n // 1000):
        for x in pts:
            sin(x)
    sn = time.perf_counter() - start
    note(f"performance: 10^6 interval multiplications {mul:.2f} s, 10^6 sin enclosures {sn:.2f} s")

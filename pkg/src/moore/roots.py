"""Interval Newton root finding, Horner evaluation and the Lebesgue function.

>>> p = PolyInterval([-2, 0, 1])          # x**2 - 2
>>> r = solve(p, Interval(1, 2), 1e-14)
>>> str(r[0].status), r[0].interval.lo <= 2 ** 0.5 <= r[0].interval.hi
('unique-verified', True)
"""

from __future__ import annotations

import enum
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from . import _vector
from .autodiff import ADScalar, ADValue, adt
from .core import Interval, _mk, abs_, extended_div, hull, interior, intersect, midpoint, width
from .endpoints import BINARY64, DOWN, UP, EndpointKind, parse_kind, promote
from .functions import cos_pi
from .linalg import Box

__all__ = [
    "LebesgueGrid", "NewtonMode", "PolyInterval", "RootEnclosure", "RootStatus", "Roots",
    "barycentric_weights", "chebyshev_nodes", "grid_points", "horner", "lebesgue",
    "lebesgue_grid", "newton_step", "solve",
]


class RootStatus(str, enum.Enum):
    UNIQUE = "unique-verified"
    POSSIBLE = "possible"
    NONE = "no-root"

    def __str__(self) -> str:
        return self.value


class NewtonMode(str, enum.Enum):
    MIDPOINT = "midpoint"
    PAPER = "paper-literal"


@dataclass(frozen=True)
class RootEnclosure:
    interval: Interval
    status: RootStatus

    def __str__(self) -> str:
        return f"{self.interval} {self.status.value}"


class Roots(list):
    """List of :class:`RootEnclosure` with solver statistics."""

    iterations: int = 0
    exhausted: bool = False


class PolyInterval:
    """Polynomial with interval coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, kind: EndpointKind | str | None = None):
        box = Box(coeffs, kind)
        if not len(box):
            raise ValueError("a polynomial needs at least one coefficient")
        self.coeffs = tuple(box)

    @property
    def kind(self) -> EndpointKind:
        return self.coeffs[0].kind

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return horner(self, x)

    def derivative(self) -> "PolyInterval":
        if len(self.coeffs) == 1:
            return PolyInterval([0], self.kind)
        return PolyInterval([i * c for i, c in enumerate(self.coeffs) if i], self.kind)

    def __repr__(self) -> str:
        return f"PolyInterval({list(self.coeffs)!r})"


def horner(p: PolyInterval, x):
    """``((c_n x + c_{n-1}) x + ...) + c_0``; works on Interval and AD values."""
    cs = p.coeffs
    b = x._lift(cs[-1]) if isinstance(x, ADValue) else cs[-1]
    for c in reversed(cs[:-1]):
        b = b * x + c
    return b


# -- Newton -----------------------------------------------------------------------------


def _value(f: Callable, x: Interval) -> Interval:
    r = f(x)
    return r.f if isinstance(r, ADScalar) else r


def _newton(x: Interval, f: Callable, mode: NewtonMode):
    """Returns (pieces of x kept, contraction certificate)."""
    fd = adt(x, f)
    if mode is NewtonMode.PAPER:
        n = x - fd.f / fd.d
        return [intersect(x, n)], interior(n, x)
    m = Interval.point(midpoint(x), x.kind)
    fm = _value(f, m)
    q1, q2 = extended_div(fm, fd.d)
    n1 = m - q1
    pieces = [intersect(x, n1)]
    if not q2.is_empty():
        pieces.append(intersect(x, m - q2))
    certified = q2.is_empty() and not q1.is_empty() and interior(n1, x)
    return pieces, certified


def newton_step(x: Interval, f: Callable, mode: NewtonMode | str = NewtonMode.MIDPOINT) -> Interval:
    """One interval Newton step; an empty result proves f has no root in x."""
    pieces, _ = _newton(x, f, NewtonMode(mode))
    out = Interval.empty(x.kind)
    for p in pieces:
        out = hull(out, p)
    return out


def _halves(x: Interval):
    m = midpoint(x)
    if not (x.lo < m < x.hi):
        return None
    return _mk(x.kind, x.lo, m), _mk(x.kind, m, x.hi)


def _inflate(x: Interval) -> Interval:
    k = x.kind
    w = width(x)
    lo = k.sub(x.lo, w, DOWN) if w else k.next_down(x.lo)
    hi = k.add(x.hi, w, UP) if w else k.next_up(x.hi)
    return _mk(k, k.next_down(lo), k.next_up(hi))


def _certify(y: Interval, f: Callable, x0: Interval) -> Interval | None:
    """Try to prove y holds exactly one root by a Newton step on an inflation."""
    z = _inflate(y)
    try:
        pieces, ok = _newton(z, f, NewtonMode.MIDPOINT)
    except ArithmeticError:
        return None
    if ok and len(pieces) == 1:
        n = pieces[0]
        if not n.is_empty() and x0.lo <= n.lo and n.hi <= x0.hi:
            return n
    return None


def solve(f: Callable, x0: Interval, tol: float = 1e-12, max_iter: int = 10_000,
          mode: NewtonMode | str = NewtonMode.MIDPOINT) -> Roots:
    """Enclose every root of ``f`` in ``x0`` by Newton steps and bisection.

    Each returned enclosure is ``unique-verified`` when a Newton step mapped
    an interval strictly inside itself, otherwise ``possible``.  The union
    of the enclosures always contains every root of f in x0.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    mode = NewtonMode(mode)
    out = Roots()
    found: list[RootEnclosure] = []
    stack: list[tuple[Interval, bool]] = [] if x0.is_empty() else [(x0, False)]
    while stack:
        if out.iterations >= max_iter:
            out.exhausted = True
            found.extend(RootEnclosure(x, RootStatus.POSSIBLE) for x, _ in stack)
            break
        x, verified = stack.pop()
        out.iterations += 1
        pieces, cert = _newton(x, f, mode)
        pieces = [p for p in pieces if not p.is_empty()]
        if not pieces:
            continue
        if len(pieces) == 2:
            stack.extend((p, False) for p in reversed(pieces))
            continue
        y = pieces[0]
        verified = verified or cert
        wy = width(y)
        if wy <= tol:
            found.append(_finish(y, verified, f, x0))
            continue
        if y == x or (not verified and 2 * wy > width(x)):
            split = _halves(y)
            if split is None:
                found.append(_finish(y, verified, f, x0))
            elif verified and y == x:
                # certified but stuck at the resolution of the endpoint kind
                found.append(RootEnclosure(y, RootStatus.UNIQUE))
            else:
                stack.extend((h, False) for h in reversed(split))
            continue
        stack.append((y, verified))
    out.extend(_normalize(found, f, x0))
    return out


def _finish(y: Interval, verified: bool, f: Callable, x0: Interval) -> RootEnclosure:
    if verified:
        return RootEnclosure(y, RootStatus.UNIQUE)
    n = _certify(y, f, x0)
    if n is not None:
        return RootEnclosure(n, RootStatus.UNIQUE)
    return RootEnclosure(y, RootStatus.POSSIBLE)


def _normalize(found: list[RootEnclosure], f: Callable, x0: Interval) -> list[RootEnclosure]:
    found = sorted(found, key=lambda r: (r.interval.lo, r.interval.hi))
    merged: list[RootEnclosure] = []
    for r in found:
        if merged and r.interval.lo <= merged[-1].interval.hi:
            prev = merged.pop()
            if prev.interval == r.interval:
                merged.append(prev if prev.status is RootStatus.UNIQUE else r)
                continue
            h = hull(prev.interval, r.interval)
            status = RootStatus.POSSIBLE
            if prev.status is RootStatus.UNIQUE and r.status is RootStatus.UNIQUE:
                # one root per piece; the hull is unique only if Newton says so
                pieces, ok = _newton(h, f, NewtonMode.MIDPOINT)
                if ok:
                    status = RootStatus.UNIQUE
            merged.append(RootEnclosure(h, status))
        else:
            merged.append(r)
    return merged


# -- Lebesgue function -------------------------------------------------------------------


def chebyshev_nodes(n: int, kind: EndpointKind | str = BINARY64) -> Box:
    """Enclosures of ``cos(k*pi/n)`` for k = 0..n (second kind)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    kind = parse_kind(kind)
    return Box([cos_pi(k, n, kind) for k in range(n + 1)], kind)


def barycentric_weights(n: int, kind: EndpointKind | str = BINARY64) -> Box:
    """``(-1)**k`` with the two end weights halved, as point intervals."""
    if n < 1:
        raise ValueError("n must be at least 1")
    kind = parse_kind(kind)
    ws = []
    for k in range(n + 1):
        w = 1 if k % 2 == 0 else -1
        ws.append(Interval.point(kind.from_rational(w, 2 if k in (0, n) else 1, None), kind))
    return Box(ws, kind)


def lebesgue(w: Sequence[Interval], nodes: Sequence[Interval], t: Interval) -> Interval:
    """``sum |w_k/(t-x_k)| / |sum w_k/(t-x_k)|`` in interval arithmetic."""
    if len(w) != len(nodes):
        raise ValueError("weights and nodes differ in length")
    k = t.kind
    num = Interval.point(k.zero(), k)
    den = num
    for wk, xk in zip(w, nodes):
        q = wk / (t - xk)
        num = num + abs_(q)
        den = den + q
    return num / abs_(den)


def grid_points(samples: int) -> np.ndarray:
    """``samples`` equispaced binary64 points on [-1, 1], each correctly rounded."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    if samples == 1:
        return np.zeros(1)
    m = samples - 1
    return (2.0 * np.arange(samples, dtype=np.float64) - m) / m


@dataclass
class LebesgueGrid:
    t: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    skipped: int
    scalar_fallbacks: int


def lebesgue_grid(w: Sequence[Interval], nodes: Sequence[Interval], ts, *,
                  chunk: int = 1 << 16, vectorized: bool = True) -> LebesgueGrid:
    """Evaluate :func:`lebesgue` at the point intervals ``[t, t]``.

    Samples lying inside a node enclosure are dropped.  For binary64 inputs
    the evaluation is vectorized with numpy; lanes the vector kernels cannot
    round exactly are recomputed one by one, so every enclosure equals the
    scalar result bit for bit.
    """
    if len(w) != len(nodes):
        raise ValueError("weights and nodes differ in length")
    ts = np.asarray(ts, dtype=np.float64)
    nl = np.array([float(x.lo) for x in nodes]) if len(nodes) else np.zeros(0)
    nh = np.array([float(x.hi) for x in nodes]) if len(nodes) else np.zeros(0)
    hit = np.zeros(ts.shape, dtype=bool)
    for a, b in zip(nl, nh):
        hit |= (a <= ts) & (ts <= b)
    keep = ts[~hit]
    kinds = {x.kind for x in list(w) + list(nodes)}
    if not vectorized or kinds - {BINARY64}:
        lo, hi = _grid_scalar(w, nodes, keep, kinds)
        return LebesgueGrid(keep, lo, hi, int(hit.sum()), len(keep))
    lo = np.empty(keep.shape)
    hi = np.empty(keep.shape)
    fallbacks = 0
    wl = [float(x.lo) for x in w]
    wh = [float(x.hi) for x in w]
    for s in range(0, len(keep), chunk):
        t = keep[s:s + chunk]
        bad = np.zeros(t.shape, dtype=bool)
        clo, chi = _grid_chunk(wl, wh, nl, nh, t, bad)
        lo[s:s + chunk], hi[s:s + chunk] = clo, chi
        for i in np.nonzero(bad)[0]:
            r = lebesgue(w, nodes, Interval.point(float(t[i])))
            lo[s + i], hi[s + i] = _float_bounds(r)
            fallbacks += 1
    return LebesgueGrid(keep, lo, hi, int(hit.sum()), fallbacks)


def _float_bounds(r: Interval) -> tuple[float, float]:
    if r.is_empty():
        return np.nan, np.nan
    return float(r.lo), float(r.hi)


def _grid_scalar(w, nodes, keep, kinds):
    kind = BINARY64
    for k in kinds:
        kind = promote(kind, k)
    lo = np.empty(keep.shape)
    hi = np.empty(keep.shape)
    for i, t in enumerate(keep):
        r = lebesgue(w, nodes, Interval.point(float(t)).to_kind(kind))
        lo[i], hi[i] = _float_bounds(r.to_kind(BINARY64) if not r.is_empty() else r)
    return lo, hi


def _grid_chunk(wl, wh, nl, nh, t, bad):
    V = _vector
    zero = np.zeros(t.shape)
    num_lo, num_hi, den_lo, den_hi = zero, zero, zero, zero
    for k in range(len(wl)):
        # t - x_k for the point t
        dl = V.add(t, -nh[k], False, bad)
        dh = V.add(t, -nl[k], True, bad)
        ql, qh = V.interval_div(wl[k], wh[k], dl, dh, bad)
        al, ah = V.interval_abs(ql, qh)
        num_lo = V.add(num_lo, al, False, bad)
        num_hi = V.add(num_hi, ah, True, bad)
        den_lo = V.add(den_lo, ql, False, bad)
        den_hi = V.add(den_hi, qh, True, bad)
    al, ah = V.interval_abs(den_lo, den_hi)
    return V.interval_div(num_lo, num_hi, al, ah, bad)

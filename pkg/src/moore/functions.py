"""Interval enclosures of elementary functions.

Trigonometric arguments are reduced exactly: the endpoint is a dyadic
rational, pi comes from Machin's formula in integer fixed point with a
rigorous error bound, and enough bits are carried that the reduced argument
is known to far better than one ulp even for arguments near 1e308.  The
quadrant of each endpoint then locates the extrema inside the interval.

Point values come from the platform libm on the reduced argument, widened by
two ulps each way, for binary64 and binary32.  Bigfloat kinds evaluate with
mpmath at 64 guard bits.  Results are clipped to the known range of each
function (``sin`` to ``[-1, 1]`` and so on), and a handful of exact cases
(``sin 0``, ``exp 0``, ``log 1``...) return exact points.
"""

from __future__ import annotations

import functools
import math
import threading
from typing import NamedTuple

import mpmath

from .bigfloat import BigFloat, float_dyadic, round_binary
from .core import Interval, _mk, intersect, pown, sqr
from .endpoints import BINARY32, BINARY64, DOWN, UP, EndpointKind, div64, f32_round, kind_of, sqrt64

__all__ = [
    "FUNCTIONS", "HYPERBOLIC", "PiEnclosure", "acos", "acosh", "asin", "asinh", "atan", "atanh",
    "cos", "cos_pi", "cosh", "exp", "fn_enclosure", "log", "pi_enclosure", "pi_interval", "pown",
    "reduce_argument", "sin", "sinh", "sqr", "sqrt", "tan", "tanh",
]

FUNCTIONS = ("sin", "cos", "tan", "asin", "acos", "atan", "exp", "log", "sqrt")
HYPERBOLIC = ("sinh", "cosh", "tanh", "asinh", "acosh", "atanh")

INF = math.inf
_nextafter = math.nextafter


# -- pi ---------------------------------------------------------------------------


def _atan_inv(x: int, w: int) -> tuple[int, int]:
    """``atan(1/x)·2**w`` by its Taylor series, and a bound on the error."""
    power = (1 << w) // x
    total = power
    x2 = x * x
    k = 1
    n = 1
    while power:
        power //= x2
        term = power // (2 * k + 1)
        total += -term if k & 1 else term
        k += 1
        n += 1
    # each truncated power is off by < 2 units, and the tail is < 2 units
    return total, 3 * n + 4


@functools.lru_cache(maxsize=64)
def _pi_fixed(bits: int) -> tuple[int, int]:
    """Integers ``(lo, hi)`` with ``lo <= pi·2**bits <= hi`` and ``hi - lo <= 2``."""
    guard = 32
    w = bits + guard
    a, ea = _atan_inv(5, w)
    b, eb = _atan_inv(239, w)
    p = 16 * a - 4 * b
    err = 16 * ea + 4 * eb
    return (p - err) >> guard, -((-(p + err)) >> guard)


class PiEnclosure(NamedTuple):
    lo: BigFloat
    hi: BigFloat


@functools.lru_cache(maxsize=8)
def pi_enclosure(bits: int = 256) -> PiEnclosure:
    """BigFloats ``lo < pi < hi`` at ``bits`` precision, two ulps apart at most."""
    lo, hi = _pi_fixed(bits + 8)
    return PiEnclosure(
        BigFloat.from_dyadic(False, lo, -(bits + 8), bits, DOWN),
        BigFloat.from_dyadic(False, hi, -(bits + 8), bits, UP),
    )


@functools.lru_cache(maxsize=64)
def _pi_bounds(kind: EndpointKind, num: int = 1, den: int = 1) -> tuple:
    """Kind endpoints enclosing ``pi·num/den`` (num, den > 0)."""
    w = kind.precision_bits + 64
    lo, hi = _pi_fixed(w)
    return (
        kind.from_rational(lo * num, den << w, DOWN),
        kind.from_rational(hi * num, den << w, UP),
    )


def pi_interval(kind: EndpointKind = BINARY64) -> Interval:
    """Tightest enclosure of pi in ``kind``."""
    lo, hi = _pi_bounds(kind)
    return _mk(kind, lo, hi)


# -- argument reduction ----------------------------------------------------------------

# Beyond this many integer bits an argument's quadrant is not worth
# computing; sin and cos then return [-1, 1].
_MAX_REDUCTION_BITS = 100_000


class _Reduced(NamedTuple):
    k: int       # nearest multiple of pi/2
    lo: int      # x - k·pi/2 lies in [lo, hi]·2**-scale
    hi: int
    scale: int


def _reduce_dyadic(neg: bool, m: int, e: int, extra: int = 0) -> _Reduced:
    top = e + m.bit_length()
    bits = max(256, top + 192) + extra
    scale = bits + max(0, -e)
    scale = -(-scale // 64) * 64
    x = m << (e + scale)
    if neg:
        x = -x
    # pi/2 = pi·2**-1 lies in [plo, phi]·2**-scale
    plo, phi = _pi_fixed(scale - 1)
    pmid = (plo + phi) >> 1
    k = (2 * x + pmid) // (2 * pmid)
    if k >= 0:
        return _Reduced(k, x - k * phi, x - k * plo, scale)
    return _Reduced(k, x - k * plo, x - k * phi, scale)


def _dyadic(kind: EndpointKind, x):
    if kind is BINARY64 or kind is BINARY32:
        return float_dyadic(x)
    return x.to_dyadic()


def reduce_argument(x, kind: EndpointKind | None = None) -> tuple[int, Interval]:
    """``(q, r)`` with ``x = k·pi/2 + r``, ``q = k mod 4`` and r enclosed outward.

    ``|r| <= pi/4`` up to the reduction error, which is far below one ulp.
    """
    if kind is None:
        kind = kind_of(x) if not isinstance(x, int) else BINARY64
        if isinstance(x, int):
            x = float(x)
    if not kind.is_finite(x):
        raise ValueError("cannot reduce an infinite argument")
    neg, m, e = _dyadic(kind, x)
    if m == 0:
        return 0, _mk(kind, kind.zero(), kind.zero())
    red = _reduce_dyadic(neg, m, e, kind.precision_bits)
    lo = kind.from_dyadic(red.lo < 0, abs(red.lo), -red.scale, DOWN)
    hi = kind.from_dyadic(red.hi < 0, abs(red.hi), -red.scale, UP)
    return red.k % 4, _mk(kind, lo, hi)


# -- binary64 point kernels -------------------------------------------------------------

MAX64 = 1.7976931348623157e308
_PI4 = 0.7853981633974483  # below pi/4
_PI_HI = _nextafter(math.pi, INF)
_HALF_PI_HI = _nextafter(math.pi / 2, INF)


def _around(v: float) -> tuple[float, float]:
    return _nextafter(_nextafter(v, -INF), -INF), _nextafter(_nextafter(v, INF), INF)


def _reduce64(x: float) -> tuple[int, float, float, bool, bool]:
    """(k, rlo, rhi, rlo <= 0, rhi >= 0) with r rounded outward to binary64."""
    if -_PI4 <= x <= _PI4:
        return 0, x, x, x <= 0, x >= 0
    neg, m, e = float_dyadic(x)
    k, rlo, rhi, scale = _reduce_dyadic(neg, m, e)
    # floor/ceil to 60 bits, then fix up the nearest float: together a
    # directed rounding, since the reduced argument is never subnormal
    sh = max(rlo.bit_length(), rhi.bit_length()) - 60
    if sh > 0:
        t = rlo >> sh
        v = float(t)
        if v > t:
            v = _nextafter(v, -INF)
        lo = math.ldexp(v, sh - scale)
        t = -((-rhi) >> sh)
        v = float(t)
        if v < t:
            v = _nextafter(v, INF)
        hi = math.ldexp(v, sh - scale)
    else:
        lo = round_binary(rlo < 0, abs(rlo), -scale, DOWN, 53, -1074, 1024)
        hi = round_binary(rhi < 0, abs(rhi), -scale, UP, 53, -1074, 1024)
    return k, lo, hi, rlo <= 0, rhi >= 0


def _sin_r(rl: float, rh: float) -> tuple[float, float]:
    # sin is increasing on the reduced range
    lo = _around(math.sin(rl))[0]
    hi = _around(math.sin(rh))[1]
    return lo, hi


def _cos_r(rl: float, rh: float) -> tuple[float, float]:
    if rl >= 0:
        return _around(math.cos(rh))[0], _around(math.cos(rl))[1]
    if rh <= 0:
        return _around(math.cos(rl))[0], _around(math.cos(rh))[1]
    return _around(min(math.cos(rl), math.cos(rh)))[0], 1.0


def _trig64(name: str, k: int, rl: float, rh: float) -> tuple[float, float]:
    q = k % 4
    if name == "sin":
        lo, hi = (_sin_r, _cos_r, _sin_r, _cos_r)[q](rl, rh)
        if q >= 2:
            lo, hi = -hi, -lo
    elif name == "cos":
        lo, hi = (_cos_r, _sin_r, _cos_r, _sin_r)[q](rl, rh)
        if q == 1 or q == 2:
            lo, hi = -hi, -lo
    else:
        tl = _around(math.tan(rl))[0]
        th = _around(math.tan(rh))[1]
        if q & 1 == 0:
            return tl, th
        # tan(x) = -1/tan(r) off the even quadrants
        if tl <= 0 <= th:
            return -INF, INF
        return -div64(1.0, tl, UP), -div64(1.0, th, DOWN)
    return max(lo, -1.0), min(hi, 1.0)


def _exp64(x):
    try:
        v = math.exp(x)
    except OverflowError:
        return MAX64, INF
    if v == INF:
        return (INF, INF) if x == INF else (MAX64, INF)
    if x == -INF:
        return 0.0, 0.0
    lo, hi = _around(v)
    lo = max(lo, 0.0)
    if x > 0:
        lo = max(lo, 1.0)
    else:
        hi = min(hi, 1.0)
    return lo, hi


def _log64(x):
    if x == 0:
        return -INF, -INF
    if x == INF:
        return INF, INF
    lo, hi = _around(math.log(x))
    if x > 1:
        lo = max(lo, 0.0)
    else:
        hi = min(hi, 0.0)
    return lo, hi


def _sqrt64(x):
    return sqrt64(x, DOWN), sqrt64(x, UP)


def _odd(fn, clip):
    # increasing odd functions: sign of the result follows the argument
    def bounds(x):
        if x == INF or x == -INF:
            v = fn(x)
            if v == INF or v == -INF:
                return v, v
        try:
            v = fn(x)
        except OverflowError:
            return (MAX64, INF) if x > 0 else (-INF, -MAX64)
        lo, hi = _around(v)
        if x > 0:
            lo = max(lo, 0.0)
        else:
            hi = min(hi, 0.0)
        return max(lo, -clip), min(hi, clip)

    return bounds


def _acos64(x):
    lo, hi = _around(math.acos(x))
    return max(lo, 0.0), min(hi, _PI_HI)


def _cosh64(x):
    try:
        v = math.cosh(x)
    except OverflowError:
        return MAX64, INF
    if v == INF:
        return (INF, INF) if x == INF or x == -INF else (MAX64, INF)
    lo, hi = _around(v)
    return max(lo, 1.0), hi


def _acosh64(x):
    if x == INF:
        return INF, INF
    lo, hi = _around(math.acosh(x))
    return max(lo, 0.0), hi


def _atanh64(x):
    if x == 1:
        return INF, INF
    if x == -1:
        return -INF, -INF
    lo, hi = _around(math.atanh(x))
    if x > 0:
        lo = max(lo, 0.0)
    else:
        hi = min(hi, 0.0)
    return lo, hi


_B64 = {
    "exp": _exp64,
    "log": _log64,
    "sqrt": _sqrt64,
    "atan": _odd(math.atan, _HALF_PI_HI),
    "asin": _odd(math.asin, _HALF_PI_HI),
    "acos": _acos64,
    "sinh": _odd(math.sinh, INF),
    "tanh": _odd(math.tanh, 1.0),
    "asinh": _odd(math.asinh, INF),
    "cosh": _cosh64,
    "acosh": _acosh64,
    "atanh": _atanh64,
}

# f(x) at which the value is an exact small integer
_EXACT = {
    ("sin", 0): 0, ("cos", 0): 1, ("tan", 0): 0, ("exp", 0): 1, ("log", 1): 0,
    ("asin", 0): 0, ("atan", 0): 0, ("acos", 1): 0, ("sqrt", 0): 0, ("sqrt", 1): 1,
    ("sinh", 0): 0, ("cosh", 0): 1, ("tanh", 0): 0, ("asinh", 0): 0, ("acosh", 1): 0,
    ("atanh", 0): 0,
}


# -- bigfloat point kernels ------------------------------------------------------------------

_mp_lock = threading.Lock()
_GUARD = 64
_SLACK = 40


def _mp_value(name: str, x, prec: int):
    with _mp_lock:
        with mpmath.workprec(prec):
            if isinstance(x, BigFloat):
                if not x.is_finite():
                    arg = mpmath.mpf("-inf") if x.neg else mpmath.mpf("inf")
                else:
                    neg, m, e = x.to_dyadic()
                    arg = mpmath.mpf((-m if neg else m, e))
            else:
                arg = mpmath.mpf(x)
            return getattr(mpmath, name)(arg)


def _mp_bounds(name: str, kind: EndpointKind, x) -> tuple:
    prec = kind.precision_bits + _GUARD
    # exp-like functions saturate long before mpmath would need to work
    if name in ("exp", "sinh", "cosh") and kind.is_finite(x):
        if x > (1 << 31):
            return kind.max_finite(), kind.inf()
        if x < -(1 << 31):
            if name == "exp":
                return kind.zero(), kind.from_dyadic(False, 1, -(1 << 31), UP)
            if name == "sinh":
                return kind.ninf(), kind.neg(kind.max_finite())
            return kind.max_finite(), kind.inf()
    v = _mp_value(name, x, prec)
    if mpmath.isinf(v):
        r = kind.inf() if v > 0 else kind.ninf()
        return r, r
    sign, man, exp, _ = v._mpf_
    if sign:
        man = -man
    if man == 0:
        return kind.zero(), kind.zero()
    # widen by 2**-SLACK relative to the working precision
    d = abs(man).bit_length() - (kind.precision_bits + _SLACK)
    if d >= 0:
        lo_m, hi_m, e = man - (1 << d), man + (1 << d), exp
    else:
        lo_m, hi_m, e = (man << -d) - 1, (man << -d) + 1, exp + d
    lo = kind.from_dyadic(lo_m < 0, abs(lo_m), e, DOWN)
    hi = kind.from_dyadic(hi_m < 0, abs(hi_m), e, UP)
    return lo, hi


def _clip(name: str, kind: EndpointKind, x, lo, hi) -> tuple:
    one = kind.one()
    zero = kind.zero()
    if name in ("sin", "cos", "tanh"):
        lo, hi = kind.max(lo, -one), kind.min(hi, one)
    elif name in ("atan", "asin"):
        h = _pi_bounds(kind, 1, 2)[1]
        lo, hi = kind.max(lo, -h), kind.min(hi, h)
    elif name == "acos":
        lo, hi = kind.max(lo, zero), kind.min(hi, _pi_bounds(kind)[1])
    elif name in ("exp", "cosh", "acosh", "sqrt"):
        lo = kind.max(lo, zero)
    if name in ("exp", "cosh"):
        if name == "cosh" or x > 0:
            lo = kind.max(lo, one)
        else:
            hi = kind.min(hi, one)
    if name in ("atan", "asin", "sinh", "tanh", "asinh", "atanh", "log") and kind.is_finite(x):
        pivot = one if name == "log" else zero
        if x > pivot:
            lo = kind.max(lo, zero)
        elif x < pivot:
            hi = kind.min(hi, zero)
    return lo, hi


def _point(name: str, kind: EndpointKind, x) -> tuple:
    """Enclosure ``(lo, hi)`` of ``f(x)`` for a single endpoint value."""
    if kind.is_finite(x):
        for c in (0, 1):
            if x == c and (name, c) in _EXACT:
                v = kind.from_int(_EXACT[(name, c)])
                return v, v
    if kind is BINARY64:
        return _B64[name](x)
    if kind is BINARY32:
        lo, hi = _B64[name](x)
        return f32_round(lo, DOWN), f32_round(hi, UP)
    if name == "sqrt":
        return kind.sqrt(x, DOWN), kind.sqrt(x, UP)
    lo, hi = _mp_bounds(name, kind, x)
    return _clip(name, kind, x, lo, hi)


# -- trigonometric intervals ----------------------------------------------------------------


def _trig_info(kind: EndpointKind, x):
    """(k, r may be <= 0, r may be >= 0) or None when x is too large."""
    if kind is BINARY64 or kind is BINARY32:
        return _reduce64(x)
    neg, m, e = x.to_dyadic()
    if m == 0:
        return 0, None, None, True, True
    if e + m.bit_length() > _MAX_REDUCTION_BITS:
        return None
    red = _reduce_dyadic(neg, m, e)
    return red.k, None, None, red.lo <= 0, red.hi >= 0


def _trig_point(name: str, kind: EndpointKind, x, info) -> tuple:
    if x == 0:
        v = kind.from_int(_EXACT[(name, 0)])
        return v, v
    if kind is BINARY64 or kind is BINARY32:
        k, rl, rh = info[0], info[1], info[2]
        lo, hi = _trig64(name, k, rl, rh)
        if kind is BINARY32:
            return f32_round(lo, DOWN), f32_round(hi, UP)
        return lo, hi
    lo, hi = _mp_bounds(name, kind, x)
    if name == "tan":
        return lo, hi
    return _clip(name, kind, x, lo, hi)


def _trig(name: str, x: Interval) -> Interval:
    k = x.kind
    one = k.one()
    full = _mk(k, -one, one)
    if not (k.is_finite(x.lo) and k.is_finite(x.hi)):
        return full if name != "tan" else Interval.whole(k)
    ia = _trig_info(k, x.lo)
    ib = ia if x.lo == x.hi else _trig_info(k, x.hi)
    if ia is None or ib is None:
        return full if name != "tan" else Interval.whole(k)
    # integers t with t·pi/2 possibly inside x
    t_min = ia[0] if ia[3] else ia[0] + 1
    t_max = ib[0] if ib[4] else ib[0] - 1
    if name == "tan":
        if t_max >= t_min and (t_max - t_min >= 1 or t_min & 1):
            return Interval.whole(k)
        lo = _trig_point(name, k, x.lo, ia)[0]
        hi = _trig_point(name, k, x.hi, ib)[1]
        return _mk(k, lo, hi)
    if t_max - t_min >= 3:
        return full
    pa = _trig_point(name, k, x.lo, ia)
    pb = pa if ib is ia else _trig_point(name, k, x.hi, ib)
    lo = k.min(pa[0], pb[0])
    hi = k.max(pa[1], pb[1])
    top, bottom = (1, 3) if name == "sin" else (0, 2)
    for t in range(t_min, t_max + 1):
        if t % 4 == top:
            hi = one
        elif t % 4 == bottom:
            lo = -one
    return _mk(k, lo, hi)


# -- interval dispatch ---------------------------------------------------------------------------

_INCREASING = {"exp", "log", "sqrt", "atan", "asin", "sinh", "tanh", "asinh", "acosh", "atanh"}
# closed domain, plus boundary points that are not in the open domain
_DOMAIN = {
    "log": (0, None, (0,)),
    "sqrt": (0, None, ()),
    "asin": (-1, 1, ()),
    "acos": (-1, 1, ()),
    "acosh": (1, None, ()),
    "atanh": (-1, 1, (-1, 1)),
}


def _restrict(name: str, x: Interval) -> Interval:
    dom = _DOMAIN.get(name)
    if dom is None:
        return x
    k = x.kind
    lo = k.from_int(dom[0])
    hi = k.inf() if dom[1] is None else k.from_int(dom[1])
    r = intersect(x, _mk(k, lo, hi))
    if r.is_empty() or (r.lo == r.hi and any(r.lo == b for b in dom[2])):
        return Interval.empty(k, "domain")
    return r


def fn_enclosure(name: str, x: Interval) -> Interval:
    """Enclosure of ``{f(t) : t in x and the domain of f}``.

    The empty input gives an empty result with reason ``"empty"``; a
    nonempty input missing the domain entirely gives reason ``"domain"``.
    """
    if name not in FUNCTIONS and name not in HYPERBOLIC:
        raise ValueError(f"unknown function {name!r}")
    if x.is_empty():
        return x
    if name in ("sin", "cos", "tan"):
        return _trig(name, x)
    x = _restrict(name, x)
    if x.is_empty():
        return x
    k = x.kind
    if name in _INCREASING:
        return _mk(k, _point(name, k, x.lo)[0], _point(name, k, x.hi)[1])
    if name == "acos":
        return _mk(k, _point(name, k, x.hi)[0], _point(name, k, x.lo)[1])
    # cosh: even, smallest at 0
    if x.lo >= 0:
        return _mk(k, _point(name, k, x.lo)[0], _point(name, k, x.hi)[1])
    if x.hi <= 0:
        return _mk(k, _point(name, k, x.hi)[0], _point(name, k, x.lo)[1])
    far = x.lo if -x.lo > x.hi else x.hi
    return _mk(k, k.one(), _point(name, k, far)[1])


def _apply(name: str, x):
    if isinstance(x, Interval):
        return fn_enclosure(name, x)
    method = getattr(x, "_apply_function", None)
    if method is not None:
        return method(name)
    return fn_enclosure(name, Interval(x))


def sin(x):
    return _apply("sin", x)


def cos(x):
    return _apply("cos", x)


def tan(x):
    return _apply("tan", x)


def asin(x):
    return _apply("asin", x)


def acos(x):
    return _apply("acos", x)


def atan(x):
    return _apply("atan", x)


def exp(x):
    return _apply("exp", x)


def log(x):
    return _apply("log", x)


def sqrt(x):
    return _apply("sqrt", x)


def sinh(x):
    return _apply("sinh", x)


def cosh(x):
    return _apply("cosh", x)


def tanh(x):
    return _apply("tanh", x)


def asinh(x):
    return _apply("asinh", x)


def acosh(x):
    return _apply("acosh", x)


def atanh(x):
    return _apply("atanh", x)


# -- cos(pi·p/q) with a rigorous fixed-point kernel ------------------------------------------------


def _sin_fixed(t: int, w: int) -> tuple[int, int]:
    # sin(t·2**-w) for 0 <= t·2**-w < 1, as [lo, hi]·2**-w
    t2 = (t * t) >> w
    term = t
    s = t
    k = 1
    n = 1
    while term:
        term = (term * t2 >> w) // ((2 * k) * (2 * k + 1))
        s += -term if k & 1 else term
        k += 1
        n += 1
    err = 3 * n + 4
    return s - err, s + err


def _cos_fixed(t: int, w: int) -> tuple[int, int]:
    t2 = (t * t) >> w
    term = 1 << w
    s = term
    k = 1
    n = 1
    while term:
        term = (term * t2 >> w) // ((2 * k - 1) * (2 * k))
        s += -term if k & 1 else term
        k += 1
        n += 1
    err = 3 * n + 4
    return s - err, s + err


def cos_pi(p: int, q: int, kind: EndpointKind = BINARY64) -> Interval:
    """Enclosure of ``cos(pi·p/q)``, exact at multiples of pi/2.

    Angles are folded into ``[0, pi/4]`` by symmetries that are exact, so
    ``cos_pi(p, q)`` and ``cos_pi(q - p, q)`` are exact negatives.
    """
    if q <= 0:
        raise ValueError("denominator must be positive")
    num, den = p % (2 * q), q  # angle pi·num/den in [0, 2pi)
    if 2 * num > 2 * den:
        num = 2 * den - num
    sign = 1
    if 2 * num > den:
        num = den - num
        sign = -1
    # now angle = pi·num/den in [0, pi/2]
    if num == 0:
        v = kind.from_int(sign)
        return _mk(kind, v, v)
    if 2 * num == den:
        return _mk(kind, kind.zero(), kind.zero())
    w = max(256, kind.precision_bits + 128)
    plo, phi = _pi_fixed(w)
    if 4 * num <= den:
        # cos is decreasing on [0, pi/4]
        tlo = plo * num // den
        thi = -(-phi * num // den)
        lo = _cos_fixed(thi, w)[0]
        hi = _cos_fixed(tlo, w)[1]
    else:
        # cos(a) = sin(pi/2 - a), with pi/2 - a in (0, pi/4)
        num = den - 2 * num
        den = 2 * den
        tlo = plo * num // den
        thi = -(-phi * num // den)
        lo = _sin_fixed(tlo, w)[0]
        hi = _sin_fixed(thi, w)[1]
    lo = max(lo, 0)
    hi = min(hi, 1 << w)
    if sign < 0:
        lo, hi = -hi, -lo
    return _mk(
        kind,
        kind.from_dyadic(lo < 0, abs(lo), -w, DOWN),
        kind.from_dyadic(hi < 0, abs(hi), -w, UP),
    )

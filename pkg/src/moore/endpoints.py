"""Endpoint kinds and directed-rounding endpoint arithmetic.

Three families of endpoints are supported:

* ``BINARY64``: Python floats.
* ``BINARY32``: Python floats whose values are binary32 numbers.
* ``bigfloat(N)``: :class:`~moore.bigfloat.BigFloat` with N significand bits.

Hardware directed rounding is realized without touching the FPU mode.  The
round-to-nearest result is computed, its exact error recovered with an
error-free transformation, and the result stepped one ulp when the error
points the wrong way.  Where those transformations could overflow or
underflow the computation falls back to exact integer arithmetic, so every
result is the correctly rounded value in the requested direction.
"""

from __future__ import annotations

import functools
import math
import re
import struct
from fractions import Fraction

from . import bigfloat as _bf
from .bigfloat import BigFloat, float_dyadic, rational_dyadic, round_binary
from .errors import InvalidExtendedFormError, NoCommonKindError
from .rounding import DOWN, UP, Direction, RoundingGuard, UpRounding, check_guard

__all__ = [
    "BINARY32", "BINARY64", "Direction", "DOWN", "UP", "EndpointKind", "RoundingGuard",
    "UpRounding", "bigfloat", "dir_arith", "exact_convertible", "kind_of", "parse_kind",
    "promote",
]

INF = math.inf
MAX64 = 1.7976931348623157e308
MAX32 = 3.4028234663852886e38
_SPLIT = 134217729.0  # 2**27 + 1

# The error-free transformations are exact inside these bounds.
_BIG = 2.0 ** 995
_TINY = 2.0 ** -960


# -- binary64 --------------------------------------------------------------


def _overflow64(positive: bool, rnd: Direction) -> float:
    if positive:
        return INF if rnd is UP else MAX64
    return -MAX64 if rnd is UP else -INF


def _adjust(r: float, err, rnd: Direction) -> float:
    # err is anything whose sign is the sign of (exact - r)
    if rnd is UP:
        return math.nextafter(r, INF) if err > 0 else r
    return math.nextafter(r, -INF) if err < 0 else r


def _invalid(what: str):
    raise InvalidExtendedFormError(what)


def _two_prod_err(a: float, b: float, p: float) -> float:
    # Dekker: exact a*b - p, given no overflow in the split and no underflow
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def add64(a: float, b: float, rnd: Direction) -> float:
    s = a + b
    if s - s != 0.0:  # inf or nan
        if s != s:
            _invalid("inf - inf")
        if a - a == 0.0 and b - b == 0.0:
            return _overflow64(s > 0, rnd)
        return s
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    if err == 0.0:
        return s + 0.0 if s == 0.0 else s
    return _adjust(s, err, rnd)


def sub64(a: float, b: float, rnd: Direction) -> float:
    return add64(a, -b, rnd)


def mul64(a: float, b: float, rnd: Direction) -> float:
    p = a * b
    if p - p != 0.0:
        if p != p:
            _invalid("0 * inf")
        if a - a == 0.0 and b - b == 0.0:
            return _overflow64(p > 0, rnd)
        return p
    if p == 0.0:
        if a == 0.0 or b == 0.0:
            return 0.0
        return _exact_mul64(a, b, rnd)
    ap = abs(p)
    if abs(a) < _BIG and abs(b) < _BIG and _TINY < ap:
        return _adjust(p, _two_prod_err(a, b, p), rnd)
    return _exact_mul64(a, b, rnd)


def div64(a: float, b: float, rnd: Direction) -> float:
    if b == 0.0:
        if a == 0.0 or a != a:
            _invalid("0 / 0")
        return INF if (a > 0) == (math.copysign(1.0, b) > 0) else -INF
    q = a / b
    if q - q != 0.0:
        if q != q:
            _invalid("inf / inf")
        if a - a == 0.0:
            return _overflow64(q > 0, rnd)
        return q
    if a - a != 0.0:
        _invalid("nan")
    if q == 0.0:
        if a == 0.0 or b - b != 0.0:
            return 0.0
        return _exact_div64(a, b, rnd)
    aq = abs(q)
    if _TINY < abs(a) < _BIG and abs(b) < _BIG and _TINY < aq < _BIG:
        p = q * b
        r = (a - p) - _two_prod_err(q, b, p)
        if r == 0.0:
            return q
        # exact - q has the sign of r / b
        return _adjust(q, r if b > 0 else -r, rnd)
    return _exact_div64(a, b, rnd)


def sqrt64(a: float, rnd: Direction) -> float:
    if a < 0.0:
        _invalid("sqrt of a negative number")
    if a == 0.0 or a == INF:
        return a + 0.0
    s = math.sqrt(a)
    if _TINY < a < _BIG:
        p = s * s
        r = (a - p) - _two_prod_err(s, s, p)
        return _adjust(s, r, rnd) if r != 0.0 else s
    neg, m, e = float_dyadic(a)
    return _sqrt_dyadic(m, e, rnd, 53, -1074, 1024)


def _exact_mul64(a: float, b: float, rnd: Direction) -> float:
    na, ma, ea = float_dyadic(a)
    nb, mb, eb = float_dyadic(b)
    return round_binary(na != nb, ma * mb, ea + eb, rnd, 53, -1074, 1024)


def _exact_div64(a: float, b: float, rnd: Direction) -> float:
    pa, qa = a.as_integer_ratio()
    pb, qb = b.as_integer_ratio()
    neg, m, e, sticky = rational_dyadic(pa * qb, qa * pb, 60)
    return round_binary(neg, m, e, rnd, 53, -1074, 1024, sticky)


def _sqrt_dyadic(m: int, e: int, rnd, prec: int, min_lsb: int, emax: int) -> float:
    shift = max(0, 2 * (prec + 4) - m.bit_length())
    if (e - shift) & 1:
        shift += 1
    m <<= shift
    e -= shift
    r = math.isqrt(m)
    return round_binary(False, r, e // 2, rnd, prec, min_lsb, emax, r * r != m)


# -- binary32 --------------------------------------------------------------

_F = struct.Struct("<f")
_I = struct.Struct("<I")


def f32_nearest(x: float) -> float:
    """Round a binary64 value to the nearest binary32 value."""
    if abs(x) > MAX32:
        # beyond the halfway point to 2**128 rounds to infinity
        if abs(x) >= 3.4028235677973366e38:
            return math.copysign(INF, x)
        return math.copysign(MAX32, x)
    return _F.unpack(_F.pack(x))[0]


def f32_next(x: float, up: bool) -> float:
    """Neighbouring binary32 value of a binary32 value ``x``."""
    if x != x:
        return x
    if x == 0.0:
        t = 1.401298464324817e-45
        return t if up else -t
    if math.isinf(x):
        if (x > 0) == up:
            return x
        return math.copysign(MAX32, x)
    bits = _I.unpack(_F.pack(x))[0]
    bits += 1 if (x > 0) == up else -1
    return _F.unpack(_I.pack(bits))[0]


def f32_round(x: float, rnd: Direction) -> float:
    """Directed rounding of a binary64 value to binary32."""
    if x - x != 0.0:
        return x
    y = f32_nearest(x)
    if rnd is UP:
        if y < x:
            y = f32_next(y, True)
    elif y > x:
        y = f32_next(y, False)
    return y + 0.0 if y == 0.0 else y


# -- kinds ------------------------------------------------------------------


class EndpointKind:
    """A precision level with directed-rounding endpoint operations."""

    name: str
    precision_bits: int

    def __repr__(self) -> str:
        return self.name

    def __reduce__(self):
        return (parse_kind, (self.name,))

    # values shared by every kind
    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int, rnd: Direction | None = None):
        return self.from_dyadic(n < 0, abs(n), 0, rnd if rnd is not None else DOWN)

    def from_rational(self, p: int, q: int, rnd: Direction):
        neg, m, e, sticky = rational_dyadic(p, q, self.precision_bits + 4)
        if m == 0:
            return self.zero()
        return self.from_dyadic(neg, m, e, rnd, sticky)

    def from_fraction(self, f: Fraction, rnd: Direction):
        return self.from_rational(f.numerator, f.denominator, rnd)

    def convert(self, x, rnd: Direction = DOWN):
        """Directed rounding of an endpoint of any kind into this kind."""
        k = kind_of(x)
        if k is self:
            return x
        if not k.is_finite(x):
            return self.inf() if x > 0 else self.ninf()
        neg, m, e = k.to_dyadic(x)
        if m == 0:
            return self.zero()
        return self.from_dyadic(neg, m, e, rnd)

    def to_fraction(self, x) -> Fraction:
        neg, m, e = self.to_dyadic(x)
        if neg:
            m = -m
        return Fraction(m << e) if e >= 0 else Fraction(m, 1 << -e)

    def to_bigfloat(self, x, precision: int | None = None) -> BigFloat:
        """Exact BigFloat image (``precision`` must hold the value)."""
        p = precision or max(self.precision_bits, 2)
        if not self.is_finite(x):
            return BigFloat.inf(p, x < 0)
        neg, m, e = self.to_dyadic(x)
        return BigFloat.from_dyadic(neg, m, e, p, None)

    def min(self, a, b):
        return b if b < a else a

    def max(self, a, b):
        return b if b > a else a

    def arith(self, op: str, a, b, rnd: Direction):
        return getattr(self, op)(a, b, rnd)


class _HardwareKind(EndpointKind):
    _emax: int
    _min_lsb: int
    max_finite_value: float

    def inf(self):
        return INF

    def ninf(self):
        return -INF

    def zero(self):
        return 0.0

    def one(self):
        return 1.0

    def max_finite(self):
        return self.max_finite_value

    def is_finite(self, x) -> bool:
        return x - x == 0.0

    def to_dyadic(self, x: float):
        if x - x != 0.0:
            raise OverflowError("infinite endpoint has no dyadic form")
        return float_dyadic(x)

    def to_fraction(self, x) -> Fraction:
        return Fraction(x)

    def from_dyadic(self, neg: bool, m: int, e: int, rnd: Direction, sticky: bool = False) -> float:
        return round_binary(neg, m, e, rnd, self.precision_bits, self._min_lsb, self._emax, sticky)

    def from_bigfloat(self, a: BigFloat, rnd: Direction) -> float:
        if not a.is_finite():
            return -INF if a.neg else INF
        return self.from_dyadic(*a.to_dyadic(), rnd)

    def neg(self, x):
        return -x

    def hex(self, x: float) -> str:
        if x == INF:
            return "inf"
        if x == -INF:
            return "-inf"
        return _bf.dyadic_hex(*float_dyadic(x))

    def ulp(self, x: float) -> float:
        if x - x != 0.0:
            return INF
        a = abs(x)
        return self.next_up(a) - a if a < self.max_finite_value else a - self.next_down(a)

    def coerce(self, x) -> float:
        return float(x)


class Binary64Kind(_HardwareKind):
    name = "binary64"
    precision_bits = 53
    _emax = 1024
    _min_lsb = -1074
    max_finite_value = MAX64

    add = staticmethod(add64)
    sub = staticmethod(sub64)
    mul = staticmethod(mul64)
    div = staticmethod(div64)
    sqrt = staticmethod(sqrt64)

    def from_float(self, x: float, rnd: Direction = DOWN) -> float:
        return x

    @staticmethod
    def next_up(x: float) -> float:
        return math.nextafter(x, INF)

    @staticmethod
    def next_down(x: float) -> float:
        return math.nextafter(x, -INF)


class Binary32Kind(_HardwareKind):
    name = "binary32"
    precision_bits = 24
    _emax = 128
    _min_lsb = -149
    max_finite_value = MAX32

    # Directed binary64 results round again to binary32 in the same
    # direction; two directed roundings to nested grids equal one.
    @staticmethod
    def add(a, b, rnd):
        return f32_round(add64(a, b, rnd), rnd)

    @staticmethod
    def sub(a, b, rnd):
        return f32_round(add64(a, -b, rnd), rnd)

    @staticmethod
    def mul(a, b, rnd):
        return f32_round(mul64(a, b, rnd), rnd)

    @staticmethod
    def div(a, b, rnd):
        return f32_round(div64(a, b, rnd), rnd)

    @staticmethod
    def sqrt(a, rnd):
        return f32_round(sqrt64(a, rnd), rnd)

    def from_float(self, x: float, rnd: Direction = DOWN) -> float:
        return f32_round(float(x), rnd)

    @staticmethod
    def next_up(x: float) -> float:
        return f32_next(x, True)

    @staticmethod
    def next_down(x: float) -> float:
        return f32_next(x, False)


class BigFloatKind(EndpointKind):
    """Endpoints with an N-bit software significand."""

    def __init__(self, precision: int):
        self.precision_bits = precision
        self.name = f"bigfloat({precision})"
        self._inf = BigFloat.inf(precision)
        self._ninf = BigFloat.inf(precision, True)
        self._zero = BigFloat.zero(precision)
        self._one = BigFloat(1, precision)

    def inf(self):
        return self._inf

    def ninf(self):
        return self._ninf

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def max_finite(self):
        return BigFloat.max_finite(self.precision_bits)

    def is_finite(self, x: BigFloat) -> bool:
        return x.fclass is _bf.FINITE

    def to_dyadic(self, x: BigFloat):
        return x.to_dyadic()

    def to_fraction(self, x: BigFloat) -> Fraction:
        return x.to_fraction()

    def from_dyadic(self, neg, m, e, rnd, sticky=False) -> BigFloat:
        return _bf._round(neg, m, e, self.precision_bits, rnd, sticky)

    def from_bigfloat(self, a: BigFloat, rnd: Direction) -> BigFloat:
        return _bf._convert(a, self.precision_bits, rnd)

    def from_float(self, x: float, rnd: Direction = DOWN) -> BigFloat:
        return BigFloat(float(x), self.precision_bits, rnd)

    def _fit(self, a: BigFloat) -> BigFloat:
        if a.precision != self.precision_bits:
            raise NoCommonKindError(f"{a.precision}-bit operand in a {self.name} operation")
        return a

    def add(self, a, b, rnd):
        return _bf.bf_add(self._fit(a), self._fit(b), rnd)

    def sub(self, a, b, rnd):
        return _bf.bf_add(self._fit(a), -self._fit(b), rnd)

    def mul(self, a, b, rnd):
        return _bf.bf_mul(self._fit(a), self._fit(b), rnd)

    def div(self, a, b, rnd):
        return _bf.bf_div(self._fit(a), self._fit(b), rnd)

    def sqrt(self, a, rnd):
        return _bf.bf_sqrt(self._fit(a), rnd)

    def neg(self, x):
        return -x

    def next_up(self, x: BigFloat) -> BigFloat:
        return x.next_up()

    def next_down(self, x: BigFloat) -> BigFloat:
        return x.next_down()

    def ulp(self, x: BigFloat) -> BigFloat:
        return x.ulp()

    def hex(self, x: BigFloat) -> str:
        return x.hex()

    def coerce(self, x) -> BigFloat:
        return x if isinstance(x, BigFloat) else BigFloat(x, self.precision_bits)


BINARY64 = Binary64Kind()
BINARY32 = Binary32Kind()


@functools.lru_cache(maxsize=None)
def bigfloat(precision: int) -> BigFloatKind:
    """The endpoint kind with ``precision`` significand bits."""
    if not isinstance(precision, int) or precision < 2:
        raise ValueError("bigfloat precision must be an integer >= 2")
    return BigFloatKind(precision)


def kind_of(x) -> EndpointKind:
    """Endpoint kind of a value; plain floats are binary64."""
    if isinstance(x, BigFloat):
        return bigfloat(x.precision)
    if isinstance(x, float):
        return BINARY64
    tname = type(x).__name__
    if tname == "float32":
        return BINARY32
    if tname == "float64":
        return BINARY64
    raise TypeError(f"{type(x).__name__} is not an endpoint value")


_KIND_RE = re.compile(r"(?:bigfloat|real|bf)\s*[(<]?\s*(\d+)\s*[)>]?")


def parse_kind(text: str | EndpointKind) -> EndpointKind:
    """Kind from a name such as ``binary64``, ``double``, ``bigfloat(256)``."""
    if isinstance(text, EndpointKind):
        return text
    t = text.strip().lower()
    if t in ("binary64", "double", "f64", "float64"):
        return BINARY64
    if t in ("binary32", "float", "f32", "float32", "single"):
        return BINARY32
    m = _KIND_RE.fullmatch(t)
    if m:
        return bigfloat(int(m.group(1)))
    raise ValueError(f"unknown endpoint kind {text!r}")


def exact_convertible(src: EndpointKind, dst: EndpointKind) -> bool:
    """Whether every finite value of ``src`` is representable in ``dst``.

    BigFloat exponents reach far beyond any hardware format, so no bigfloat
    kind converts exactly into binary32 or binary64.
    """
    if src is dst:
        return True
    if isinstance(dst, BigFloatKind):
        return src.precision_bits <= dst.precision_bits
    if isinstance(src, BigFloatKind):
        return False
    return src is BINARY32 and dst is BINARY64


def promote(a: EndpointKind, b: EndpointKind) -> EndpointKind:
    """The kind into which the other converts exactly."""
    if a is b:
        return a
    if exact_convertible(b, a):
        return a
    if exact_convertible(a, b):
        return b
    raise NoCommonKindError(f"no exact conversion between {a} and {b}")


def dir_arith(op: str, a, b, rnd: Direction, kind: EndpointKind | None = None):
    """``a op b`` rounded in direction ``rnd``, for op in add/sub/mul/div."""
    check_guard()
    if kind is None:
        kind = kind_of(a)
    if op not in ("add", "sub", "mul", "div"):
        raise ValueError(f"unknown operation {op!r}")
    return getattr(kind, op)(a, b, rnd)

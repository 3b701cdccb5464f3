"""Closed intervals of extended reals with directed-rounding arithmetic.

Every operation returns an interval containing the exact result set of the
real operation applied to its operands.  Lower endpoints are rounded down,
upper endpoints up; each finite endpoint is the correctly rounded bound, so
it is within one ulp of the tightest enclosure.

>>> x = Interval(2.0, 3.0)
>>> y = Interval(5, 6) | Interval(-1, 2)
>>> (x * y).lo, (x * y).hi
(-3.0, 18.0)
"""

from __future__ import annotations

import numbers
from fractions import Fraction

from .bigfloat import BigFloat
from .endpoints import BINARY64, DOWN, UP, EndpointKind, kind_of, parse_kind, promote
from .errors import EmptyIntervalError, InvalidIntervalError

__all__ = [
    "Interval", "abs_", "arith", "arith_mixed", "contains", "extended_div", "hull", "interior",
    "intersect", "is_empty", "mag", "make", "midpoint", "mig", "pown", "sqr", "subset", "whole",
    "width", "radius",
]

_INF = float("inf")


class Interval:
    """A closed interval ``[lo, hi]`` over one endpoint kind, or the empty set.

    ``Interval()`` is empty, ``Interval("[1/3, 2]")`` parses a literal,
    ``Interval(2, 3)`` builds from endpoints and ``Interval(x)`` is the point
    ``[x, x]``.  Inexact endpoint values (``1/3`` as a Fraction, ints beyond
    the precision) are rounded outward.
    """

    __slots__ = ("kind", "lo", "hi", "_empty", "_reason")

    def __init__(self, lo=None, hi=None, kind: EndpointKind | str | None = None):
        if kind is not None:
            kind = parse_kind(kind)
        if lo is None and hi is None:
            _set(self, kind or BINARY64, None, None, True, "empty")
            return
        if hi is None and isinstance(lo, str) and lo.lstrip().startswith("["):
            from .textio import parse_interval

            other = parse_interval(lo, kind or BINARY64)
            _set(self, other.kind, other.lo, other.hi, other._empty, other._reason)
            return
        if hi is None:
            hi = lo
        if kind is None:
            kind = _infer_kind(lo, hi)
        a = _endpoint(kind, lo, DOWN)
        b = _endpoint(kind, hi, UP)
        _check(kind, a, b)
        _set(self, kind, a, b, False, None)

    # -- construction --------------------------------------------------------

    @classmethod
    def empty(cls, kind: EndpointKind = BINARY64, reason: str = "empty") -> "Interval":
        return _mk_empty(kind, reason)

    @classmethod
    def whole(cls, kind: EndpointKind = BINARY64) -> "Interval":
        return _mk(kind, kind.ninf(), kind.inf())

    @classmethod
    def point(cls, x, kind: EndpointKind | None = None) -> "Interval":
        return cls(x, x, kind)

    def to_kind(self, kind: EndpointKind | str) -> "Interval":
        """Outward-rounded image in another kind (exact when possible)."""
        kind = parse_kind(kind)
        if kind is self.kind:
            return self
        if self._empty:
            return _mk_empty(kind, self._reason)
        return _mk(kind, kind.convert(self.lo, DOWN), kind.convert(self.hi, UP))

    # -- inspection ----------------------------------------------------------

    @property
    def inf(self):
        return self.lo

    @property
    def sup(self):
        return self.hi

    @property
    def reason(self) -> str | None:
        """Why an empty interval is empty: ``"empty"`` or ``"domain"``."""
        return self._reason

    def is_empty(self) -> bool:
        return self._empty

    def is_point(self) -> bool:
        return not self._empty and self.lo == self.hi

    def is_bounded(self) -> bool:
        return not self._empty and self.kind.is_finite(self.lo) and self.kind.is_finite(self.hi)

    def is_whole(self) -> bool:
        return not self._empty and self.lo == -_INF and self.hi == _INF

    def __bool__(self) -> bool:
        return not self._empty

    def __contains__(self, t) -> bool:
        return contains(self, t)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        if self._empty or other._empty:
            return self._empty and other._empty
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        if self._empty:
            return hash(())
        return hash((self.lo, self.hi))

    def __repr__(self) -> str:
        from .textio import format_hex

        return f"Interval({format_hex(self)!r}, kind={self.kind.name!r})"

    def __str__(self) -> str:
        from .textio import format_interval

        return format_interval(self)

    def __format__(self, spec: str) -> str:
        if not spec:
            return str(self)
        from .textio import format_interval

        return format_interval(self, spec)

    def __reduce__(self):
        from .textio import format_hex

        return (Interval, (format_hex(self), None, self.kind.name))

    # -- operators ---------------------------------------------------------------

    def __add__(self, other):
        return _binop("add", self, other)

    def __radd__(self, other):
        return _binop("add", other, self)

    def __sub__(self, other):
        return _binop("sub", self, other)

    def __rsub__(self, other):
        return _binop("sub", other, self)

    def __mul__(self, other):
        return _binop("mul", self, other)

    def __rmul__(self, other):
        return _binop("mul", other, self)

    def __truediv__(self, other):
        return _binop("div", self, other)

    def __rtruediv__(self, other):
        return _binop("div", other, self)

    def __neg__(self) -> "Interval":
        if self._empty:
            return self
        return _mk(self.kind, -self.hi, -self.lo)

    def __pos__(self) -> "Interval":
        return self

    def __abs__(self) -> "Interval":
        return abs_(self)

    def __pow__(self, n):
        if isinstance(n, numbers.Integral):
            return pown(self, int(n))
        return NotImplemented

    def __and__(self, other):
        return intersect(self, other)

    def __rand__(self, other):
        return intersect(other, self)

    def __or__(self, other):
        return hull(self, other)

    def __ror__(self, other):
        return hull(other, self)


# -- construction helpers -----------------------------------------------------


def _set(obj, kind, lo, hi, empty, reason):
    obj.kind = kind
    obj.lo = lo + 0.0 if lo.__class__ is float and not lo else lo
    obj.hi = hi + 0.0 if hi.__class__ is float and not hi else hi
    obj._empty = empty
    obj._reason = reason


_new = object.__new__


def _mk(kind: EndpointKind, lo, hi) -> Interval:
    # Trusted constructor; +0.0 replaces -0.0 so the sign of zero never leaks.
    r = _new(Interval)
    r.kind = kind
    r.lo = lo if lo else lo + 0.0 if lo.__class__ is float else lo
    r.hi = hi if hi else hi + 0.0 if hi.__class__ is float else hi
    r._empty = False
    r._reason = None
    return r


def _mk_empty(kind: EndpointKind, reason: str = "empty") -> Interval:
    r = _new(Interval)
    r.kind = kind
    r.lo = None
    r.hi = None
    r._empty = True
    r._reason = reason
    return r


def _infer_kind(lo, hi) -> EndpointKind:
    kinds = []
    for v in (lo, hi):
        try:
            kinds.append(kind_of(v))
        except TypeError:
            pass
    if not kinds:
        return BINARY64
    k = kinds[0]
    for other in kinds[1:]:
        k = promote(k, other)
    return k


def _endpoint(kind: EndpointKind, v, rnd):
    """Directed rounding of a user-supplied endpoint value into ``kind``."""
    if isinstance(v, bool):
        raise TypeError("bool is not an endpoint value")
    if isinstance(v, float):
        if v != v:
            raise InvalidIntervalError("NaN endpoint")
        if v - v != 0.0:
            return kind.inf() if v > 0 else kind.ninf()
        return kind.from_float(v, rnd)
    if isinstance(v, int):
        return kind.from_int(v, rnd)
    if isinstance(v, BigFloat):
        return kind.from_bigfloat(v, rnd)
    if isinstance(v, Fraction):
        return kind.from_fraction(v, rnd)
    if isinstance(v, str):
        from .textio import parse_number

        return parse_number(v, rnd, kind)
    if isinstance(v, numbers.Integral):
        return kind.from_int(int(v), rnd)
    if isinstance(v, numbers.Real):
        return _endpoint(kind, float(v), rnd)
    raise TypeError(f"cannot use {type(v).__name__} as an endpoint")


def _check(kind: EndpointKind, a, b) -> None:
    if b < a:
        raise InvalidIntervalError(f"lower bound {kind.hex(a)} exceeds upper bound {kind.hex(b)}")
    if a == _INF or b == -_INF:
        raise InvalidIntervalError("interval with no real points")


def make(lo, hi, kind: EndpointKind | str | None = None) -> Interval:
    """The interval ``[lo, hi]``; raises InvalidIntervalError if it has no real points."""
    return Interval(lo, hi, kind)


def whole(kind: EndpointKind = BINARY64) -> Interval:
    return Interval.whole(kind)


# -- coercion -------------------------------------------------------------------


def _scalar_kind(s) -> EndpointKind | None:
    # Exact scalars (int, Fraction, str) take the interval's kind.
    try:
        return kind_of(s)
    except TypeError:
        return None


def _as_interval(s, kind: EndpointKind) -> Interval:
    if isinstance(s, Interval):
        return s
    if isinstance(s, str):
        from .textio import parse_interval

        return parse_interval(s, kind)
    return Interval(s, s, kind)


def _unify(x, y) -> tuple[Interval, Interval]:
    """Bring two operands (at least one an Interval) into one kind."""
    if isinstance(x, Interval) and isinstance(y, Interval):
        if x.kind is y.kind:
            return x, y
        k = promote(x.kind, y.kind)
        return x.to_kind(k), y.to_kind(k)
    if isinstance(x, Interval):
        sk = _scalar_kind(y)
        k = x.kind if sk is None else promote(x.kind, sk)
        return x.to_kind(k), _as_interval(y, k)
    if isinstance(y, Interval):
        sk = _scalar_kind(x)
        k = y.kind if sk is None else promote(y.kind, sk)
        return _as_interval(x, k), y.to_kind(k)
    raise TypeError("at least one operand must be an Interval")


def _binop(op, x, y):
    try:
        a, b = _unify(x, y)
    except TypeError:
        if isinstance(x, Interval) and isinstance(y, Interval):
            raise
        return NotImplemented
    return _ARITH[op](a, b)


# -- arithmetic ---------------------------------------------------------------------


def _add(x: Interval, y: Interval) -> Interval:
    k = x.kind
    if x._empty or y._empty:
        return _mk_empty(k)
    return _mk(k, k.add(x.lo, y.lo, DOWN), k.add(x.hi, y.hi, UP))


def _sub(x: Interval, y: Interval) -> Interval:
    k = x.kind
    if x._empty or y._empty:
        return _mk_empty(k)
    return _mk(k, k.sub(x.lo, y.hi, DOWN), k.sub(x.hi, y.lo, UP))


def _m(k, a, b, rnd):
    # 0 * inf contributes 0: the zero factor is an attained value
    if a and b:
        return k.mul(a, b, rnd)
    return k.zero()


def _mul(x: Interval, y: Interval) -> Interval:
    k = x.kind
    if x._empty or y._empty:
        return _mk_empty(k)
    a1, a2, b1, b2 = x.lo, x.hi, y.lo, y.hi
    if a1 >= 0:
        if b1 >= 0:
            return _mk(k, _m(k, a1, b1, DOWN), _m(k, a2, b2, UP))
        if b2 <= 0:
            return _mk(k, _m(k, a2, b1, DOWN), _m(k, a1, b2, UP))
        return _mk(k, _m(k, a2, b1, DOWN), _m(k, a2, b2, UP))
    if a2 <= 0:
        if b1 >= 0:
            return _mk(k, _m(k, a1, b2, DOWN), _m(k, a2, b1, UP))
        if b2 <= 0:
            return _mk(k, _m(k, a2, b2, DOWN), _m(k, a1, b1, UP))
        return _mk(k, _m(k, a1, b2, DOWN), _m(k, a1, b1, UP))
    if b1 >= 0:
        return _mk(k, _m(k, a1, b2, DOWN), _m(k, a2, b2, UP))
    if b2 <= 0:
        return _mk(k, _m(k, a2, b1, DOWN), _m(k, a1, b1, UP))
    lo = k.min(_m(k, a1, b2, DOWN), _m(k, a2, b1, DOWN))
    hi = k.max(_m(k, a1, b1, UP), _m(k, a2, b2, UP))
    return _mk(k, lo, hi)


def _div_nonzero(k, a1, a2, b1, b2) -> Interval:
    # 0 not in [b1, b2]; no inf/inf can occur because the interval
    # invariants keep a1 < +inf, a2 > -inf and b1 (resp. b2) finite here
    if b1 > 0:
        if a1 >= 0:
            return _mk(k, k.div(a1, b2, DOWN), k.div(a2, b1, UP))
        if a2 <= 0:
            return _mk(k, k.div(a1, b1, DOWN), k.div(a2, b2, UP))
        return _mk(k, k.div(a1, b1, DOWN), k.div(a2, b1, UP))
    if a1 >= 0:
        return _mk(k, k.div(a2, b2, DOWN), k.div(a1, b1, UP))
    if a2 <= 0:
        return _mk(k, k.div(a2, b1, DOWN), k.div(a1, b2, UP))
    return _mk(k, k.div(a2, b2, DOWN), k.div(a1, b2, UP))


def _div(x: Interval, y: Interval) -> Interval:
    k = x.kind
    if x._empty or y._empty:
        return _mk_empty(k)
    a1, a2, b1, b2 = x.lo, x.hi, y.lo, y.hi
    if b1 > 0 or b2 < 0:
        return _div_nonzero(k, a1, a2, b1, b2)
    if b1 == 0 and b2 == 0:
        # no quotient exists; the connected convention is the whole line
        return Interval.whole(k)
    if a1 == 0 and a2 == 0:
        return _mk(k, k.zero(), k.zero())
    if b1 < 0 < b2 or (a1 < 0 < a2):
        return Interval.whole(k)
    if b1 == 0:
        if a1 >= 0:
            return _mk(k, k.div(a1, b2, DOWN), k.inf())
        return _mk(k, k.ninf(), k.div(a2, b2, UP))
    if a1 >= 0:
        return _mk(k, k.ninf(), k.div(a1, b1, UP))
    return _mk(k, k.div(a2, b1, DOWN), k.inf())


_ARITH = {"add": _add, "sub": _sub, "mul": _mul, "div": _div}


def arith(op: str, x: Interval, y: Interval) -> Interval:
    """Enclosure of ``{a op b : a in x, b in y}`` for op in add/sub/mul/div.

    Division by an interval containing zero returns the connected hull of
    the quotient set (the whole line when it is two rays).
    """
    try:
        fn = _ARITH[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    a, b = _unify(x, y)
    return fn(a, b)


def arith_mixed(op: str, x: Interval, s) -> Interval:
    """``arith(op, x, [s, s])``, promoting kinds when ``s`` is wider."""
    if isinstance(s, Interval):
        raise TypeError("arith_mixed takes a scalar second operand")
    return arith(op, x, s)


def extended_div(x: Interval, y: Interval) -> tuple[Interval, Interval]:
    """Two-piece division ``{a / b : a in x, b in y, b != 0}``.

    Returns ``(first, second)`` with ``second`` empty unless the quotient
    set is two disjoint rays, in which case ``first`` is the left ray.
    """
    x, y = _unify(x, y)
    k = x.kind
    none = _mk_empty(k)
    if x._empty or y._empty:
        return none, none
    a1, a2, b1, b2 = x.lo, x.hi, y.lo, y.hi
    if b1 > 0 or b2 < 0:
        return _div_nonzero(k, a1, a2, b1, b2), none
    if a1 <= 0 <= a2:
        return Interval.whole(k), none
    if b1 == 0 and b2 == 0:
        return none, none
    if b1 == 0:
        if a2 < 0:
            return _mk(k, k.ninf(), k.div(a2, b2, UP)), none
        return _mk(k, k.div(a1, b2, DOWN), k.inf()), none
    if b2 == 0:
        if a2 < 0:
            return _mk(k, k.div(a2, b1, DOWN), k.inf()), none
        return _mk(k, k.ninf(), k.div(a1, b1, UP)), none
    if a2 < 0:
        return _mk(k, k.ninf(), k.div(a2, b2, UP)), _mk(k, k.div(a2, b1, DOWN), k.inf())
    return _mk(k, k.ninf(), k.div(a1, b1, UP)), _mk(k, k.div(a1, b2, DOWN), k.inf())


def sqr(x: Interval) -> Interval:
    """``{t*t : t in x}``, tighter than ``x * x`` when x straddles zero."""
    if x._empty:
        return x
    k = x.kind
    lo, hi = mig(x), mag(x)
    return _mk(k, _m(k, lo, lo, DOWN), _m(k, hi, hi, UP))


def _pow_pos(k, a, n: int, rnd):
    # a >= 0; repeated squaring is monotone in each factor, so directed
    # rounding at every step gives a directed result
    result = k.one()
    base = a
    while n:
        if n & 1:
            result = _m(k, result, base, rnd)
        n >>= 1
        if n:
            base = _m(k, base, base, rnd)
    return result


def pown(x: Interval, n: int) -> Interval:
    """Integer power ``{t**n : t in x}``; negative n divides into one."""
    if x._empty:
        return x
    k = x.kind
    if n == 0:
        return _mk(k, k.one(), k.one())
    if n < 0:
        return _div(_mk(k, k.one(), k.one()), pown(x, -n))
    if n % 2 == 0:
        lo, hi = mig(x), mag(x)
        return _mk(k, _pow_pos(k, lo, n, DOWN), _pow_pos(k, hi, n, UP))

    def odd(v, rnd):
        if v >= 0:
            return _pow_pos(k, v, n, rnd)
        return -_pow_pos(k, -v, n, DOWN if rnd is UP else UP)

    return _mk(k, odd(x.lo, DOWN), odd(x.hi, UP))


# -- set operations ----------------------------------------------------------------


def hull(x, y) -> Interval:
    """Smallest interval containing both operands (either may be a scalar)."""
    x, y = _unify(x, y)
    if x._empty:
        return y
    if y._empty:
        return x
    k = x.kind
    return _mk(k, k.min(x.lo, y.lo), k.max(x.hi, y.hi))


def intersect(x, y) -> Interval:
    """Exact set intersection."""
    x, y = _unify(x, y)
    k = x.kind
    if x._empty:
        return x
    if y._empty:
        return y
    lo = k.max(x.lo, y.lo)
    hi = k.min(x.hi, y.hi)
    if hi < lo:
        return _mk_empty(k)
    return _mk(k, lo, hi)


# -- queries -------------------------------------------------------------------------


def is_empty(x: Interval) -> bool:
    return x._empty


def contains(x: Interval, t) -> bool:
    """Whether the number ``t`` lies in ``x`` (exact comparison)."""
    if x._empty:
        return False
    if isinstance(t, Interval):
        return subset(t, x)
    if isinstance(t, str):
        t = Fraction(t)
    return x.lo <= t <= x.hi


def subset(x: Interval, y: Interval) -> bool:
    if x._empty:
        return True
    if y._empty:
        return False
    return y.lo <= x.lo and x.hi <= y.hi


def interior(x: Interval, y: Interval) -> bool:
    """Whether ``x`` lies in the topological interior of ``y``."""
    if x._empty:
        return True
    if y._empty:
        return False
    left = y.lo < x.lo or (x.lo == y.lo == -_INF)
    right = x.hi < y.hi or (x.hi == y.hi == _INF)
    return left and right


def _need(x: Interval, what: str) -> None:
    if x._empty:
        raise EmptyIntervalError(f"{what} of the empty interval")


def width(x: Interval):
    """``hi - lo`` rounded up."""
    _need(x, "width")
    return x.kind.sub(x.hi, x.lo, UP)


def radius(x: Interval):
    _need(x, "radius")
    k = x.kind
    return k.mul(k.sub(x.hi, x.lo, UP), k.from_rational(1, 2, UP), UP)


_HALF_INFINITE_OFFSET = 2 ** 20


def midpoint(x: Interval):
    """A finite point of ``x`` close to its center.

    Half-infinite intervals return the finite endpoint moved
    ``max(2**20, |endpoint|)`` into the interval; the whole line returns 0.
    """
    _need(x, "midpoint")
    k = x.kind
    lo, hi = x.lo, x.hi
    lo_fin, hi_fin = k.is_finite(lo), k.is_finite(hi)
    if not lo_fin and not hi_fin:
        return k.zero()
    if not lo_fin:
        step = k.max(k.from_int(_HALF_INFINITE_OFFSET), abs(hi))
        m = k.sub(hi, step, DOWN)
        return m if k.is_finite(m) else k.neg(k.max_finite())
    if not hi_fin:
        step = k.max(k.from_int(_HALF_INFINITE_OFFSET), abs(lo))
        m = k.add(lo, step, UP)
        return m if k.is_finite(m) else k.max_finite()
    if lo == hi:
        return lo
    half = k.from_rational(1, 2, DOWN)
    s = k.add(lo, hi, DOWN)
    if k.is_finite(s):
        m = k.mul(s, half, DOWN)
    else:
        m = k.add(k.mul(lo, half, DOWN), k.mul(hi, half, DOWN), DOWN)
    m = k.max(lo, k.min(hi, m))
    return m if m else k.zero()


def mag(x: Interval):
    """``max(|lo|, |hi|)``."""
    _need(x, "mag")
    return x.kind.max(abs(x.lo), abs(x.hi))


def mig(x: Interval):
    """Smallest magnitude in ``x``: 0 when x contains 0."""
    _need(x, "mig")
    if x.lo <= 0 <= x.hi:
        return x.kind.zero()
    return x.kind.min(abs(x.lo), abs(x.hi))


def abs_(x: Interval) -> Interval:
    """``{|t| : t in x}``."""
    if x._empty:
        return x
    return _mk(x.kind, mig(x), mag(x))

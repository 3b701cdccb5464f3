"""Software binary floating point with an N-bit significand.

A finite value is ``(-1)**neg * significand * 2**(exponent - precision + 1)``
with ``2**(precision-1) <= significand < 2**precision`` (zero has
significand 0 and is never negative).  Every operation takes an explicit
rounding direction and is correctly rounded in that direction.

The exponent is confined to ``[EMIN, EMAX]``.  Results beyond it saturate
in the rounding direction: overflow goes to an infinity or the largest
finite value, underflow to zero or the smallest positive value.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from .errors import InvalidExtendedFormError, ZeroDenominatorError
from .rounding import UP, Direction

EMAX = 1 << 30
EMIN = -(1 << 30)

# Round-to-nearest-even is only used internally (float(), printing helpers).
NEAREST = "nearest"


class FloatClass(enum.Enum):
    FINITE = "finite"
    POS_INF = "+inf"
    NEG_INF = "-inf"


FINITE = FloatClass.FINITE
POS_INF = FloatClass.POS_INF
NEG_INF = FloatClass.NEG_INF


class BigFloat:
    """A software float; see the module docstring for the value encoding.

    ``BigFloat(value, precision, rnd)`` accepts ints, floats, Fractions and
    other BigFloats.  Without ``rnd`` the conversion must be exact.
    """

    __slots__ = ("fclass", "neg", "significand", "exponent", "precision")

    def __init__(self, value=0, precision: int = 256, rnd: Direction | None = None):
        if precision < 2:
            raise ValueError("precision must be at least 2 bits")
        if isinstance(value, BigFloat):
            r = _convert(value, precision, rnd)
        elif isinstance(value, bool):
            raise TypeError("bool is not a number here")
        elif isinstance(value, int):
            r = _from_exact(value < 0, abs(value), 0, precision, rnd)
        elif isinstance(value, float):
            r = _from_float(value, precision, rnd)
        elif isinstance(value, Fraction):
            r = bf_from_rational(value.numerator, value.denominator, rnd, precision)
        else:
            raise TypeError(f"cannot build a BigFloat from {type(value).__name__}")
        self.fclass = r.fclass
        self.neg = r.neg
        self.significand = r.significand
        self.exponent = r.exponent
        self.precision = r.precision

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero(precision: int) -> "BigFloat":
        return _make(False, 0, 0, precision)

    @staticmethod
    def inf(precision: int, negative: bool = False) -> "BigFloat":
        return _special(NEG_INF if negative else POS_INF, precision)

    @staticmethod
    def max_finite(precision: int, negative: bool = False) -> "BigFloat":
        return _make(negative, (1 << precision) - 1, EMAX, precision)

    @staticmethod
    def min_positive(precision: int, negative: bool = False) -> "BigFloat":
        return _make(negative, 1 << (precision - 1), EMIN, precision)

    @staticmethod
    def from_dyadic(neg: bool, m: int, e: int, precision: int, rnd, sticky: bool = False) -> "BigFloat":
        """Round ``±(m + δ)·2**e`` (``δ`` in (0, 1) when ``sticky``)."""
        return _round(neg, m, e, precision, rnd, sticky)

    # -- inspection -------------------------------------------------------

    @property
    def sign(self) -> int:
        return -1 if self.neg else 1

    def is_finite(self) -> bool:
        return self.fclass is FINITE

    def is_zero(self) -> bool:
        return self.fclass is FINITE and self.significand == 0

    def lsb_exponent(self) -> int:
        return self.exponent - self.precision + 1

    def to_dyadic(self) -> tuple[bool, int, int]:
        """(neg, m, e) with value ``±m·2**e``; finite values only."""
        if self.fclass is not FINITE:
            raise OverflowError("infinite BigFloat has no dyadic form")
        return self.neg, self.significand, self.exponent - self.precision + 1

    def to_fraction(self) -> Fraction:
        neg, m, e = self.to_dyadic()
        if neg:
            m = -m
        return Fraction(m << e) if e >= 0 else Fraction(m, 1 << -e)

    def as_integer_ratio(self) -> tuple[int, int]:
        f = self.to_fraction()
        return f.numerator, f.denominator

    def __float__(self) -> float:
        if self.fclass is POS_INF:
            return math.inf
        if self.fclass is NEG_INF:
            return -math.inf
        neg, m, e = self.to_dyadic()
        return round_binary(neg, m, e, NEAREST, 53, -1074, 1024)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __neg__(self) -> "BigFloat":
        if self.fclass is POS_INF:
            return _special(NEG_INF, self.precision)
        if self.fclass is NEG_INF:
            return _special(POS_INF, self.precision)
        if self.significand == 0:
            return self
        return _make(not self.neg, self.significand, self.exponent, self.precision)

    def __abs__(self) -> "BigFloat":
        return -self if (self.neg or self.fclass is NEG_INF) else self

    def next_up(self) -> "BigFloat":
        """Smallest representable value strictly greater than self."""
        p = self.precision
        if self.fclass is POS_INF:
            return self
        if self.fclass is NEG_INF:
            return BigFloat.max_finite(p, True)
        if self.significand == 0:
            return BigFloat.min_positive(p)
        if not self.neg:
            return _step_away(self)
        return _step_toward_zero(self)

    def next_down(self) -> "BigFloat":
        return -((-self).next_up())

    def ulp(self) -> "BigFloat":
        if self.fclass is not FINITE:
            return _special(POS_INF, self.precision)
        e = EMIN if self.significand == 0 else self.exponent
        return _make(False, 1 << (self.precision - 1), e - self.precision + 1, self.precision) \
            if e - self.precision + 1 >= EMIN else BigFloat.min_positive(self.precision)

    def hex(self) -> str:
        if self.fclass is POS_INF:
            return "inf"
        if self.fclass is NEG_INF:
            return "-inf"
        return dyadic_hex(*self.to_dyadic())

    def __repr__(self) -> str:
        return f"BigFloat({self.hex()!r}, precision={self.precision})"

    __str__ = hex

    # -- comparison -------------------------------------------------------

    def _cmp(self, other) -> int:
        if not isinstance(other, BigFloat):
            if isinstance(other, Fraction):
                if self.fclass is not FINITE:
                    return 1 if self.fclass is POS_INF else -1
                f = self.to_fraction()
                return (f > other) - (f < other)
            other = _exact_operand(other)
            if other is None:
                return NotImplemented
        return compare(self, other)

    def __eq__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c == 0

    def __ne__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c != 0

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __hash__(self) -> int:
        if self.fclass is POS_INF:
            return hash(math.inf)
        if self.fclass is NEG_INF:
            return hash(-math.inf)
        neg, m, e = self.to_dyadic()
        # Stay consistent with hash(Fraction) without materializing 2**e
        # for large positive e.
        if e >= 0:
            return hash(-(m << e) if neg else (m << e)) if e < 4096 else hash((neg, m, e))
        return hash(Fraction(-m if neg else m, 1 << -e))


# -- construction helpers ----------------------------------------------------


def _make(neg: bool, m: int, exponent: int, precision: int) -> BigFloat:
    r = object.__new__(BigFloat)
    r.fclass = FINITE
    r.neg = neg and m != 0
    r.significand = m
    r.exponent = exponent
    r.precision = precision
    return r


def _special(fclass: FloatClass, precision: int) -> BigFloat:
    r = object.__new__(BigFloat)
    r.fclass = fclass
    r.neg = fclass is NEG_INF
    r.significand = 0
    r.exponent = 0
    r.precision = precision
    return r


def _zero(precision: int) -> BigFloat:
    return _make(False, 0, 0, precision)


def _away(neg: bool, rnd) -> bool:
    # Directed rounding moves the magnitude up exactly when the direction
    # points away from zero.
    return (rnd is UP) != neg


def _overflow(neg: bool, precision: int, rnd) -> BigFloat:
    if rnd is NEAREST or _away(neg, rnd):
        return _special(NEG_INF if neg else POS_INF, precision)
    return BigFloat.max_finite(precision, neg)


def _underflow(neg: bool, precision: int, rnd) -> BigFloat:
    if rnd is not NEAREST and _away(neg, rnd):
        return BigFloat.min_positive(precision, neg)
    return _zero(precision)


def _round(neg: bool, m: int, e: int, prec: int, rnd, sticky: bool = False) -> BigFloat:
    """Round ``±(m + δ)·2**e`` to ``prec`` bits.

    ``sticky`` marks a nonzero fraction ``δ`` below the last bit of ``m``;
    callers passing it must supply at least ``prec + 1`` bits in ``m``.
    """
    n = m.bit_length()
    if n == 0:
        if sticky:
            raise AssertionError("sticky rounding needs significant bits")
        return _zero(prec)
    shift = n - prec
    bump = False
    if shift > 0:
        low = m & ((1 << shift) - 1)
        m >>= shift
        e += shift
        if rnd is NEAREST:
            half = 1 << (shift - 1)
            bump = low > half or (low == half and (sticky or (m & 1) == 1))
        elif low or sticky:
            if rnd is None:
                raise ValueError("inexact conversion; pass a rounding direction")
            bump = _away(neg, rnd)
    else:
        if sticky:
            raise AssertionError("sticky rounding needs guard bits")
        m <<= -shift
        e += shift
    if bump:
        m += 1
        if m >> prec:
            m >>= 1
            e += 1
    exponent = e + prec - 1
    if exponent > EMAX:
        return _overflow(neg, prec, rnd)
    if exponent < EMIN:
        return _underflow(neg, prec, rnd)
    return _make(neg, m, exponent, prec)


def _from_exact(neg: bool, m: int, e: int, prec: int, rnd) -> BigFloat:
    return _round(neg, m, e, prec, rnd)


def _from_float(x: float, prec: int, rnd) -> BigFloat:
    if x != x:
        raise ValueError("NaN has no BigFloat value")
    if x == math.inf:
        return _special(POS_INF, prec)
    if x == -math.inf:
        return _special(NEG_INF, prec)
    neg, m, e = float_dyadic(x)
    return _round(neg, m, e, prec, rnd)


def _convert(a: BigFloat, prec: int, rnd) -> BigFloat:
    if a.fclass is not FINITE:
        return _special(a.fclass, prec)
    if a.precision == prec:
        return a
    neg, m, e = a.to_dyadic()
    return _round(neg, m, e, prec, rnd)


def _exact_operand(x) -> BigFloat | None:
    """Exact BigFloat image of an int or float, for mixed comparisons."""
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        n = abs(x)
        return _from_exact(x < 0, n, 0, max(n.bit_length(), 2), None)
    if isinstance(x, float):
        if x != x:
            return None
        return _from_float(x, 53, None)
    return None


def _step_away(a: BigFloat) -> BigFloat:
    m = a.significand + 1
    e = a.exponent
    if m >> a.precision:
        m >>= 1
        e += 1
        if e > EMAX:
            return _special(NEG_INF if a.neg else POS_INF, a.precision)
    return _make(a.neg, m, e, a.precision)


def _step_toward_zero(a: BigFloat) -> BigFloat:
    m = a.significand - 1
    e = a.exponent
    if m < (1 << (a.precision - 1)):
        if e == EMIN:
            return _zero(a.precision)
        m = (1 << a.precision) - 1
        e -= 1
    return _make(a.neg, m, e, a.precision)


# -- comparison ----------------------------------------------------------------


def compare(a: BigFloat, b: BigFloat) -> int:
    """Exact three-way comparison; -1, 0 or 1."""
    ka = _rank(a)
    kb = _rank(b)
    if ka != kb:
        return -1 if ka < kb else 1
    if ka != 0 and ka != 2 and ka != -2:
        return 0  # same infinity, or both zero
    # same sign, both finite nonzero
    if a.exponent != b.exponent:
        c = -1 if a.exponent < b.exponent else 1
    else:
        pa, pb = a.precision, b.precision
        ma, mb = a.significand, b.significand
        if pa < pb:
            ma <<= pb - pa
        elif pb < pa:
            mb <<= pa - pb
        c = (ma > mb) - (ma < mb)
    return -c if a.neg else c


def _rank(a: BigFloat) -> int:
    # -3: -inf, -2: negative, 0: zero, 2: positive, 3: +inf
    if a.fclass is POS_INF:
        return 3
    if a.fclass is NEG_INF:
        return -3
    if a.significand == 0:
        return 0
    return -2 if a.neg else 2


# -- arithmetic ----------------------------------------------------------------


def bf_add(a: BigFloat, b: BigFloat, rnd) -> BigFloat:
    prec = a.precision if a.precision >= b.precision else b.precision
    if a.fclass is not FINITE or b.fclass is not FINITE:
        if a.fclass is not FINITE and b.fclass is not FINITE and a.fclass is not b.fclass:
            raise InvalidExtendedFormError("inf - inf")
        return _special(a.fclass if a.fclass is not FINITE else b.fclass, prec)
    if a.significand == 0:
        return b if b.precision == prec else _convert(b, prec, rnd)
    if b.significand == 0:
        return a if a.precision == prec else _convert(a, prec, rnd)
    if b.exponent > a.exponent:
        a, b = b, a
    ma, ea = a.significand, a.exponent - a.precision + 1
    mb, eb = b.significand, b.exponent - b.precision + 1
    if b.exponent < a.exponent - prec - 2:
        # b sits entirely below the rounding position of the result; any
        # value of the same sign that small rounds identically.
        mb, eb = 1, a.exponent - prec - 3
    if ea > eb:
        ma <<= ea - eb
        ea = eb
    elif eb > ea:
        mb <<= eb - ea
    sa = -ma if a.neg else ma
    sb = -mb if b.neg else mb
    s = sa + sb
    if s == 0:
        return _zero(prec)
    return _round(s < 0, abs(s), ea, prec, rnd)


def bf_sub(a: BigFloat, b: BigFloat, rnd) -> BigFloat:
    return bf_add(a, -b, rnd)


def bf_mul(a: BigFloat, b: BigFloat, rnd) -> BigFloat:
    prec = a.precision if a.precision >= b.precision else b.precision
    neg = a.neg != b.neg
    if a.fclass is not FINITE or b.fclass is not FINITE:
        if a.is_zero() or b.is_zero():
            raise InvalidExtendedFormError("0 * inf")
        return _special(NEG_INF if neg else POS_INF, prec)
    if a.significand == 0 or b.significand == 0:
        return _zero(prec)
    m = a.significand * b.significand
    e = a.exponent - a.precision + 1 + b.exponent - b.precision + 1
    return _round(neg, m, e, prec, rnd)


def bf_div(a: BigFloat, b: BigFloat, rnd) -> BigFloat:
    prec = a.precision if a.precision >= b.precision else b.precision
    neg = a.neg != b.neg
    if a.fclass is not FINITE:
        if b.fclass is not FINITE:
            raise InvalidExtendedFormError("inf / inf")
        return _special(NEG_INF if neg else POS_INF, prec)
    if b.fclass is not FINITE:
        return _zero(prec)
    if b.significand == 0:
        if a.significand == 0:
            raise InvalidExtendedFormError("0 / 0")
        return _special(NEG_INF if a.neg else POS_INF, prec)
    if a.significand == 0:
        return _zero(prec)
    ma, mb = a.significand, b.significand
    shift = prec + 2 + mb.bit_length() - ma.bit_length()
    if shift >= 0:
        q, r = divmod(ma << shift, mb)
    else:
        q, r = divmod(ma, mb << -shift)
    e = (a.exponent - a.precision + 1) - (b.exponent - b.precision + 1) - shift
    return _round(neg, q, e, prec, rnd, r != 0)


def bf_sqrt(a: BigFloat, rnd) -> BigFloat:
    prec = a.precision
    if a.fclass is POS_INF:
        return a
    if a.fclass is NEG_INF or (a.neg and a.significand):
        raise InvalidExtendedFormError("sqrt of a negative number")
    if a.significand == 0:
        return a
    m, e = a.significand, a.exponent - a.precision + 1
    shift = max(0, 2 * (prec + 2) - m.bit_length())
    if (e - shift) & 1:
        shift += 1
    m <<= shift
    e -= shift
    r = math.isqrt(m)
    return _round(False, r, e // 2, prec, rnd, r * r != m)


_OPS = {"add": bf_add, "sub": bf_sub, "mul": bf_mul, "div": bf_div}


def bf_arith(op: str, a: BigFloat, b: BigFloat, rnd: Direction) -> BigFloat:
    """Correctly rounded ``a op b`` in direction ``rnd``."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(a, b, rnd)


def rational_dyadic(p: int, q: int, bits: int) -> tuple[bool, int, int, bool]:
    """``p/q`` as ``(neg, m, e, sticky)`` with at least ``bits + 1`` bits in m."""
    if q == 0:
        raise ZeroDenominatorError("zero denominator")
    neg = (p < 0) != (q < 0)
    p, q = abs(p), abs(q)
    if p == 0:
        return False, 0, 0, False
    shift = bits + 2 + q.bit_length() - p.bit_length()
    if shift >= 0:
        m, r = divmod(p << shift, q)
    else:
        m, r = divmod(p, q << -shift)
    return neg, m, -shift, r != 0


def bf_from_rational(p: int, q: int, rnd: Direction | None, precision: int) -> BigFloat:
    """Directed rounding of ``p/q`` to ``precision`` bits."""
    neg, m, e, sticky = rational_dyadic(p, q, precision)
    if m == 0:
        return _zero(precision)
    return _round(neg, m, e, precision, rnd, sticky)


def bf_convert(a: BigFloat, to, rnd: Direction):
    """Round a BigFloat into endpoint kind ``to`` in direction ``rnd``."""
    return to.from_bigfloat(a, rnd)


# -- IEEE binary formats -------------------------------------------------------


def float_dyadic(x: float) -> tuple[bool, int, int]:
    """Exact ``(neg, m, e)`` with ``x == ±m·2**e`` for finite x."""
    n, d = x.as_integer_ratio()
    return n < 0, abs(n), 1 - d.bit_length()


def round_binary(neg: bool, m: int, e: int, rnd, prec: int, min_lsb: int, emax: int,
                 sticky: bool = False) -> float:
    """Round ``±(m + δ)·2**e`` into an IEEE binary format, as a Python float.

    ``prec`` is the significand width, ``min_lsb`` the exponent of the
    smallest subnormal and ``2**emax`` the overflow threshold.  Callers
    passing ``sticky`` must supply at least ``prec + 1`` bits in ``m``.
    """
    if m == 0:
        return 0.0
    top = e + m.bit_length() - 1
    if top >= emax:
        return _binary_overflow(neg, rnd, prec, emax)
    lsb = top - prec + 1
    if lsb < min_lsb:
        lsb = min_lsb
    shift = lsb - e
    bump = False
    if shift > 0:
        low = m & ((1 << shift) - 1)
        m >>= shift
        if rnd is NEAREST:
            half = 1 << (shift - 1)
            bump = low > half or (low == half and (sticky or (m & 1) == 1))
        elif low or sticky:
            bump = _away(neg, rnd)
    else:
        if sticky:
            raise AssertionError("sticky rounding needs guard bits")
        m <<= -shift
    if bump:
        m += 1
    if m == 0:
        return 0.0
    if lsb + m.bit_length() - 1 >= emax:
        return _binary_overflow(neg, rnd, prec, emax)
    v = math.ldexp(m, lsb)
    return -v if neg else v


def _binary_overflow(neg: bool, rnd, prec: int, emax: int) -> float:
    if rnd is NEAREST or _away(neg, rnd):
        return -math.inf if neg else math.inf
    v = math.ldexp((1 << prec) - 1, emax - prec)
    return -v if neg else v


def dyadic_hex(neg: bool, m: int, e: int) -> str:
    """Normalized hexadecimal float text for ``±m·2**e``, e.g. ``0x1.8p+0``."""
    if m == 0:
        return "0x0p+0"
    tz = (m & -m).bit_length() - 1
    m >>= tz
    e += tz
    n = m.bit_length()
    frac_bits = n - 1
    exp = e + frac_bits
    frac = m - (1 << frac_bits)
    sign = "-" if neg else ""
    if frac_bits == 0:
        return f"{sign}0x1p{exp:+d}"
    ndig = (frac_bits + 3) // 4
    frac <<= ndig * 4 - frac_bits
    digits = format(frac, "x").rjust(ndig, "0").rstrip("0")
    return f"{sign}0x1.{digits}p{exp:+d}"

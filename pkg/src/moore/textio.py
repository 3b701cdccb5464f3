"""Reading and writing intervals as text.

Literals denote real intervals and are parsed to the tightest enclosure in
the requested endpoint kind::

    []                 the empty interval
    [-inf, 1]          half line
    [-1/3, 2/3]        rational bounds
    [2.0e-20, 1/3]     decimal bounds
    [0x23Ap+4]         hexadecimal floats, exact when representable

Output rounds the lower bound toward -inf and the upper toward +inf in
decimal, so the printed interval always contains the stored one.  Format
strings extend printf: ``"+11.2E3W26"`` means a plus sign, 11 characters
per number, 2 fraction digits, scientific notation, 3 exponent digits and
26 characters per interval.
"""

from __future__ import annotations

import contextlib
import dataclasses
import math
import os
import re
import threading
from fractions import Fraction

from .bigfloat import EMAX, BigFloat, bf_div, bf_mul
from .core import Interval, _check, _mk, _mk_empty
from .endpoints import BINARY64, DOWN, UP, BigFloatKind, Direction, EndpointKind, parse_kind
from .errors import InvalidIntervalError, ParseError, ZeroDenominatorError

__all__ = [
    "FormatSpec", "format_hex", "format_interval", "format_number", "get_default_format",
    "parse_format", "parse_interval", "parse_number", "set_default_format", "text_format",
]

# -- bounds -------------------------------------------------------------------

_BOUND_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*(?:
        (?P<inf>inf(?:inity)?)
      | 0[xX](?P<hint>[0-9a-fA-F]*)(?:\.(?P<hfrac>[0-9a-fA-F]*))?[pP](?P<hexp>[+-]?\d+)
      | (?P<num>\d+)\s*/\s*(?P<den>[+-]?\d+)
      | (?P<int>\d*)(?:\.(?P<frac>\d*))?(?:[eE](?P<exp>[+-]?\d+))?
    )\s*""",
    re.VERBOSE | re.IGNORECASE,
)

# Exponents this far out saturate in every kind before any arithmetic.
_HUGE_EXPONENT = 10 ** 12
_LOG2_10 = math.log2(10)


def _int10(digits: str) -> int:
    # int() refuses very long decimal strings; fold them in chunks
    if len(digits) <= 4000:
        return int(digits or "0")
    n = 0
    for i in range(0, len(digits), 4000):
        chunk = digits[i:i + 4000]
        n = n * 10 ** len(chunk) + int(chunk)
    return n


def _exponent(text: str) -> int:
    t = text.lstrip("+-").lstrip("0")
    if len(t) > 13:
        v = _HUGE_EXPONENT
    else:
        v = int(t or "0")
    return -v if text.startswith("-") else v


class _Bound:
    """A parsed bound: ``±inf`` or ``±m · base**e`` (or ``±p/q``)."""

    __slots__ = ("neg", "inf", "m", "base", "e", "q")

    def __init__(self, neg, inf=False, m=0, base=10, e=0, q=1):
        self.neg = neg and (inf or m != 0)
        self.inf = inf
        self.m = m
        self.base = base
        self.e = e
        self.q = q

    def log10_range(self) -> tuple[float, float]:
        """Bounds on log10 of the magnitude (finite nonzero values)."""
        lo = (self.m.bit_length() - 1) * math.log10(2) - self.q.bit_length() * math.log10(2)
        hi = self.m.bit_length() * math.log10(2) - (self.q.bit_length() - 1) * math.log10(2)
        s = self.e * (1.0 if self.base == 10 else math.log10(2))
        return lo + s - 1e-9, hi + s + 1e-9

    def fraction(self) -> Fraction:
        if self.base == 10:
            v = Fraction(self.m * 10 ** self.e) if self.e >= 0 else Fraction(self.m, 10 ** -self.e)
        else:
            v = Fraction(self.m << self.e) if self.e >= 0 else Fraction(self.m, 1 << -self.e)
        v /= self.q
        return -v if self.neg else v

    def rank(self) -> int:
        if self.inf:
            return -2 if self.neg else 2
        if self.m == 0:
            return 0
        return -1 if self.neg else 1


def _parse_bound(text: str) -> _Bound:
    m = _BOUND_RE.fullmatch(text)
    if m is None:
        raise ParseError(f"malformed number {text.strip()!r}")
    neg = m.group("sign") == "-"
    if m.group("inf"):
        return _Bound(neg, inf=True)
    if m.group("hexp") is not None:
        hint, hfrac = m.group("hint") or "", m.group("hfrac") or ""
        if not hint and not hfrac:
            raise ParseError(f"hexadecimal float without digits: {text.strip()!r}")
        mant = int(hint + hfrac or "0", 16)
        return _Bound(neg, m=mant, base=2, e=_exponent(m.group("hexp")) - 4 * len(hfrac))
    if m.group("num") is not None:
        p = _int10(m.group("num"))
        qtext = m.group("den")
        q = _int10(qtext.lstrip("+-"))
        if q == 0:
            raise ZeroDenominatorError(f"zero denominator in {text.strip()!r}")
        if qtext.startswith("-"):
            neg = not neg
        return _Bound(neg, m=p, q=q)
    ipart, frac = m.group("int") or "", m.group("frac") or ""
    if not ipart and not frac:
        raise ParseError(f"malformed number {text.strip()!r}")
    digits = (ipart + frac).lstrip("0")
    e = _exponent(m.group("exp") or "0") - len(frac)
    if digits:
        stripped = digits.rstrip("0")
        e += len(digits) - len(stripped)
        digits = stripped
    return _Bound(neg, m=_int10(digits), e=e)


def _kind_range(kind: EndpointKind) -> tuple[int, int]:
    # (emax, smallest exponent): values >= 2**emax overflow, values below
    # 2**smallest underflow
    if isinstance(kind, BigFloatKind):
        return EMAX + 1, -EMAX - 1
    return kind._emax, kind._min_lsb


def _round_bound(b: _Bound, rnd: Direction, kind: EndpointKind):
    if b.inf:
        return kind.ninf() if b.neg else kind.inf()
    if b.m == 0:
        return kind.zero()
    emax, emin = _kind_range(kind)
    lo10, hi10 = b.log10_range()
    if lo10 > (emax + 2) / _LOG2_10:
        return kind.from_dyadic(b.neg, 1, emax + 8, rnd)
    if hi10 < (emin - 2) / _LOG2_10:
        return kind.from_dyadic(b.neg, 1, emin - 8, rnd)
    if b.base == 2:
        if b.q != 1:
            raise AssertionError("hex bounds have no denominator")
        return kind.from_dyadic(b.neg, b.m, b.e, rnd)
    if abs(b.e) <= 20000 or b.q != 1:
        f = b.fraction()
        return kind.from_rational(f.numerator, f.denominator, rnd)
    return _round_huge_decimal(b, rnd, kind)


def _pow10(e: int, prec: int, rnd: Direction) -> BigFloat:
    # all factors positive, so rounding every product in rnd bounds 10**e
    result = BigFloat(1, prec)
    base = BigFloat(10, prec)
    while e:
        if e & 1:
            result = bf_mul(result, base, rnd)
        e >>= 1
        if e:
            base = bf_mul(base, base, rnd)
    return result


def _round_huge_decimal(b: _Bound, rnd: Direction, kind: EndpointKind):
    # Directed evaluation of m * 10**e at a few guard words beyond the
    # target precision; only reachable for bigfloat kinds.
    prec = kind.precision_bits + 64
    mrnd = rnd if not b.neg else (DOWN if rnd is UP else UP)
    other = DOWN if mrnd is UP else UP
    m = BigFloat(b.m, prec, mrnd)
    if b.e >= 0:
        mag = bf_mul(m, _pow10(b.e, prec, mrnd), mrnd)
    else:
        mag = bf_div(m, _pow10(-b.e, prec, other), mrnd)
    r = kind.from_bigfloat(mag, mrnd)
    return -r if b.neg else r


def parse_number(text: str, rnd: Direction, kind: EndpointKind | str = BINARY64):
    """Directed rounding of a bound literal (``"1/3"``, ``"2e-20"``, ``"-inf"``...)."""
    return _round_bound(_parse_bound(text), rnd, parse_kind(kind))


def _bound_le(a: _Bound, b: _Bound) -> bool:
    ra, rb = a.rank(), b.rank()
    if ra != rb or ra in (-2, 0, 2):
        return ra <= rb
    la, ua = a.log10_range()
    lb, ub = b.log10_range()
    if ua < lb:
        return not a.neg
    if ub < la:
        return a.neg
    if a.base == b.base == 10 and a.q == b.q == 1:
        # equal decades: compare mantissas on a common exponent
        return _dec_le(a, b, min(a.e, b.e))
    return a.fraction() <= b.fraction()


def _dec_le(a: _Bound, b: _Bound, base: int) -> bool:
    va = a.m * 10 ** (a.e - base)
    vb = b.m * 10 ** (b.e - base)
    return (-va if a.neg else va) <= (-vb if b.neg else vb)


def parse_interval(text: str, kind: EndpointKind | str = BINARY64) -> Interval:
    """Tightest interval in ``kind`` containing the literal's real set."""
    kind = parse_kind(kind)
    t = text.strip()
    if len(t) < 2 or t[0] != "[" or t[-1] != "]":
        raise ParseError(f"interval literal must be bracketed: {text!r}")
    body = t[1:-1]
    if not body.strip():
        return _mk_empty(kind)
    parts = body.split(",")
    if len(parts) == 1:
        lo_b = hi_b = _parse_bound(parts[0])
    elif len(parts) == 2:
        lo_b, hi_b = _parse_bound(parts[0]), _parse_bound(parts[1])
    else:
        raise ParseError(f"too many bounds in {text!r}")
    if lo_b is not hi_b and not _bound_le(lo_b, hi_b):
        raise InvalidIntervalError(f"lower bound exceeds upper bound in {text!r}")
    if (lo_b.inf and not lo_b.neg) or (hi_b.inf and hi_b.neg):
        raise InvalidIntervalError(f"interval with no real points: {text!r}")
    lo = _round_bound(lo_b, DOWN, kind)
    hi = _round_bound(hi_b, UP, kind)
    _check(kind, lo, hi)
    return _mk(kind, lo, hi)


# -- format specs -----------------------------------------------------------------

_FORMAT_RE = re.compile(r"(\+)?(\d+)(?:\.(\d+))?([EF])(\d+)?(?:W(\d+))?")


@dataclasses.dataclass(frozen=True)
class FormatSpec:
    show_plus: bool = False
    number_width: int = 23
    precision: int = 16
    style: str = "E"
    exp_digits: int | None = 3
    interval_width: int = 0

    def __post_init__(self):
        if self.style not in ("E", "F"):
            raise ParseError(f"unknown style {self.style!r}")
        if self.style == "E":
            if self.exp_digits is None or self.exp_digits < 1:
                raise ParseError("scientific format needs at least one exponent digit")
            if self.number_width < self.precision + 6:
                raise ParseError("number width must be at least precision + 6")
        elif self.exp_digits is not None:
            raise ParseError("fixed format takes no exponent digits")
        if self.interval_width and self.interval_width < 2 * self.number_width + 3:
            raise ParseError("interval width must be 0 or at least 2 * width + 3")

    def __str__(self) -> str:
        s = ("+" if self.show_plus else "") + f"{self.number_width}.{self.precision}{self.style}"
        if self.style == "E" and (self.exp_digits != 3 or self.interval_width):
            s += str(self.exp_digits)
        if self.interval_width:
            s += f"W{self.interval_width}"
        return s


def parse_format(text: str | FormatSpec) -> FormatSpec:
    """Parse ``["+"] width ["." precision] ("E"|"F") [expdigits] ["W" width]``."""
    if isinstance(text, FormatSpec):
        return text
    m = _FORMAT_RE.fullmatch(text.strip())
    if m is None:
        raise ParseError(f"malformed format {text!r}")
    plus, width, prec, style, expd, iw = m.groups()
    if style == "F" and expd is not None:
        raise ParseError("fixed format takes no exponent digits")
    return FormatSpec(
        show_plus=plus is not None,
        number_width=int(width),
        precision=int(prec) if prec is not None else 6,
        style=style,
        exp_digits=(int(expd) if expd is not None else 3) if style == "E" else None,
        interval_width=int(iw) if iw is not None else 0,
    )


# -- decimal output ------------------------------------------------------------------


def _int_str(n: int) -> str:
    if n < 10 ** 4000:
        return str(n)
    high, low = divmod(n, 10 ** 4000)
    return _int_str(high) + str(low).rjust(4000, "0")


def _decade(n: int, d: int) -> int:
    """floor(log10(n / d)) for positive integers."""
    e = math.floor((n.bit_length() - d.bit_length()) * math.log10(2))
    while True:
        if e >= 0:
            below = n < d * 10 ** e
        else:
            below = n * 10 ** -e < d
        if below:
            e -= 1
            continue
        if e + 1 >= 0:
            above = n >= d * 10 ** (e + 1)
        else:
            above = n * 10 ** -(e + 1) >= d
        if above:
            e += 1
            continue
        return e


def _scaled(n: int, d: int, shift: int, up: bool) -> int:
    # floor or ceil of n * 10**shift / d
    if shift >= 0:
        q, r = divmod(n * 10 ** shift, d)
    else:
        q, r = divmod(n, d * 10 ** -shift)
    return q + 1 if (up and r) else q


def format_number(value, rnd: Direction, spec: FormatSpec | str, kind: EndpointKind | None = None) -> str:
    """One endpoint as decimal text rounded in direction ``rnd``, unpadded."""
    spec = parse_format(spec)
    plus = "+" if spec.show_plus else ""
    if value == math.inf:
        return plus + "INF"
    if value == -math.inf:
        return "-INF"
    if isinstance(value, BigFloat) and spec.style == "E" and abs(value.exponent) > _HUGE_BITS:
        neg = value.neg
        up = (rnd is UP) != neg
        sign = "-" if neg else plus
        return _fit(lambda p, x: sign + _sci_huge(abs(value), p, x, up), spec)
    f = kind.to_fraction(value) if kind is not None else _to_fraction(value)
    neg = f < 0
    sign = "-" if neg else plus
    n, d = abs(f.numerator), f.denominator
    # the magnitude rounds up for upper positive and lower negative bounds
    up = (rnd is UP) != neg
    if spec.style == "F":
        return _fit(lambda p, _x: _fixed(n, d, p, up, sign), spec)
    if n == 0:
        return _fit(lambda p, x: sign + _sci_digits(0, p, 0, x), spec)
    return _fit(lambda p, x: sign + _sci(n, d, p, x, up), spec)


def _to_fraction(value) -> Fraction:
    if isinstance(value, BigFloat):
        return value.to_fraction()
    return Fraction(value)


def _fixed(n: int, d: int, p: int, up: bool, sign: str) -> str:
    q = _scaled(n, d, p, up)
    s = _int_str(q).rjust(p + 1, "0")
    if p:
        s = s[:-p] + "." + s[-p:]
    return sign + s


def _sci_digits(q: int, p: int, e: int, expd: int) -> str:
    s = _int_str(q).rjust(p + 1, "0")
    mant = s[0] + ("." + s[1:] if p else "")
    esign = "-" if e < 0 else "+"
    return f"{mant}E{esign}{str(abs(e)).rjust(expd, '0')}"


def _sci(n: int, d: int, p: int, expd: int, up: bool) -> str:
    e = _decade(n, d)
    q = _scaled(n, d, p - e, up)
    if q >= 10 ** (p + 1):
        # rounding carried into a new decade
        e += 1
        q = _scaled(n, d, p - e, up)
    return _sci_digits(q, p, e, expd)


# Beyond this binary exponent exact rational printing gets expensive.
_HUGE_BITS = 20000


def _sci_huge(a: BigFloat, p: int, expd: int, up: bool) -> str:
    # Directed BigFloat scaling by a power of ten; the digits can be one
    # unit looser than exact printing but always bound the value.
    prec = a.precision + 64
    rnd, other = (UP, DOWN) if up else (DOWN, UP)
    e = math.floor(a.exponent * math.log10(2))
    for _ in range(4):
        shift = p - e
        if shift >= 0:
            t = bf_mul(BigFloat(a, prec), _pow10(shift, prec, rnd), rnd)
        else:
            t = bf_div(BigFloat(a, prec), _pow10(-shift, prec, other), rnd)
        neg, m, k = t.to_dyadic()
        q = m << k if k >= 0 else (-((-m) >> -k) if up else m >> -k)
        if q >= 10 ** (p + 1):
            e += 1
        elif q < 10 ** p:
            e -= 1
        else:
            break
    return _sci_digits(q, p, e, expd)


def _fit(render, spec: FormatSpec) -> str:
    """Render, dropping exponent then fraction digits until the width fits."""
    p = spec.precision
    expd = spec.exp_digits or 0
    text = render(p, expd)
    while len(text) > spec.number_width:
        if spec.style == "E" and expd > 2:
            expd -= 1
        elif p > 0:
            p -= 1
        else:
            break
        text = render(p, expd)
    return text


def format_interval(x: Interval, spec: FormatSpec | str | None = None) -> str:
    """``[lo,hi]`` with outward decimal rounding, padded per ``spec``.

    >>> format_interval(Interval(-12343, 0), "+11.2E3W26")
    ' [ -1.24E+004, +0.00E+000]'
    """
    spec = get_default_format() if spec is None else parse_format(spec)
    w = spec.number_width
    if x.is_empty():
        cell = "[" + " " * (2 * w + 1) + "]"
    else:
        lo = format_number(x.lo, DOWN, spec, x.kind)
        hi = format_number(x.hi, UP, spec, x.kind)
        cell = "[" + lo.rjust(w) + "," + hi.rjust(w) + "]"
    return cell.rjust(spec.interval_width) if spec.interval_width else cell


def format_hex(x: Interval) -> str:
    """Exact hexadecimal rendering; ``parse_interval`` inverts it bit for bit."""
    if x.is_empty():
        return "[]"
    k = x.kind
    return f"[{k.hex(x.lo)}, {k.hex(x.hi)}]"


# -- process-wide default ------------------------------------------------------------

DEFAULT_FORMAT = "23.16E"
_lock = threading.Lock()
_default: FormatSpec | None = None


def get_default_format() -> FormatSpec:
    """The process default, initialized from ``MOORE_FORMAT`` if set."""
    global _default
    with _lock:
        if _default is None:
            _default = parse_format(os.environ.get("MOORE_FORMAT") or DEFAULT_FORMAT)
        return _default


def set_default_format(spec: FormatSpec | str) -> FormatSpec:
    """Replace the process default; returns the previous one."""
    global _default
    new = parse_format(spec)
    previous = get_default_format()
    with _lock:
        _default = new
    return previous


@contextlib.contextmanager
def text_format(spec: FormatSpec | str):
    """Temporarily replace the process default format."""
    previous = set_default_format(spec)
    try:
        yield get_default_format()
    finally:
        set_default_format(previous)

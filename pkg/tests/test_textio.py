import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moore import (BINARY32, BINARY64, DOWN, UP, FormatSpec, Interval, bigfloat, format_hex, format_interval,
                   get_default_format, parse_format, parse_interval, parse_number, set_default_format, text_format)
from moore.errors import InvalidIntervalError, ParseError, ZeroDenominatorError
from oracles import random_interval64, rd32, rd64, ru32, ru64

INF = math.inf


def lh(x):
    return (x.lo, x.hi)


# -- parsing ---------------------------------------------------------------------------


def test_parse_examples():
    assert parse_interval("[]").is_empty()
    assert lh(parse_interval("[-inf, 1]")) == (-INF, 1.0)
    x = parse_interval("[-1/3, 2/3]")
    assert x.lo == -float.fromhex("0x1.5555555555556p-2")
    assert x.hi == float.fromhex("0x1.5555555555556p-1")
    assert lh(parse_interval("[0x23Ap+4, 0x23Ap+4]")) == (9120.0, 9120.0)
    with pytest.raises(InvalidIntervalError):
        parse_interval("[3, 2]")


def test_parse_number_examples():
    assert parse_number("0.5", DOWN) == 0.5
    assert parse_number("2.0e-20", UP) == float.fromhex("0x1.79ca10c924224p-66")
    assert parse_number("2.0e-20", DOWN) == math.nextafter(float.fromhex("0x1.79ca10c924224p-66"), 0)
    assert parse_number("-inf", UP) == -INF and parse_number("-INF", DOWN, BINARY32) == -INF
    with pytest.raises(ZeroDenominatorError):
        parse_number("1/0", UP)


@pytest.mark.parametrize("text", ["[1,", "1, 2]", "[1, 2, 3]", "[a, b]", "[0x1.8, 2]", "[1 2]", "[--1, 2]",
                                  "[1/, 2]", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_interval(text)


def test_parse_extensions():
    assert lh(parse_interval("  [ +1 , 2 ]  ")) == (1.0, 2.0)
    assert lh(parse_interval("[0.1]")) == (rd64(Fraction(1, 10)), ru64(Fraction(1, 10)))
    assert lh(parse_interval("[-Inf, INF]")) == (-INF, INF)
    assert lh(parse_interval("[1e400, inf]")) == (1.7976931348623157e308, INF)


def test_rational_bounds_compared_exactly():
    # both bounds round to the same double but the denoted interval is empty
    with pytest.raises(InvalidIntervalError):
        parse_interval("[0.10000000000000001, 0.1]")
    x = parse_interval("[1/3, 0.33333333333333334]")
    assert x.lo <= x.hi


def test_other_kinds():
    x = parse_interval("[1/3, 1/3]", BINARY32)
    assert lh(x) == (rd32(Fraction(1, 3)), ru32(Fraction(1, 3)))
    y = parse_interval("[1e40, 1e40]", bigfloat(24))
    assert y.hi.to_fraction() == 15407440 * 2 ** 109
    assert y.lo.to_fraction() <= 10 ** 40 <= y.hi.to_fraction()


@st.composite
def rationals(draw):
    n = draw(st.integers(-10 ** 30, 10 ** 30))
    d = draw(st.integers(1, 10 ** 30))
    return Fraction(n, d)


@settings(max_examples=300, deadline=None)
@given(rationals(), rationals())
def test_parse_tightness_rational(a, b):
    a, b = min(a, b), max(a, b)
    x = parse_interval(f"[{a.numerator}/{a.denominator}, {b.numerator}/{b.denominator}]")
    assert lh(x) == (rd64(a), ru64(b))


@settings(max_examples=300, deadline=None)
@given(st.integers(-10 ** 20, 10 ** 20), st.integers(-330, 300))
def test_parse_tightness_decimal(m, e):
    q = Fraction(m) * Fraction(10) ** e
    x = parse_interval(f"[{m}e{e}]")
    assert lh(x) == (rd64(q), ru64(q))


# -- formats ---------------------------------------------------------------------------


def test_parse_format_examples():
    assert parse_format("+11.2E3W26") == FormatSpec(True, 11, 2, "E", 3, 26)
    assert parse_format("+10.4E") == FormatSpec(True, 10, 4, "E", 3, 0)
    assert parse_format("5.1F") == FormatSpec(False, 5, 1, "F", None, 0)
    for bad in ("", "E", "+11.2X", "11.2E3W10", "3.2E", "5.1F2"):
        with pytest.raises(ParseError):
            parse_format(bad)
    assert str(parse_format("+11.2E3W26")) == "+11.2E3W26"


def test_format_paper_cells():
    spec = "+11.2E3W26"
    assert format_interval(Interval(2.0 ** -1021, 2.0 ** 100), spec) == " [ +4.45E-308, +1.27E+030]"
    assert format_interval(Interval.empty(), spec) == " [                       ]"
    assert format_interval(Interval(-12343, 0), spec) == " [ -1.24E+004, +0.00E+000]"
    assert format_interval(Interval(-INF, 0), spec) == " [       -INF, +0.00E+000]"


def test_format_rounding_direction():
    assert format_interval(Interval(1 / 3, 1 / 3), "10.3F") == "[     0.333,     0.334]"
    assert format_interval(Interval(-1 / 3), "10.3F") == "[    -0.334,    -0.333]"
    assert format_interval(Interval(1, 2), "10.3F") == "[     1.000,     2.000]"


def test_format_fit_rule_drops_exponent_digit():
    assert format_interval(Interval(-1, 1)) == "[-1.0000000000000000E+00,1.0000000000000000E+000]"


def test_format_hex_examples():
    assert format_hex(Interval(1.0, 1.5)) == "[0x1p+0, 0x1.8p+0]"
    assert format_hex(Interval.empty()) == "[]"
    x = Interval(-INF, 1.0000000000000002e16)
    assert parse_interval(format_hex(x)) == x


def test_default_format_and_context():
    before = get_default_format()
    with text_format("+10.4E") as spec:
        assert spec == parse_format("+10.4E")
        # ten characters leave room for three fraction digits only
        assert str(Interval(1, 2)) == "[+1.000E+00,+2.000E+00]"
    assert get_default_format() == before
    old = set_default_format("8.2F")
    try:
        assert str(Interval(1, 2)) == "[    1.00,    2.00]"
    finally:
        set_default_format(old)


def test_moore_format_environment(monkeypatch):
    import moore.textio as textio

    monkeypatch.setenv("MOORE_FORMAT", "6.1F")
    monkeypatch.setattr(textio, "_default", None)
    assert get_default_format() == parse_format("6.1F")
    monkeypatch.setattr(textio, "_default", None)
    monkeypatch.delenv("MOORE_FORMAT")
    assert get_default_format() == parse_format("23.16E")


# -- properties --------------------------------------------------------------------------


def _printed(text):
    lo, hi = text.strip()[1:-1].split(",")
    conv = {"-INF": -INF, "+INF": INF, "INF": INF}
    lo, hi = lo.strip(), hi.strip()
    return conv.get(lo) or Fraction(lo), conv.get(hi) or Fraction(hi)


@pytest.mark.parametrize("spec", ["+11.2E3W26", "23.16E", "+10.4E", "12.5F", "30.1F"])
def test_decimal_containment(spec):
    rng = random.Random(11)
    for _ in range(2000):
        x = Interval(*random_interval64(rng))
        lo, hi = _printed(format_interval(x, spec))
        assert lo <= Fraction(x.lo) and Fraction(x.hi) <= hi


def test_alignment():
    rng = random.Random(5)
    for spec in ("+11.2E3W26", "23.16E2W60", "40.2FW90"):
        w = parse_format(spec).interval_width
        for _ in range(500):
            x = Interval(*random_interval64(rng, wide="F" not in spec))
            assert len(format_interval(x, spec)) == w
        assert len(format_interval(Interval.empty(), spec)) == w
        assert len(format_interval(Interval.whole(), spec)) == w


@pytest.mark.parametrize("kind", [BINARY64, BINARY32, bigfloat(256), bigfloat(30)])
def test_hex_round_trip(kind):
    rng = random.Random(17)
    for _ in range(1000):
        a, b = random_interval64(rng)
        x = Interval(a, b).to_kind(kind)
        assert parse_interval(format_hex(x), kind) == x
        assert format_hex(parse_interval(format_hex(x), kind)) == format_hex(x)


@settings(max_examples=200, deadline=None)
@given(st.floats(allow_nan=False), st.floats(allow_nan=False))
def test_hex_round_trip_any_double(a, b):
    a, b = min(a, b), max(a, b)
    if a == b and math.isinf(a):
        return
    x = Interval(a, b)
    assert parse_interval(format_hex(x)) == x

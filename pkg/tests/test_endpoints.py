import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moore import BINARY32, BINARY64, DOWN, UP, bigfloat, dir_arith, exact_convertible, parse_kind, promote
from moore.endpoints import f32_round
from moore.errors import InvalidExtendedFormError, NoActiveGuardError, NoCommonKindError
from moore.rounding import RoundingGuard, UpRounding, set_debug_checks
from oracles import rd32, rd64, ru32, ru64

finite64 = st.floats(allow_nan=False, allow_infinity=False)
finite32 = st.floats(allow_nan=False, allow_infinity=False, width=32)

_EXACT = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}


def test_add_exact_no_widening():
    assert dir_arith("add", 1.0, 1.0, UP) == 2.0
    assert dir_arith("add", 1.0, 1.0, DOWN) == 2.0


def test_add_inexact_brackets():
    assert dir_arith("add", 1e16, 1.0, UP) == 1.0000000000000002e16
    assert dir_arith("add", 1e16, 1.0, DOWN) == 1e16


def test_div_one_third():
    assert dir_arith("div", 1.0, 3.0, DOWN) == float.fromhex("0x1.5555555555555p-2")
    assert dir_arith("div", 1.0, 3.0, UP) == float.fromhex("0x1.5555555555556p-2")


def test_overflow_saturates_by_direction():
    big = 1.7976931348623157e308
    assert dir_arith("add", big, big, UP) == math.inf
    assert dir_arith("add", big, big, DOWN) == big
    assert dir_arith("mul", -big, 2.0, UP) == -big


def test_underflow_directed():
    tiny = 5e-324
    assert dir_arith("mul", tiny, 0.5, UP) == tiny
    assert dir_arith("mul", tiny, 0.5, DOWN) == 0.0
    assert dir_arith("mul", -tiny, 0.5, DOWN) == -tiny


@pytest.mark.parametrize("op, a, b", [("sub", math.inf, math.inf), ("add", math.inf, -math.inf),
                                      ("mul", 0.0, math.inf), ("div", 0.0, 0.0),
                                      ("div", math.inf, math.inf)])
def test_invalid_forms_signaled(op, a, b):
    with pytest.raises(InvalidExtendedFormError):
        dir_arith(op, a, b, UP)


def test_infinities_propagate():
    assert dir_arith("add", math.inf, 1.0, DOWN) == math.inf
    assert dir_arith("div", 1.0, math.inf, UP) == 0.0
    assert dir_arith("div", -1.0, 0.0, UP) == -math.inf


def test_exact_convertible_relation():
    assert exact_convertible(BINARY32, BINARY64)
    assert not exact_convertible(BINARY64, BINARY32)
    assert exact_convertible(BINARY64, bigfloat(256))
    assert exact_convertible(bigfloat(100), bigfloat(200))
    assert not exact_convertible(bigfloat(200), bigfloat(100))
    assert not exact_convertible(BINARY64, bigfloat(24))


def test_promote():
    assert promote(BINARY64, BINARY32) is BINARY64
    assert promote(BINARY32, BINARY64) is BINARY64
    assert promote(BINARY64, bigfloat(256)) is bigfloat(256)
    assert promote(BINARY64, BINARY64) is BINARY64
    with pytest.raises(NoCommonKindError):
        promote(BINARY64, bigfloat(24))


def test_parse_kind_names():
    assert parse_kind("binary64") is BINARY64
    assert parse_kind("double") is BINARY64
    assert parse_kind("float") is BINARY32
    assert parse_kind("bigfloat(113)") is bigfloat(113)
    assert bigfloat(113).precision_bits == 113
    assert BINARY32.precision_bits == 24 and BINARY64.precision_bits == 53
    with pytest.raises(ValueError):
        bigfloat(1)


def test_guard_debug_check():
    set_debug_checks(True)
    try:
        with pytest.raises(NoActiveGuardError):
            dir_arith("add", 1.0, 2.0, UP)
        with RoundingGuard():
            assert dir_arith("add", 1.0, 2.0, UP) == 3.0
        g = UpRounding()
        assert dir_arith("mul", 3.0, 2.0, DOWN) == 6.0
        g.release()
        with pytest.raises(NoActiveGuardError):
            dir_arith("add", 1.0, 2.0, UP)
    finally:
        set_debug_checks(False)


def _check64(op, a, b):
    if op == "div" and b == 0:
        return
    exact = _EXACT[op](Fraction(a), Fraction(b))
    lo, hi = dir_arith(op, a, b, DOWN), dir_arith(op, a, b, UP)
    assert lo == rd64(exact)
    assert hi == ru64(exact)


@settings(max_examples=400, deadline=None)
@given(st.sampled_from(sorted(_EXACT)), finite64, finite64)
def test_binary64_directed_is_optimal(op, a, b):
    _check64(op, a, b)


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(sorted(_EXACT)), finite32, finite32)
def test_binary32_directed_is_optimal(op, a, b):
    if op == "div" and b == 0:
        return
    exact = _EXACT[op](Fraction(a), Fraction(b))
    assert getattr(BINARY32, op)(a, b, DOWN) == rd32(exact)
    assert getattr(BINARY32, op)(a, b, UP) == ru32(exact)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["add", "mul"]), finite64, finite64)
def test_down_up_symmetry(op, a, b):
    # rounding down equals the negated upward rounding of the negated problem
    if op == "add":
        assert dir_arith("add", a, b, DOWN) == -dir_arith("add", -a, -b, UP)
    else:
        assert dir_arith("mul", a, b, DOWN) == -dir_arith("mul", -a, b, UP)


@settings(max_examples=200, deadline=None)
@given(finite64)
def test_f32_round_brackets(x):
    assert f32_round(x, DOWN) == rd32(Fraction(x))
    assert f32_round(x, UP) == ru32(Fraction(x))


def test_bigfloat_kind_arith():
    k = bigfloat(8)
    lo = k.div(k.from_int(1), k.from_int(3), DOWN)
    hi = k.div(k.from_int(1), k.from_int(3), UP)
    assert lo.to_fraction() == Fraction(170, 2 ** 9)
    assert hi.to_fraction() == Fraction(171, 2 ** 9)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["binary64", "binary32", "bigfloat(64)"]), st.sampled_from(["binary64", "binary32",
                                                                                    "bigfloat(64)"]))
def test_promote_commutative_idempotent(a, b):
    ka, kb = parse_kind(a), parse_kind(b)
    assert promote(ka, ka) is ka
    try:
        p = promote(ka, kb)
    except NoCommonKindError:
        with pytest.raises(NoCommonKindError):
            promote(kb, ka)
        return
    assert promote(kb, ka) is p

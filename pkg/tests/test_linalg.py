import math
import random
from fractions import Fraction

import pytest

from moore import (BINARY64, Box, BoxMatrix, Interval, bigfloat, box_arith, contains, dot, format_box,
                   format_hex, format_matrix, matmul, matvec, parse_box, parse_matrix, scale, subset, tr,
                   transpose)
from moore.errors import DimensionMismatchError, ParseError, RaggedRowsError

INF = math.inf
I = Interval


def lh(x):
    return (x.lo, x.hi)


def lhs(box):
    return [lh(e) for e in box]


def test_box_arith_examples():
    x, y = Box([I(1, 2), I(0, 1)]), Box([I(1, 1), I(1, 1)])
    assert lhs(box_arith("add", x, y)) == [(2, 3), (1, 2)]
    assert lhs(x + y) == [(2, 3), (1, 2)]
    assert lhs(x - y) == [(0, 1), (-1, 0)]
    assert lhs(scale(2, Box([I(1, 2)]))) == [(2, 4)]
    assert lhs(2 * Box([I(1, 2)])) == [(2, 4)]
    with pytest.raises(DimensionMismatchError):
        box_arith("add", Box([I(1), I(2)]), Box([I(1), I(2), I(3)]))


def test_matvec_examples():
    assert lhs(matvec(BoxMatrix([[I(1, 1)]]), Box([I(2, 3)]))) == [(2, 3)]
    a = BoxMatrix([[I(1), I(1)], [I(0), I(1)]])
    assert lhs(a * Box([I(1), I(1)])) == [(2, 2), (1, 1)]
    empty_rows = BoxMatrix([], cols=3)
    assert empty_rows.shape == (0, 3)
    assert len(matvec(empty_rows, Box([I(1), I(2), I(3)]))) == 0
    with pytest.raises(DimensionMismatchError):
        matvec(a, Box([I(1)]))


def test_dot_and_transpose_examples():
    assert lh(dot(Box([I(1, 2), I(0, 1)]), Box([I(1, 1), I(1, 1)]))) == (1, 3)
    assert lh(dot(Box([]), Box([]))) == (0, 0)
    a = BoxMatrix([[I(1), I(2), I(3)], [I(4, 5), I(6), I(-INF, 0)]])
    assert transpose(transpose(a)) == a
    assert a.T.shape == (3, 2)
    assert all(tr(a)[j, i] is a[i, j] or tr(a)[j, i] == a[i, j] for i in range(2) for j in range(3))
    with pytest.raises(DimensionMismatchError):
        dot(Box([I(1)]), Box([I(1), I(2)]))


def test_matmul():
    a = BoxMatrix([[I(1), I(2)], [I(3), I(4)]])
    b = BoxMatrix([[I(0, 1)], [I(1)]])
    assert [lh(e) for e in matmul(a, b).elems] == [(2, 3), (4, 7)]
    assert (a @ b) == matmul(a, b)
    with pytest.raises(DimensionMismatchError):
        matmul(b, b)


def test_paper_matrix_block():
    a = BoxMatrix([[I(2.0 ** -1021, 2.0 ** 100), I()],
                   [I("[-inf,0]"), I("[0,inf]")],
                   [I(-12343, 0), I(50, 10000)]])
    expected = (" [ +4.45E-308, +1.27E+030] [                       ]\n"
                " [       -INF, +0.00E+000] [ +0.00E+000,       +INF]\n"
                " [ -1.24E+004, +0.00E+000] [ +5.00E+001, +1.00E+004]")
    assert format_matrix(a, "+11.2E3W26") == expected


def _box_sample(rng, box):
    out = []
    for e in box:
        pick = rng.random()
        if pick < 0.25:
            out.append(Fraction(e.lo))
        elif pick < 0.5:
            out.append(Fraction(e.hi))
        else:
            out.append(Fraction(e.lo) + (Fraction(e.hi) - Fraction(e.lo)) * Fraction(rng.randint(0, 64), 64))
    return out


def test_paper_box_expression_contains_exact_values():
    # the off-diagonal entries written with reversed bounds are read as [1, 2]
    x = Box([I(1, 3), I(2, 4), I(1, 5)])
    y = Box([I(1, 2), I(2, 3), I(2, 3)])
    a = BoxMatrix([[I(1, 1), I(0, 1), I(3, 5)],
                   [I(1, 2), I(2, 2), I(4, 7)],
                   [I(1, 2), I(2, 2), I(3, 5)]])
    z = a * x + 2 * y + x
    w = tr(a) * y + dot(y, z) * x
    rng = random.Random(2)
    for _ in range(500):
        xs, ys = _box_sample(rng, x), _box_sample(rng, y)
        am = [_box_sample(rng, a.row(i)) for i in range(3)]
        zs = [sum(am[i][j] * xs[j] for j in range(3)) + 2 * ys[i] + xs[i] for i in range(3)]
        yz = sum(ys[i] * zs[i] for i in range(3))
        ws = [sum(am[j][i] * ys[j] for j in range(3)) + yz * xs[i] for i in range(3)]
        assert all(contains(z[i], zs[i]) for i in range(3))
        assert all(contains(w[i], ws[i]) for i in range(3))
    # with exact integer data every step is exact
    assert lhs(z) == [(7, 39), (15, 59), (13, 50)]


def test_containment_lift_point_entries():
    rng = random.Random(7)
    for _ in range(300):
        n, m = rng.randint(0, 4), rng.randint(0, 4)
        av = [[rng.uniform(-10, 10) for _ in range(m)] for _ in range(n)]
        xv = [rng.uniform(-10, 10) for _ in range(m)]
        a = BoxMatrix([[I(v) for v in row] for row in av], cols=m)
        x = Box([I(v) for v in xv])
        r = matvec(a, x)
        for i in range(n):
            exact = sum(Fraction(av[i][j]) * Fraction(xv[j]) for j in range(m))
            assert Fraction(r[i].lo) <= exact <= Fraction(r[i].hi)
        exact = sum(Fraction(v) ** 2 for v in xv)
        d = dot(x, x)
        assert Fraction(d.lo) <= exact <= Fraction(d.hi)


def test_subdistributivity_is_containment_only():
    a = BoxMatrix([[I(-1, 1), I(2)], [I(0, 1), I(-3, -2)]])
    x, y = Box([I(1, 2), I(-1, 0)]), Box([I(-2, -1), I(0, 1)])
    left = matvec(a, x + y)
    right = matvec(a, x) + matvec(a, y)
    assert all(subset(left[i], right[i]) for i in range(2))


def test_parse_and_format():
    a = parse_matrix("{{[1,2], []}, {[-inf,0], 4}}")
    assert a.shape == (2, 2)
    assert a[0, 1].is_empty() and lh(a[1, 1]) == (4, 4)
    one = parse_matrix("[[[1,2]]]")
    assert parse_matrix("{{" + format_hex(one[0, 0]) + "}}") == one
    assert lhs(parse_box("{[1,2], 0.5, [0x1p-3]}")) == [(1, 2), (0.5, 0.5), (0.125, 0.125)]
    assert format_box(Box([I(1), I(2)]), "5.1F") == "[  1.0,  1.0] [  2.0,  2.0]"
    with pytest.raises(RaggedRowsError):
        parse_matrix("{{1, 2}, {3}}")
    for bad in ("{{1, 2}", "{1, 2}}", "{{1 2}}", "1, 2", "{{[1, 2}}"):
        with pytest.raises(ParseError):
            parse_matrix(bad)
    with pytest.raises(ParseError):
        parse_box("{{1}}")


def test_kinds_promote():
    b = Box([I(1), I(2, 2, bigfloat(256))])
    assert b.kind is bigfloat(256) and all(e.kind is bigfloat(256) for e in b)
    a = BoxMatrix([[I(1)]], kind=bigfloat(113))
    assert a.kind is bigfloat(113)
    assert Box([I(1)]).kind is BINARY64

"""Random univariate expressions, evaluable over AD values and over mpmath.

Every generated expression is defined and smooth on the whole real line:
divisions, logs and square roots are guarded by positive denominators.
"""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath

from moore import Interval, adt
from moore import functions as fn

_UNARY = ("sin", "cos", "exp", "atan", "sqr", "sqrtpos", "logpos", "neg")
_BINARY = ("add", "sub", "mul", "divpos")


def random_expr(rng: random.Random, depth: int = 3):
    if depth == 0 or rng.random() < 0.2:
        if rng.random() < 0.6:
            return ("x",)
        return ("c", rng.choice([-3, -2, -1, 1, 2, 3, 5]))
    if rng.random() < 0.45:
        return (rng.choice(_UNARY), random_expr(rng, depth - 1))
    return (rng.choice(_BINARY), random_expr(rng, depth - 1), random_expr(rng, depth - 1))


def evaluate(node, x, lib: str):
    op = node[0]
    if op == "x":
        return x
    if op == "c":
        return node[1]
    a = evaluate(node[1], x, lib)
    if op == "neg":
        return -a
    if op == "sqr":
        return a * a
    if op == "sqrtpos":
        return _f(lib, "sqrt")(1 + a * a)
    if op == "logpos":
        return _f(lib, "log")(2 + a * a)
    if op in _UNARY:
        if op == "exp" and lib == "mp":
            return mpmath.exp(mpmath.atan(a))
        if op == "exp":
            return fn.exp(fn.atan(a))
        return _f(lib, op)(a)
    b = evaluate(node[2], x, lib)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    return a / (1 + b * b)


def _f(lib: str, name: str):
    return getattr(mpmath if lib == "mp" else fn, name)


def show(node) -> str:
    op = node[0]
    if op == "x":
        return "x"
    if op == "c":
        return str(node[1])
    return f"{op}({', '.join(show(n) for n in node[1:])})"


def _mp_fd(node, t: float, h: float):
    with mpmath.workprec(300):
        u = mpmath.mpf(t)
        hh = mpmath.mpf(h)
        return (evaluate(node, u + hh, "mp") - evaluate(node, u - hh, "mp")) / (2 * hh)


def fd_check(node, t: float, h: float = 1e-6) -> bool:
    """The central difference equals f' at some point of [t-h, t+h] (mean value
    theorem), so it must lie in the derivative enclosure over that interval."""
    x = Interval(t - h, t + h) | Interval(Fraction(t) - Fraction(h), Fraction(t) + Fraction(h))
    r = adt(x, lambda v: evaluate(node, v, "ad"))
    q = _mp_fd(node, t, h)
    return r.d.lo <= q <= r.d.hi

"""Forward-mode automatic differentiation over intervals.

An expression is an ordinary Python callable written with the usual
operators and the functions in :mod:`moore.functions`.  Evaluated on an
:class:`ADScalar` it yields enclosures of the value and of the derivative.

>>> from moore.functions import exp
>>> r = adt(Interval(0), exp)
>>> (r.f.lo, r.d.lo)
(1.0, 1.0)
"""

from __future__ import annotations

from collections.abc import Callable, Sequence

from . import functions as fn
from .core import Interval, hull, sqr
from .endpoints import BINARY64
from .linalg import Box
from .textio import FormatSpec, format_interval, get_default_format, parse_format

__all__ = ["ADMulti", "ADScalar", "ADValue", "Gradient", "adt", "adtnf", "format_gradient"]


def _interval(x, kind) -> Interval:
    return x if isinstance(x, Interval) else Interval(x, x, kind)


def _chain(name: str, x: Interval, fx: Interval) -> tuple[str, Interval]:
    """Derivative of ``name`` at x as ``("mul", factor)`` or ``("div", divisor)``.

    The caller forms ``d * factor`` or ``d / divisor``; divisor forms keep
    one rounding instead of two and saturate at singular points.
    """
    one = _interval(1, x.kind)
    if name == "exp":
        return "mul", fx
    if name == "log":
        return "div", x
    if name == "sqrt":
        return "div", 2 * fx
    if name == "sin":
        return "mul", fn.cos(x)
    if name == "cos":
        return "mul", -fn.sin(x)
    if name == "tan":
        return "mul", one + sqr(fx)
    if name == "asin":
        return "div", fn.sqrt(one - sqr(x))
    if name == "acos":
        return "div", -fn.sqrt(one - sqr(x))
    if name == "atan":
        return "div", one + sqr(x)
    if name == "sinh":
        return "mul", fn.cosh(x)
    if name == "cosh":
        return "mul", fn.sinh(x)
    if name == "tanh":
        return "mul", one - sqr(fx)
    if name == "asinh":
        return "div", fn.sqrt(sqr(x) + one)
    if name == "acosh":
        return "div", fn.sqrt(sqr(x) - one)
    if name == "atanh":
        return "div", one - sqr(x)
    raise ValueError(f"no derivative rule for {name!r}")


class ADValue:
    """Shared operator plumbing; subclasses define how the derivative part scales."""

    __slots__ = ("f",)

    f: Interval

    # hooks: derivative part as an opaque object
    def _d(self):
        raise NotImplementedError

    def _new(self, f: Interval, d) -> "ADValue":
        raise NotImplementedError

    def _zero_d(self):
        raise NotImplementedError

    @staticmethod
    def _dmul(d, s: Interval | None, q: Interval | None = None):
        # d * s, or d / q when q is given
        raise NotImplementedError

    @staticmethod
    def _dadd(a, b):
        raise NotImplementedError

    @staticmethod
    def _dsub(a, b):
        raise NotImplementedError

    def _lift(self, other):
        if isinstance(other, ADValue):
            if type(other) is not type(self):
                raise TypeError("cannot mix ADScalar and ADMulti")
            return other
        return self._new(_interval(other, self.f.kind), self._zero_d())

    @property
    def kind(self):
        return self.f.kind

    def __add__(self, other):
        o = self._lift(other)
        return self._new(self.f + o.f, self._dadd(self._d(), o._d()))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return self._new(self.f - o.f, self._dsub(self._d(), o._d()))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return self._new(-self.f, self._dmul(self._d(), _interval(-1, self.f.kind)))

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, ADValue):
            c = _interval(other, self.f.kind)
            return self._new(self.f * c, self._dmul(self._d(), c))
        o = self._lift(other)
        return self._new(self.f * o.f, self._dadd(self._dmul(o._d(), self.f), self._dmul(self._d(), o.f)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, ADValue):
            c = _interval(other, self.f.kind)
            return self._new(self.f / c, self._dmul(self._d(), None, c))
        o = self._lift(other)
        q = sqr(o.f)
        num = self._dsub(self._dmul(self._d(), o.f), self._dmul(o._d(), self.f))
        return self._new(self.f / o.f, self._dmul(num, None, q))

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return self._new(_interval(1, self.f.kind), self._zero_d())
        return self._new(self.f ** n, self._dmul(self._d(), n * self.f ** (n - 1)))

    def __abs__(self):
        f = self.f
        if f.is_empty() or f.lo >= 0:
            return self
        if f.hi <= 0:
            return -self
        # kink inside: hull of both one-sided derivatives
        d_pos, d_neg = self._d(), self._dmul(self._d(), _interval(-1, f.kind))
        return self._new(abs(f), self._dhull(d_pos, d_neg))

    def _apply_function(self, name: str):
        fx = fn.fn_enclosure(name, self.f)
        how, t = _chain(name, self.f, fx)
        return self._new(fx, self._dmul(self._d(), t) if how == "mul" else self._dmul(self._d(), None, t))

    def sqr(self):
        return self._new(sqr(self.f), self._dmul(self._d(), 2 * self.f))


class ADScalar(ADValue):
    """Value ``f`` and derivative ``d`` enclosures of a one-variable expression."""

    __slots__ = ("d",)

    def __init__(self, f: Interval, d: Interval | None = None):
        self.f = f
        self.d = _interval(0, f.kind) if d is None else d

    def _d(self):
        return self.d

    def _new(self, f, d):
        return ADScalar(f, d)

    def _zero_d(self):
        return _interval(0, self.f.kind)

    @staticmethod
    def _dmul(d, s, q=None):
        return d / q if q is not None else d * s

    @staticmethod
    def _dadd(a, b):
        return a + b

    @staticmethod
    def _dsub(a, b):
        return a - b

    @staticmethod
    def _dhull(a, b):
        return hull(a, b)

    def __repr__(self) -> str:
        return f"ADScalar(f={self.f!r}, d={self.d!r})"

    def __str__(self) -> str:
        return f"f = {self.f}\nd = {self.d}"


class ADMulti(ADValue):
    """Value ``f`` and gradient ``g`` (a Box) propagated in a single pass."""

    __slots__ = ("g",)

    def __init__(self, f: Interval, g: Sequence[Interval] | Box):
        self.f = f
        self.g = g if isinstance(g, Box) else Box(g, f.kind)

    def _d(self):
        return self.g

    def _new(self, f, d):
        return ADMulti(f, d)

    def _zero_d(self):
        z = _interval(0, self.f.kind)
        return Box([z] * len(self.g), self.f.kind)

    @staticmethod
    def _dmul(d, s, q=None):
        return Box([e / q for e in d]) if q is not None else Box([e * s for e in d])

    @staticmethod
    def _dadd(a, b):
        return a + b

    @staticmethod
    def _dsub(a, b):
        return a - b

    @staticmethod
    def _dhull(a, b):
        return Box([hull(x, y) for x, y in zip(a, b)])

    def __repr__(self) -> str:
        return f"ADMulti(f={self.f!r}, g={self.g!r})"

    def __str__(self) -> str:
        return format_gradient(self)


class Gradient:
    """Result of :func:`adtnf`: value and gradient enclosures."""

    __slots__ = ("f", "g")

    def __init__(self, f: Interval, g: Box):
        self.f = f
        self.g = g

    def __iter__(self):
        yield self.f
        yield self.g

    def __repr__(self) -> str:
        return f"Gradient(f={self.f!r}, g={self.g!r})"

    def __str__(self) -> str:
        return format_gradient(self)


def format_gradient(r, spec: FormatSpec | str | None = None) -> str:
    """Render ``   f = ...`` followed by one ``g[i] = ...`` line per variable."""
    spec = get_default_format() if spec is None else parse_format(spec)
    lines = [f"   f = {format_interval(r.f, spec)}"]
    lines += [f"g[{i}] = {format_interval(e, spec)}" for i, e in enumerate(r.g)]
    return "\n".join(lines)


def adt(x: Interval, f: Callable) -> ADScalar:
    """Evaluate ``f`` and its derivative over ``x`` (seed derivative ``[1, 1]``)."""
    if not isinstance(x, Interval):
        x = Interval(x, x)
    r = f(ADScalar(x, _interval(1, x.kind)))
    if not isinstance(r, ADScalar):
        return ADScalar(_interval(r, x.kind))
    return r


def adtnf(x: Sequence, f: Callable, *, vector: bool = False) -> Gradient:
    """Value and gradient of ``f(x[0], ..., x[n-1])`` over the box ``x``.

    ``f`` receives a list of lifted variables.  By default one forward pass
    is run per variable; ``vector=True`` propagates the whole gradient in a
    single pass with :class:`ADMulti`.  Both give identical enclosures.
    """
    box = x if isinstance(x, Box) else Box(x)
    kind = box.kind if len(box) else BINARY64
    one, zero = _interval(1, kind), _interval(0, kind)
    n = len(box)
    if vector:
        seeds = [ADMulti(v, [one if j == i else zero for j in range(n)]) for i, v in enumerate(box)]
        r = f(seeds)
        if not isinstance(r, ADMulti):
            return Gradient(_interval(r, kind), Box([zero] * n, kind))
        return Gradient(r.f, r.g)
    value = None
    grads = []
    for i in range(n):
        r = f([ADScalar(v, one if j == i else zero) for j, v in enumerate(box)])
        if not isinstance(r, ADScalar):
            r = ADScalar(_interval(r, kind))
        value = r.f
        grads.append(r.d)
    if value is None:
        value = _interval(f([]), kind)
    return Gradient(value, Box(grads, kind))

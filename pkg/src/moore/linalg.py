"""Interval vectors (boxes) and matrices.

Sums are accumulated left to right, so every entry of a product is
reproducible bit for bit.

>>> a = BoxMatrix([[Interval(1), Interval(0, 1)], [Interval(0), Interval(1)]])
>>> x = Box([Interval(1), Interval(1)])
>>> [(e.lo, e.hi) for e in a * x]
[(1.0, 2.0), (1.0, 1.0)]
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .core import Interval, _mk, arith
from .endpoints import BINARY64, EndpointKind, parse_kind, promote
from .errors import DimensionMismatchError, ParseError, RaggedRowsError
from .textio import FormatSpec, format_interval, get_default_format, parse_format, parse_interval

__all__ = [
    "Box", "BoxMatrix", "box_arith", "dot", "format_box", "format_matrix", "matmul", "matvec",
    "parse_box", "parse_matrix", "scale", "tr", "transpose",
]


def _cell(v, kind: EndpointKind | None) -> Interval:
    if isinstance(v, Interval):
        return v if kind is None else v.to_kind(promote(v.kind, kind))
    if isinstance(v, str):
        return parse_interval(v, kind or BINARY64)
    return Interval(v, v, kind)


def _common_kind(cells: Sequence[Interval], kind: EndpointKind | None) -> EndpointKind:
    k = kind
    for c in cells:
        k = c.kind if k is None else promote(k, c.kind)
    return k or BINARY64


def _unify_cells(cells: list[Interval], kind: EndpointKind) -> tuple[Interval, ...]:
    return tuple(c if c.kind is kind else c.to_kind(kind) for c in cells)


class Box(Sequence):
    """An interval vector; all entries share one endpoint kind."""

    __slots__ = ("kind", "elems")

    def __init__(self, elems: Iterable = (), kind: EndpointKind | str | None = None):
        k = parse_kind(kind) if kind is not None else None
        cells = [_cell(v, k) for v in elems]
        self.kind = _common_kind(cells, k)
        self.elems = _unify_cells(cells, self.kind)

    @classmethod
    def _of(cls, kind: EndpointKind, elems: tuple) -> "Box":
        b = object.__new__(cls)
        b.kind = kind
        b.elems = elems
        return b

    def __len__(self) -> int:
        return len(self.elems)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Box._of(self.kind, self.elems[i])
        return self.elems[i]

    def __iter__(self):
        return iter(self.elems)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Box):
            return NotImplemented
        return self.elems == other.elems

    def __hash__(self) -> int:
        return hash(self.elems)

    def __repr__(self) -> str:
        return f"Box([{', '.join(repr(e) for e in self.elems)}])"

    def __str__(self) -> str:
        return format_box(self)

    def __add__(self, other):
        return box_arith("add", self, other) if isinstance(other, Box) else NotImplemented

    def __sub__(self, other):
        return box_arith("sub", self, other) if isinstance(other, Box) else NotImplemented

    def __neg__(self) -> "Box":
        return Box._of(self.kind, tuple(-e for e in self.elems))

    def __mul__(self, s):
        if isinstance(s, (Box, BoxMatrix)):
            return NotImplemented
        return scale(s, self)

    def __rmul__(self, s):
        if isinstance(s, (Box, BoxMatrix)):
            return NotImplemented
        return scale(s, self)

    def __truediv__(self, s):
        if isinstance(s, (Box, BoxMatrix)):
            return NotImplemented
        return Box(tuple(e / s for e in self.elems))


class BoxMatrix:
    """A dense row-major interval matrix."""

    __slots__ = ("kind", "rows", "cols", "elems")

    def __init__(self, rows: Iterable[Iterable] = (), kind: EndpointKind | str | None = None,
                 cols: int | None = None):
        k = parse_kind(kind) if kind is not None else None
        grid = [[_cell(v, k) for v in row] for row in rows]
        widths = {len(r) for r in grid}
        if len(widths) > 1:
            raise RaggedRowsError(f"rows have different lengths {sorted(widths)}")
        flat = [c for r in grid for c in r]
        self.kind = _common_kind(flat, k)
        self.rows = len(grid)
        self.cols = widths.pop() if widths else (cols or 0)
        self.elems = _unify_cells(flat, self.kind)

    @classmethod
    def _of(cls, kind: EndpointKind, rows: int, cols: int, elems: tuple) -> "BoxMatrix":
        a = object.__new__(cls)
        a.kind = kind
        a.rows = rows
        a.cols = cols
        a.elems = elems
        return a

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Interval:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for shape {self.shape}")
        return self.elems[i * self.cols + j]

    def row(self, i: int) -> Box:
        return Box._of(self.kind, self.elems[i * self.cols:(i + 1) * self.cols])

    def col(self, j: int) -> Box:
        return Box._of(self.kind, self.elems[j::self.cols] if self.cols else ())

    def tolist(self) -> list[list[Interval]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoxMatrix):
            return NotImplemented
        return self.shape == other.shape and self.elems == other.elems

    def __hash__(self) -> int:
        return hash((self.shape, self.elems))

    def __repr__(self) -> str:
        return f"BoxMatrix({self.tolist()!r})"

    def __str__(self) -> str:
        return format_matrix(self)

    def _elementwise(self, op: str, other: "BoxMatrix") -> "BoxMatrix":
        if self.shape != other.shape:
            raise DimensionMismatchError(f"shapes {self.shape} and {other.shape} differ")
        elems = tuple(arith(op, a, b) for a, b in zip(self.elems, other.elems))
        k = elems[0].kind if elems else promote(self.kind, other.kind)
        return BoxMatrix._of(k, self.rows, self.cols, elems)

    def __add__(self, other):
        return self._elementwise("add", other) if isinstance(other, BoxMatrix) else NotImplemented

    def __sub__(self, other):
        return self._elementwise("sub", other) if isinstance(other, BoxMatrix) else NotImplemented

    def __neg__(self) -> "BoxMatrix":
        return BoxMatrix._of(self.kind, self.rows, self.cols, tuple(-e for e in self.elems))

    def __mul__(self, other):
        if isinstance(other, Box):
            return matvec(self, other)
        if isinstance(other, BoxMatrix):
            return matmul(self, other)
        return _scale_matrix(other, self)

    def __rmul__(self, s):
        return _scale_matrix(s, self)

    def __matmul__(self, other):
        if isinstance(other, Box):
            return matvec(self, other)
        if isinstance(other, BoxMatrix):
            return matmul(self, other)
        return NotImplemented

    @property
    def T(self) -> "BoxMatrix":
        return transpose(self)


# -- operations ------------------------------------------------------------------------


def box_arith(op: str, x: Box, y: Box) -> Box:
    """Elementwise ``x op y`` for op in add/sub/mul/div."""
    if len(x) != len(y):
        raise DimensionMismatchError(f"boxes of length {len(x)} and {len(y)}")
    if not len(x):
        return Box._of(promote(x.kind, y.kind), ())
    elems = tuple(arith(op, a, b) for a, b in zip(x.elems, y.elems))
    return Box._of(elems[0].kind, elems)


def scale(s, x: Box) -> Box:
    """``s * x`` for an interval or scalar ``s``."""
    if not len(x):
        return x
    elems = tuple(s * e for e in x.elems)
    return Box._of(elems[0].kind, elems)


def _scale_matrix(s, a: BoxMatrix) -> BoxMatrix:
    if isinstance(s, (Box, BoxMatrix)):
        return NotImplemented
    elems = tuple(s * e for e in a.elems)
    k = elems[0].kind if elems else a.kind
    return BoxMatrix._of(k, a.rows, a.cols, elems)


def _sum_products(pairs, kind: EndpointKind) -> Interval:
    zero = kind.zero()
    acc = _mk(kind, zero, zero)
    for a, b in pairs:
        acc = acc + a * b
    return acc


def dot(x: Box, y: Box) -> Interval:
    """``sum(x[i] * y[i])`` left to right; ``[0, 0]`` for empty boxes."""
    if len(x) != len(y):
        raise DimensionMismatchError(f"boxes of length {len(x)} and {len(y)}")
    k = promote(x.kind, y.kind)
    return _sum_products(zip(x.elems, y.elems), k)


def matvec(a: BoxMatrix, x: Box) -> Box:
    if a.cols != len(x):
        raise DimensionMismatchError(f"matrix with {a.cols} columns times box of length {len(x)}")
    k = promote(a.kind, x.kind)
    elems = tuple(_sum_products(zip(a.row(i).elems, x.elems), k) for i in range(a.rows))
    return Box._of(k, elems)


def matmul(a: BoxMatrix, b: BoxMatrix) -> BoxMatrix:
    if a.cols != b.rows:
        raise DimensionMismatchError(f"shapes {a.shape} and {b.shape} do not chain")
    k = promote(a.kind, b.kind)
    cols = [b.col(j).elems for j in range(b.cols)]
    elems = tuple(
        _sum_products(zip(a.row(i).elems, cols[j]), k) for i in range(a.rows) for j in range(b.cols)
    )
    return BoxMatrix._of(k, a.rows, b.cols, elems)


def transpose(a: BoxMatrix) -> BoxMatrix:
    elems = tuple(a.elems[i * a.cols + j] for j in range(a.cols) for i in range(a.rows))
    return BoxMatrix._of(a.kind, a.cols, a.rows, elems)


tr = transpose


# -- text --------------------------------------------------------------------------------


def _join(cells: list[str], spec: FormatSpec) -> str:
    # padded cells already carry their own separation
    return ("" if spec.interval_width else " ").join(cells)


def format_box(x: Box, spec: FormatSpec | str | None = None) -> str:
    spec = get_default_format() if spec is None else parse_format(spec)
    return _join([format_interval(e, spec) for e in x], spec)


def format_matrix(a: BoxMatrix, spec: FormatSpec | str | None = None) -> str:
    """One line per row, each cell rendered by ``format_interval``."""
    spec = get_default_format() if spec is None else parse_format(spec)
    return "\n".join(_join([format_interval(e, spec) for e in a.row(i)], spec) for i in range(a.rows))


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, what: str):
        raise ParseError(f"{what} at offset {self.pos} in {self.text!r}")

    def value(self, kind: EndpointKind):
        c = self.peek()
        if c == "{":
            return self.items("{", "}", kind)
        if c == "[":
            save = self.pos
            self.pos += 1
            inner = self.peek()
            self.pos = save
            if inner in ("[", "{"):
                return self.items("[", "]", kind)
            end = self.text.find("]", self.pos)
            if end < 0:
                self.fail("unclosed interval")
            lit = self.text[self.pos:end + 1]
            self.pos = end + 1
            return parse_interval(lit, kind)
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",{}[]":
            self.pos += 1
        token = self.text[start:self.pos].strip()
        if not token:
            self.fail("expected a value")
        return parse_interval(f"[{token}]", kind)

    def items(self, open_: str, close: str, kind: EndpointKind) -> list:
        self.pos += 1
        out = []
        if self.peek() == close:
            self.pos += 1
            return out
        while True:
            out.append(self.value(kind))
            c = self.peek()
            self.pos += 1
            if c == close:
                return out
            if c != ",":
                self.pos -= 1
                self.fail(f"expected ',' or {close!r}")


def _read(text: str, kind: EndpointKind):
    r = _Reader(text)
    if r.peek() not in ("{", "["):
        r.fail("expected a list")
    v = r.value(kind)
    if r.peek():
        r.fail("trailing text")
    return v


def parse_box(text: str, kind: EndpointKind | str = BINARY64) -> Box:
    """Parse ``{[1,2], [0,1], 3}``; bare numbers become point enclosures."""
    kind = parse_kind(kind)
    v = _read(text, kind)
    if not isinstance(v, list) or any(isinstance(e, list) for e in v):
        raise ParseError(f"expected a flat list of intervals in {text!r}")
    return Box(v, kind)


def parse_matrix(text: str, kind: EndpointKind | str = BINARY64) -> BoxMatrix:
    """Parse nested lists such as ``{{[1,2], []}, {[-inf,0], 4}}``."""
    kind = parse_kind(kind)
    v = _read(text, kind)
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise ParseError(f"expected a list of rows in {text!r}")
    if any(isinstance(c, list) for r in v for c in r):
        raise ParseError(f"matrix cells must be intervals in {text!r}")
    return BoxMatrix(v, kind)

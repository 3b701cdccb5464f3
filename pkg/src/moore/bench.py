"""Self-timing benchmark over pseudo-random intervals.

Inputs come from a splitmix64 stream with a fixed seed, so checksums are
reproducible.  For each function an interval is drawn as ``lo`` uniform in
the function's sampling range and ``hi = lo + |u| * scale`` with ``u``
uniform in [-1, 1) and ``scale`` 1/1000 of the range width, clipped to
the range.
"""

from __future__ import annotations

import json
import platform
import statistics
import sys
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass

from . import functions as fn
from .core import Interval, hull
from .endpoints import BINARY64, EndpointKind
from .textio import format_hex

__all__ = ["BenchReport", "DEFAULT_SEED", "SAMPLING", "SplitMix64", "random_intervals", "run_suite"]

DEFAULT_SEED = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1

# sampling ranges, chosen inside each function's domain
SAMPLING: dict[str, tuple[float, float]] = {
    "sin": (-100.0, 100.0),
    "cos": (-100.0, 100.0),
    "tan": (-100.0, 100.0),
    "atan": (-100.0, 100.0),
    "exp": (-700.0, 700.0),
    "asin": (-1.0, 1.0),
    "acos": (-1.0, 1.0),
    "log": (1e-6, 1000.0),
    "add": (-1000.0, 1000.0),
    "sub": (-1000.0, 1000.0),
    "mul": (-1000.0, 1000.0),
    "div": (-1000.0, 1000.0),
}

SUITES = {
    "elem": ("sin", "cos", "tan", "atan", "exp", "asin", "acos", "log"),
    "arith": ("add", "sub", "mul", "div"),
}


class SplitMix64:
    def __init__(self, seed: int = DEFAULT_SEED):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self, a: float, b: float) -> float:
        return a + (b - a) * ((self.next() >> 11) * 2.0 ** -53)


def random_intervals(name: str, count: int, rng: SplitMix64,
                     kind: EndpointKind = BINARY64) -> Iterator[Interval]:
    a, b = SAMPLING[name]
    scale = (b - a) / 1000.0
    for _ in range(count):
        lo = rng.uniform(a, b)
        hi = min(lo + abs(rng.uniform(-1.0, 1.0)) * scale, b)
        yield Interval(lo, hi, kind)


@dataclass(frozen=True)
class BenchReport:
    fn: str
    count: int
    wall_s: float
    per_call_ns: float
    checksum_hex: str

    def to_json(self) -> str:
        return json.dumps({"fn": self.fn, "count": self.count, "wall_s": self.wall_s,
                           "per_call_ns": self.per_call_ns, "checksum_hex": self.checksum_hex})


_BINARY: dict[str, Callable] = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
    "div": lambda x, y: x / y,
}


def _time_once(name: str, args: list) -> tuple[float, Interval]:
    acc = None
    if name in _BINARY:
        op = _BINARY[name]
        t0 = time.perf_counter()
        out = [op(x, y) for x, y in args]
        wall = time.perf_counter() - t0
    else:
        f = getattr(fn, name)
        t0 = time.perf_counter()
        out = [f(x) for x in args]
        wall = time.perf_counter() - t0
    for r in out:
        acc = r if acc is None else hull(acc, r)
    return wall, acc


def run_suite(suite: str, count: int, seed: int = DEFAULT_SEED, repeats: int = 5,
              kind: EndpointKind = BINARY64) -> tuple[list[BenchReport], dict]:
    """Time every function of ``suite``; returns reports and raw timings."""
    if count < 1:
        raise ValueError("count must be at least 1")
    raw: dict = {"seed": seed, "repeats": repeats, "kind": kind.name, "environment": environment(),
                 "timings": {}}
    reports = []
    for name in SUITES[suite]:
        rng = SplitMix64(seed)
        xs = list(random_intervals(name, count, rng, kind))
        args = list(zip(xs, random_intervals(name, count, rng, kind))) if name in _BINARY else xs
        walls = []
        checksum = None
        for _ in range(repeats):
            wall, checksum = _time_once(name, args)
            walls.append(wall)
        raw["timings"][name] = walls
        wall = statistics.median(walls)
        reports.append(BenchReport(name, count, wall, wall / count * 1e9, format_hex(checksum)))
    return reports, raw


def environment() -> dict:
    import numpy

    return {"python": sys.version.split()[0], "implementation": platform.python_implementation(),
            "machine": platform.machine(), "system": platform.system(), "numpy": numpy.__version__}

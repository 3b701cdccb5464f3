"""Rounding directions and the rounding guard.

Directed rounding is realized by error-free transformations plus
next-representable stepping, so the guard never touches the FPU control
word.  It is kept because code written against the library is expected to
open one before doing interval work, and with debug checks enabled the
directed endpoint operations refuse to run without it.
"""

from __future__ import annotations

import enum
import os
import threading


class Direction(enum.Enum):
    DOWN = "down"
    UP = "up"

    def flip(self) -> "Direction":
        return Direction.UP if self is Direction.DOWN else Direction.DOWN


DOWN = Direction.DOWN
UP = Direction.UP

_local = threading.local()
_debug = os.environ.get("MOORE_DEBUG_ROUNDING", "") not in ("", "0")


class RoundingGuard:
    """Scope token for directed rounding on the current thread.

    Usable as a context manager or held as an object, mirroring the
    construct-then-destroy usage of a C++ guard::

        with RoundingGuard():
            y = x * x

    Guards nest; closing one restores whatever was active before it.
    """

    __slots__ = ("_open",)

    def __init__(self) -> None:
        self._open = False
        self.acquire()

    def acquire(self) -> None:
        if not self._open:
            _local.depth = getattr(_local, "depth", 0) + 1
            self._open = True

    def release(self) -> None:
        if self._open:
            _local.depth -= 1
            self._open = False

    def __enter__(self) -> "RoundingGuard":
        self.acquire()
        return self

    def __exit__(self, *exc) -> None:
        self.release()

    def __del__(self) -> None:
        try:
            self.release()
        except Exception:
            pass


UpRounding = RoundingGuard


def guard_active() -> bool:
    return getattr(_local, "depth", 0) > 0


def set_debug_checks(enabled: bool) -> None:
    """Turn the no-active-guard check on or off for this process."""
    global _debug
    _debug = bool(enabled)


def debug_checks() -> bool:
    return _debug


def check_guard() -> None:
    if _debug and not guard_active():
        from .errors import NoActiveGuardError

        raise NoActiveGuardError("directed endpoint operation outside a RoundingGuard")

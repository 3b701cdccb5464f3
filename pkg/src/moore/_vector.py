"""Vectorized binary64 directed rounding on numpy arrays.

The kernels mirror the scalar ones in :mod:`moore.endpoints`: round to
nearest, recover the exact error, step one ulp when it points the wrong
way.  Lanes where the error-free transformations are not exact (overflow,
underflow, non-finite operands) are reported through a ``bad`` mask so the
caller can redo them with the scalar code.  Every lane that is not flagged
holds the correctly rounded directed result, hence bit-identical to the
scalar path.
"""

from __future__ import annotations

import numpy as np

_SPLIT = 134217729.0
_BIG = 2.0 ** 995
_TINY = 2.0 ** -960
_INF = np.inf


def _two_prod_err(a, b, p):
    t = _SPLIT * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLIT * b
    bh = t - (t - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _step(r, err, up: bool):
    # One ulp is +-1 on the bit pattern; r is finite and nonzero wherever the
    # error is nonzero (other lanes are flagged bad by the callers).
    toward = (err > 0) if up else (err < 0)
    sgn = np.where(r > 0, 1, -1) if up else np.where(r > 0, -1, 1)
    bits = r.view(np.int64) + toward * sgn
    return bits.view(np.float64) + 0.0


def _sum(a, b, bad):
    s = a + b
    bad |= ~np.isfinite(s)
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def add(a, b, up: bool, bad):
    """Directed ``a + b``; marks non-finite lanes in ``bad``."""
    s, err = _sum(a, b, bad)
    return _step(s, err, up)


def add_both(a, b, bad):
    """``(a + b rounded down, a + b rounded up)``."""
    s, err = _sum(a, b, bad)
    return _step(s, err, False), _step(s, err, True)


def _quot(a, b, bad):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        q = a / b
        aa, ab, aq = np.abs(a), np.abs(b), np.abs(q)
        ok = (_TINY < aa) & (aa < _BIG) & (ab < _BIG) & (_TINY < aq) & (aq < _BIG)
        bad |= ~ok
        p = q * b
        r = (a - p) - _two_prod_err(q, b, p)
        # exact - q has the sign of r / b
        return q, np.where(b > 0, r, -r)


def div(a, b, up: bool, bad):
    """Directed ``a / b``; marks lanes outside the exact-residual range."""
    q, r = _quot(a, b, bad)
    return _step(q, r, up)


def div_both(a, b, bad):
    q, r = _quot(a, b, bad)
    return _step(q, r, False), _step(q, r, True)


def interval_div(al, ah, bl, bh, bad):
    """``[al, ah] / [bl, bh]`` for divisors not containing zero.

    ``al``/``ah`` may be scalars.

    With zero excluded the exact bounds are attained at endpoint quotients and
    directed rounding is monotone, so min/max over the four candidates equals
    the case-table result.  Lanes whose divisor touches zero are marked bad.
    """
    bad |= (bl <= 0) & (bh >= 0)
    if np.ndim(al) == 0 and al == ah:
        # point numerator: only the divisor endpoints matter
        d1, u1 = div_both(al, bl, bad)
        d2, u2 = div_both(al, bh, bad)
        return np.minimum(d1, d2), np.maximum(u1, u2)
    lo = np.minimum.reduce([div(al, bl, False, bad), div(al, bh, False, bad),
                            div(ah, bl, False, bad), div(ah, bh, False, bad)])
    hi = np.maximum.reduce([div(al, bl, True, bad), div(al, bh, True, bad),
                            div(ah, bl, True, bad), div(ah, bh, True, bad)])
    return lo, hi


def interval_abs(lo, hi):
    neg = hi <= 0
    straddle = (lo < 0) & (hi > 0)
    alo = np.where(neg, -hi, np.where(straddle, 0.0, lo))
    ahi = np.where(neg, -lo, np.where(straddle, np.maximum(-lo, hi), hi))
    return alo + 0.0, ahi + 0.0

"""Small scalar search routines used by the model and the optimizer."""

from __future__ import annotations

import math
from typing import Callable

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0  # 1/phi
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0  # 1/phi^2


def golden_section_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-6,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Locate the maximum of a unimodal function on [lo, hi].

    Returns (argmax, max). Tolerance is relative to the interval scale.
    """
    if hi < lo:
        raise ValueError("empty bracket")
    a, b = lo, hi
    h = b - a
    scale = max(abs(lo), abs(hi), 1e-300)
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if h <= rel_tol * scale:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INVPHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
    if fc > fd:
        return c, fc
    return d, fd


def golden_section_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-6,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Locate the minimum of a unimodal function on [lo, hi]."""
    x, fx = golden_section_max(lambda t: -f(t), lo, hi, rel_tol, max_iter)
    return x, -fx


def bisect_root(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Root of f on [lo, hi] by plain bisection; requires a sign change."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError("no sign change on the bracket")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_tol * max(abs(lo), abs(hi), 1e-300):
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def bisect_boundary(
    pred: Callable[[float], bool],
    lo: float,
    hi: float,
    abs_tol: float = 1e-6,
    max_iter: int = 200,
) -> float:
    """Smallest x in [lo, hi] with pred(x) true, given pred is monotone.

    Requires pred(hi) true. If pred(lo) is already true, returns lo.
    """
    if pred(lo):
        return lo
    if not pred(hi):
        raise ValueError("predicate false on the whole bracket")
    for _ in range(max_iter):
        if hi - lo <= abs_tol:
            break
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi

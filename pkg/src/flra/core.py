"""Shannon-rate primitive shared by both device populations."""

from __future__ import annotations

import math


def shannon_rate(b: float, gain: float, power: float, n0: float) -> float:
    """Achievable rate [bit/s] on a band of width ``b`` Hz.

    Returns ``b * log2(1 + gain * power / (b * n0))``. The ``b = 0``
    case maps to rate 0, the continuous limit of ``b*log2(1 + c/b)``
    as ``b -> 0``, so a full carve-out (rho = 1) stays representable.
    """
    if b < 0:
        raise ValueError("bandwidth must be nonnegative")
    if gain <= 0 or power <= 0 or n0 <= 0:
        raise ValueError("gain, power and n0 must be strictly positive")
    if b == 0.0:
        return 0.0
    return b * math.log2(1.0 + gain * power / (b * n0))

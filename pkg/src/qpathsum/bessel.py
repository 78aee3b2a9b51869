"""Bessel functions of the first kind, integer order, by Miller's algorithm.

The recurrence ``J_{k-1}(x) = (2k/x) J_k(x) - J_{k+1}(x)`` is stable downward.
Starting from an arbitrary seed well above both ``d`` and ``x`` and normalising
with ``J_0 + 2 sum_k J_{2k} = 1`` gives every ``J_k`` for ``k <= d`` at once.
For ``x < 1`` the power series is used instead, since ``2k/x`` would overflow
the recurrence for tiny arguments.
"""

from __future__ import annotations

import math

import numpy as np

_RESCALE = 1e250
_SERIES_BELOW = 1.0


def _series_table(d_max: int, x: float) -> np.ndarray:
    # J_d(x) = sum_m (-1)^m (x/2)^(2m+d) / (m! (m+d)!); for x < 1 a few terms suffice
    out = np.zeros(d_max + 1)
    log_half = math.log(x) - math.log(2)
    q = -(x / 2) ** 2
    for d in range(d_max + 1):
        lead = d * log_half - math.lgamma(d + 1)
        if lead < -745:  # underflows to 0 for this and every higher order
            break
        term, total = 1.0, 1.0
        for m in range(1, 40):
            term *= q / (m * (m + d))
            total += term
            if abs(term) < 1e-17 * abs(total):
                break
        out[d] = math.exp(lead) * total
    return out


def _start_order(d: int, x: float) -> int:
    m = max(d, int(x)) + 30 + int(math.sqrt(60 * max(d, x, 1.0)))
    return m + (m % 2)


def bessel_j_table(d_max: int, x: float) -> np.ndarray:
    """``[J_0(x), ..., J_{d_max}(x)]`` for ``x >= 0``."""
    if d_max < 0:
        raise ValueError("d_max must be nonnegative")
    if x < 0:
        raise ValueError("x must be nonnegative; use J_d(-x) = (-1)^d J_d(x)")
    out = np.zeros(d_max + 1)
    if x == 0.0:
        out[0] = 1.0
        return out
    if x < _SERIES_BELOW:
        return _series_table(d_max, x)
    m = _start_order(d_max, x)
    j_next, j_cur = 0.0, 1e-300
    norm = 0.0
    for k in range(m, 0, -1):
        j_prev = 2 * k / x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds J_{k-1} (unnormalised)
        if k - 1 <= d_max:
            out[k - 1] = j_cur
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2 * j_cur
        if abs(j_cur) > _RESCALE:
            j_cur /= _RESCALE
            j_next /= _RESCALE
            out /= _RESCALE
            norm /= _RESCALE
    norm += j_cur
    return out / norm


def bessel_j(d: int, x: float) -> float:
    """``J_d(x)`` for integer ``d`` and real ``x``.

    Values far in the evanescent region ``|d| >> x`` underflow to 0.
    """
    d = int(d)
    sign = 1.0
    if d < 0:
        d = -d
        sign = (-1.0) ** d
    if x < 0:
        x = -x
        sign *= (-1.0) ** d
    return sign * float(bessel_j_table(d, x)[d])

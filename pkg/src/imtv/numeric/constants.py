"""pi and log 2 by fixed-point arctangent series."""

from __future__ import annotations

from functools import lru_cache

from mpmath import mpf

from .bigreal import BigReal, working_precision


def _arctan_inv(x: int, scale: int) -> tuple[int, int]:
    """``scale * arctan(1/x)`` in integers; returns (value, number of terms)."""
    total, power, k, sign = 0, scale // x, 0, 1
    x2 = x * x
    while power:
        total += sign * (power // (2 * k + 1))
        power //= x2
        k += 1
        sign = -sign
    return total, k


def _arctanh_inv(x: int, scale: int) -> tuple[int, int]:
    total, power, k = 0, scale // x, 0
    x2 = x * x
    while power:
        total += power // (2 * k + 1)
        power //= x2
        k += 1
    return total, k


@lru_cache(maxsize=32)
def _fixed_point(P: int) -> tuple[int, int, int, int]:
    guard = 10
    scale = 10 ** (P + guard)
    a5, n5 = _arctan_inv(5, scale)
    a239, n239 = _arctan_inv(239, scale)
    pi = 16 * a5 - 4 * a239
    # each truncated term loses < 1 unit; the alternating tails are below one unit too
    pi_units = 16 * (n5 + 1) + 4 * (n239 + 1)
    t3, n3 = _arctanh_inv(3, scale)
    log2 = 2 * t3
    log2_units = 2 * (n3 + 2)
    return pi, pi_units, log2, log2_units


def const_pi_log2(P: int) -> tuple[BigReal, BigReal]:
    """pi (Machin's formula) and log 2 (= 2 artanh(1/3)) to ``P`` digits."""
    if P < 10:
        raise ValueError("precision must be at least 10 digits")
    pi, pi_units, log2, log2_units = _fixed_point(P)
    with working_precision(P):
        scale = mpf(10) ** (P + 10)
        return (BigReal(mpf(pi) / scale, mpf(pi_units + 1) / scale),
                BigReal(mpf(log2) / scale, mpf(log2_units + 1) / scale))

"""Euler–Maclaurin tails of power sums over arithmetic progressions."""

from __future__ import annotations

from functools import lru_cache

from mpmath import bernoulli, factorial, mp, mpf

from .bigreal import BigReal


@lru_cache(maxsize=None)
def _bern_over_fact(i: int, dps: int) -> mpf:
    with mp.workdps(dps):
        return bernoulli(2 * i) / factorial(2 * i)


def power_tail(s, start, step=1, *, eps=None, max_terms: int = 400) -> BigReal:
    """``sum_{i >= 0} (start + i*step)^(-s)`` for real ``s > 1`` by Euler–Maclaurin.

    ``x^-s`` is completely monotone, so the remainder after the last
    Bernoulli correction is bounded by the first omitted correction.
    """
    s, x0, h = mpf(s), mpf(start), mpf(step)
    if s <= 1:
        raise ValueError("power tail diverges for s ≤ 1")
    if x0 <= 0:
        raise ValueError("tail must start at a positive abscissa")
    eps = mpf(10) ** (-mp.dps) if eps is None else mpf(eps)
    f0 = x0 ** (-s)
    total = x0 ** (1 - s) / ((s - 1) * h) + f0 / 2
    # running (s)_{2i-1} h^{2i-1} x0^{-s-2i+1}
    deriv = s * h * f0 / x0
    i = 1
    while True:
        term = _bern_over_fact(i, mp.dps) * deriv
        if abs(term) < eps * abs(total) or i > max_terms:
            break
        total += term
        deriv *= (s + 2 * i - 1) * (s + 2 * i) * h * h / (x0 * x0)
        i += 1
        if i > 2 and abs(term) > abs(prev):
            raise ArithmeticError("Euler–Maclaurin corrections stopped decreasing; start further out")
        prev = term
    return BigReal(total, abs(term) + i * abs(total) * mpf(10) ** (1 - mp.dps))

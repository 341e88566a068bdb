"""Numerical multiple t-values of level N, their star and interpolated variants.

Nested sums are evaluated by direct summation over the first ``J`` points of
the progression ``a, a+N, a+2N, ...`` combined with asymptotic expansions of
every inner partial sum in the basis ``m^{-p} (log m)^q``.  Each inner sum's
expansion follows from the next one by Euler–Maclaurin applied term by term;
its constant is fixed by matching the directly computed partial sum at the
cutoff.  The outermost constant is the t-value itself.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import log, mp, mpf

from ..genfun import LevelData, as_level
from ..index import Index, interpolation_expansion
from .bigreal import BigReal, working_precision
from .cache import cache_key, default_cache
from .tails import _bern_over_fact, power_tail


class NotAdmissible(ValueError):
    pass


class ToleranceUnreachable(ArithmeticError):
    pass


MAX_CUTOFF = 4096


def _as_index(k) -> Index:
    return k if isinstance(k, Index) else Index(tuple(k))


def _require_admissible(k: Index) -> None:
    if not k.admissible:
        raise NotAdmissible(f"index ({k}) is not admissible: first part must exceed 1")


def t_depth1(level, k: int, P: int = 30) -> BigReal:
    """``sum_{m ≡ a (N), m > 0} m^{-k}`` by direct summation plus Euler–Maclaurin."""
    level = as_level(level)
    if int(k) != k or k < 2:
        raise NotAdmissible(f"depth-one t-value needs an integer k ≥ 2, got {k}")
    N, a = level.N, level.a
    M0 = max(50, P)
    with working_precision(P):
        head = mp.fsum(mpf(a + i * N) ** (-k) for i in range(M0))
        tail = power_tail(k, a + M0 * N, N, eps=mpf(10) ** (-(P + 5)))
        return tail + BigReal(head, M0 * abs(head) * mpf(10) ** (1 - mp.dps))


# -- asymptotic expansions in m^{-p} (log m)^q ---------------------------------

def _shift(e: dict, k: int) -> dict:
    return {(p + k, q): c for (p, q), c in e.items()}


def _deriv(e: dict) -> dict:
    out: dict = {}
    for (p, q), c in e.items():
        if p:
            out[(p + 1, q)] = out.get((p + 1, q), 0) - p * c
        if q:
            out[(p + 1, q - 1)] = out.get((p + 1, q - 1), 0) + q * c
    return out


def _antideriv(e: dict) -> dict:
    """Antiderivative without constant term; needs every p ≥ 1."""
    out: dict = {}
    for (p, q), c in e.items():
        if p == 0:
            raise ValueError("summand does not decay")
        if p == 1:
            out[(0, q + 1)] = out.get((0, q + 1), 0) + c / (q + 1)
            continue
        falling = mpf(1)
        for i in range(q + 1):
            key = (p - 1, q - i)
            out[key] = out.get(key, 0) - c * falling / mpf(p - 1) ** (i + 1)
            falling *= q - i
    return out


def _truncate(e: dict, order: int) -> dict:
    return {key: c for key, c in e.items() if key[0] <= order}


def _axpy(out: dict, e: dict, s) -> None:
    for key, c in e.items():
        out[key] = out.get(key, 0) + s * c


def _evaluate(e: dict, m) -> mpf:
    L = log(m)
    m = mpf(m)
    return mp.fsum(c * m ** (-p) * L ** q for (p, q), c in e.items())


def _top_order_size(e: dict, m, order: int) -> mpf:
    L = log(m)
    m = mpf(m)
    return mp.fsum(abs(c) * m ** (-p) * L ** q for (p, q), c in e.items() if p >= order - 1)


def _partial_sum_expansion(f: dict, N: int, order: int, weak: bool) -> dict:
    """Non-constant part of ``sum_{m' < m}`` (or ``m' ≤ m``) of ``f`` over the progression.

    ``(1/N) F(m) ∓ f(m)/2 + sum_i B_{2i}/(2i)! N^{2i-1} f^{(2i-1)}(m)``.
    """
    out: dict = {}
    _axpy(out, _antideriv(f), mpf(1) / N)
    _axpy(out, f, mpf(1) / 2 if weak else -mpf(1) / 2)
    d = _truncate(_deriv(f), order)
    i = 1
    while d:
        _axpy(out, d, _bern_over_fact(i, mp.dps) * mpf(N) ** (2 * i - 1))
        d = _truncate(_deriv(_deriv(d)), order)
        i += 1
    return _truncate(out, order)


def _nested_value(N: int, a: int, parts: tuple[int, ...], J: int, order: int,
                  weak: bool) -> tuple[mpf, mpf]:
    ms = [mpf(a + i * N) for i in range(J + 1)]
    M = ms[J]
    vals = [mpf(1)] * (J + 1)
    expansion = {(0, 0): mpf(1)}
    trunc_err = mpf(0)
    for k in reversed(parts):
        f = _truncate(_shift(expansion, k), order)
        acc = mpf(0)
        new = [mpf(0)] * (J + 1)
        for i in range(J + 1):
            term = vals[i] / ms[i] ** k
            if weak:
                acc += term
                new[i] = acc
            else:
                new[i] = acc
                acc += term
        part = _partial_sum_expansion(f, N, order, weak)
        trunc_err += _top_order_size(part, M, order)
        constant = new[J] - _evaluate(part, M)
        part[(0, 0)] = part.get((0, 0), 0) + constant
        expansion, vals = part, new
    value = expansion[(0, 0)]
    rounding = (J + 1) * len(parts) * abs(value) * mpf(10) ** (1 - mp.dps)
    return value, 10 * trunc_err + rounding


def _default_cutoff(dps: int) -> int:
    return max(60, dps + 30)


def _default_order(dps: int, M: int) -> int:
    return math.ceil(dps / math.log10(M)) + 10


def t_nested(level, k, P: int = 30, tol=None, *, star: bool = False,
             cutoff: int | None = None, order: int | None = None, cache=None) -> BigReal:
    """Multiple t-value ``t_{N,a}(k)`` (``t*_{N,a}(k)`` if ``star``) as a BigReal.

    Raises :class:`ToleranceUnreachable` when the certified error stays above
    ``tol`` even at the largest cutoff.
    """
    level = as_level(level)
    k = _as_index(k)
    _require_admissible(k)
    if k.depth == 0:
        return BigReal(1)
    if cache is None:
        cache = default_cache()
    key = None
    if not star and cutoff is None and order is None and cache is not False:
        key = cache_key(level.N, level.a, str(k), P, tol)
        hit = cache.get(key)
        if hit is not None:
            return hit
    with working_precision(P):
        J = cutoff or _default_cutoff(mp.dps)
        target = mpf(10) ** (-P) if tol is None else mpf(tol)
        while True:
            M = level.a + J * level.N
            p_max = order or _default_order(mp.dps, M)
            value, err = _nested_value(level.N, level.a, k.parts, J, p_max, star)
            if err <= target or cutoff is not None:
                break
            if J >= MAX_CUTOFF:
                raise ToleranceUnreachable(
                    f"t({k}) at level {level}: error {mp.nstr(err, 3)} above {mp.nstr(target, 3)}")
            J = min(2 * J, MAX_CUTOFF)
        out = BigReal(value, err)
        if key is not None:
            cache.put(key, out)
    return out


def t_star(level, k, P: int = 30, tol=None) -> BigReal:
    """Star value by weak-inequality summation (independent of the comma/plus route)."""
    return t_nested(level, k, P, tol, star=True)


def t_interp_eval(level, k, r_val, P: int = 30, tol=None) -> BigReal:
    """``t^r_{N,a}(k) = sum_p r^{n - dep(p)} t_{N,a}(p)`` at a rational ``r``."""
    k = _as_index(k)
    _require_admissible(k)
    if k.depth == 0:
        return BigReal(1)
    r_val = Fraction(r_val)
    with working_precision(P):
        total = None
        for term in interpolation_expansion(k):
            weight = r_val ** term.r_exponent
            if weight == 0:
                continue
            value = t_nested(level, term.index, P, tol)
            if weight != 1:
                value = value * weight
            total = value if total is None else total + value
        return total


def t_partial_sum(level, k, cutoff: int, *, star: bool = False) -> mpf:
    """Raw nested sum with every summation variable below ``cutoff`` (no tail)."""
    level = as_level(level)
    k = _as_index(k)
    ms = [mpf(m) for m in range(level.a, cutoff, level.N)]
    vals = [mpf(1)] * len(ms)
    for part in reversed(k.parts):
        acc = mpf(0)
        new = []
        for m, v in zip(ms, vals):
            if star:
                acc += v / m ** part
                new.append(acc)
            else:
                new.append(acc)
                acc += v / m ** part
        vals = new
    return acc

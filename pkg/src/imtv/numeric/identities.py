"""Both sides of the numeric generating-function identities.

Left sides are sums of interpolated t-values over index sets; right sides are
built from depth-one t-values, log 2, power sums and hypergeometric values.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from mpmath import cos, log, lu_solve, matrix, mpf, pi, sqrt

from ..genfun import as_level
from ..index import Index, enumerate_indices
from ..rings import QQ
from ..series import (RootPair, TruncatedSeriesUVW, TruncatedSeriesZ, UVWBounds, exp_series,
                      newton_power_sums)
from .bigreal import BigReal, RealRing, working_precision
from .constants import const_pi_log2
from .hypergeom import PFQParams, pfq_at_1
from .tvalues import t_depth1, t_interp_eval, t_nested, t_star

T_LEVEL = (2, 1)


# -- maximal height --------------------------------------------------------------

def maxheight_rhs(level, r_val, D_u: int, D_w: int, P: int = 30, *,
                  _nudge=None) -> TruncatedSeriesUVW:
    """``exp(sum_{n>=2} t(n)/n (alpha_1^n + alpha_2^n - gamma_1^n - gamma_2^n))`` in u, w.

    alpha: sum u, product -r w^2; gamma: sum u, product (1-r) w^2.  Power sums
    of degree n only reach total degree n, so the n-sum stops at D_u + D_w.
    ``_nudge`` multiplies t(2) by (1 + nudge) for negative controls.
    """
    level = as_level(level)
    r = Fraction(r_val)
    bounds = UVWBounds(D_u, 0, D_w)
    u = TruncatedSeriesUVW.monomial(bounds, QQ, 1, 0, 0)
    w2 = TruncatedSeriesUVW.monomial(bounds, QQ, 0, 0, 2)
    n_max = D_u + D_w
    if n_max < 2:
        return TruncatedSeriesUVW.constant(bounds, RealRing(), 1)
    alpha = newton_power_sums(RootPair(u, w2.scale(-r)), n_max)
    gamma = newton_power_sums(RootPair(u, w2.scale(1 - r)), n_max)
    with working_precision(P):
        ring = RealRing(mpf(10) ** (-P + 5))
        exponent = TruncatedSeriesUVW(bounds, ring)
        for n in range(2, n_max + 1):
            tn = t_depth1(level, n, P)
            if n == 2 and _nudge is not None:
                tn = tn * (1 + Fraction(_nudge))
            diff = (alpha[n - 1] - gamma[n - 1]).map(ring.embed, ring)
            exponent = exponent + diff.scale(tn * Fraction(1, n))
        return exp_series(exponent)


def maxheight_lhs(level, r_val, k: int, n: int, P: int = 30, tol=None) -> BigReal:
    """``X_0^r(k, n, n)``: interpolated t-values over indices with every part ≥ 2."""
    with working_precision(P):
        total = BigReal(0)
        for idx in enumerate_indices(k, n, n, True):
            total = total + t_interp_eval(level, idx, r_val, P, tol)
        return total


# -- {2}^n ---------------------------------------------------------------------------

def twos_rhs(level, r_val, n_max: int, P: int = 30) -> TruncatedSeriesZ:
    """``exp(sum_n (r^n - (r-1)^n) t(2n)/n x^n)``; coefficient of x^n pairs with t^r({2}^n).

    The formal variable here plays the role of ``w^2`` in the maximal-height series.
    """
    r = Fraction(r_val)
    with working_precision(P):
        ring = RealRing(mpf(10) ** (-P + 5))
        coeffs = [ring.zero()]
        for n in range(1, n_max + 1):
            weight = (r ** n - (r - 1) ** n) / n
            coeffs.append(t_depth1(level, 2 * n, P) * weight)
        return exp_series(TruncatedSeriesZ(coeffs, ring, n_max))


def twos_lhs(level, r_val, n: int, P: int = 30, tol=None) -> BigReal:
    return t_interp_eval(level, Index((2,) * n), r_val, P, tol)


# -- weighted sum ----------------------------------------------------------------------

def _compositions_min2(total: int):
    if total == 0:
        yield ()
        return
    for first in range(2, total + 1):
        for rest in _compositions_min2(total - first):
            yield (first,) + rest


def weighted_rhs_terms(k: int, a: int) -> list[tuple[Fraction, int, tuple[int, ...]]]:
    """Rational prefactors with their log-2 power and t-arguments n_1..n_m.

    Each term is ``coef * t(2) t(n_1)...t(n_m) log^n 2`` with n_i ≥ 2 an
    ordered tuple (composition) and the 1/m! kept.
    """
    if k < 2 or a < 1:
        raise ValueError("need k ≥ 2 and a ≥ 1")
    out = []
    for n in range(k - 1):
        for parts in _compositions_min2(k - 2 - n):
            m = len(parts)
            coef = Fraction(2 ** (n + 2 * m), a ** k * factorial(n) * factorial(m))
            for ni in parts:
                coef *= Fraction(2 ** (ni - 1) - 1, ni * (2 ** ni - 1))
            out.append((coef, n, parts))
    return out


def weighted_rhs(k: int, a: int, P: int = 30, *, _nudge=None) -> BigReal:
    """Right side of the weighted sum formula, from level-(2,1) depth-one values and log 2."""
    _, log2 = const_pi_log2(P)
    with working_precision(P):
        t = {}

        def tv(n):
            if n not in t:
                t[n] = t_depth1(T_LEVEL, n, P)
                if n == 2 and _nudge is not None:
                    t[n] = t[n] * (1 + Fraction(_nudge))
            return t[n]

        total = BigReal(0)
        for coef, n, parts in weighted_rhs_terms(k, a):
            term = tv(2) * log2 ** n
            for ni in parts:
                term = term * tv(ni)
            total = total + term * coef
        return total


def weighted_lhs(k: int, a: int, r_val, P: int = 30, tol=None) -> BigReal:
    """``sum_n (1-2r)^{k-n-1} 2^{n-1} sum_{I_0(k,n)} t^r_{2a,a}``."""
    r = Fraction(r_val)
    level = (2 * a, a)
    with working_precision(P):
        total = BigReal(0)
        for n in range(1, k):
            inner = BigReal(0)
            for s in range(1, n + 1):
                for idx in enumerate_indices(k, n, s, True):
                    inner = inner + t_interp_eval(level, idx, r, P, tol)
            total = total + inner * ((1 - 2 * r) ** (k - n - 1) * 2 ** (n - 1))
        return total


# -- height one ------------------------------------------------------------------------

def height_one_params(level, m: int, r_val, v) -> PFQParams:
    level = as_level(level)
    N, a = level.N, level.a
    r = mpf(Fraction(r_val).numerator) / Fraction(r_val).denominator
    v = mpf(v)
    b = [mpf(1), (a + v * (1 - r)) / N] + [mpf(a) / N] * (m - 1)
    c = [(a + N - v * r) / N] + [mpf(a + N) / N] * (m - 1)
    return PFQParams(b, c)


def height_one_rhs_value(level, m: int, r_val, v, P: int = 30) -> BigReal:
    """``1/(a^{m-1}(a - v r)) _{m+1}F_m(...; 1)`` at a numeric v."""
    level = as_level(level)
    a = level.a
    with working_precision(P):
        r = mpf(Fraction(r_val).numerator) / Fraction(r_val).denominator
        pref = BigReal(1) / BigReal(mpf(a) ** (m - 1) * (a - mpf(v) * r))
        return pfq_at_1(height_one_params(level, m, r_val, v), P) * pref


def height_one_rhs_coeffs(level, m: int, r_val, n_max: int, P: int = 40,
                          radius=None, nodes: int = 28) -> list[BigReal]:
    """Taylor coefficients of the right side in v, up to v^{n_max - 1}.

    The right side is sampled at Chebyshev points of [-radius, radius]
    (radius defaults to a/4) and interpolated; the monomial coefficients of
    the interpolant approximate the Taylor coefficients.  Each reported error
    combines the propagated sample errors with the change between ``nodes``
    and ``nodes - 4`` interpolation points.
    """
    level = as_level(level)
    rho = mpf(level.a) / 4 if radius is None else mpf(radius)

    def fit(count):
        xs = [rho * cos(pi * (2 * i + 1) / (2 * count)) for i in range(count)]
        samples = [height_one_rhs_value(level, m, r_val, x, P) for x in xs]
        A = matrix(count, count)
        for i, x in enumerate(xs):
            for j in range(count):
                A[i, j] = x ** j
        coeffs = lu_solve(A, matrix([s.value for s in samples]))
        sample_err = max(s.err for s in samples)
        # Lebesgue constant times the largest monomial coefficient of a
        # degree < count polynomial bounded by 1 on [-rho, rho]
        lebesgue = 1 + 2 / pi * log(count)
        amp = [sample_err * lebesgue * (1 + sqrt(2)) ** count / rho ** j for j in range(count)]
        return coeffs, amp

    with working_precision(P):
        hi, amp = fit(nodes)
        lo, _ = fit(nodes - 4)
        return [BigReal(hi[j], abs(hi[j] - lo[j]) + amp[j]) for j in range(n_max)]


def height_one_lhs(level, m: int, r_val, n: int, P: int = 30, tol=None) -> BigReal:
    """``t^r_{N,a}(m, {1}^{n-1})``, the coefficient of v^{n-1} on the left."""
    return t_interp_eval(level, Index((m,) + (1,) * (n - 1)), r_val, P, tol)


# -- Example with k = 3, 4 --------------------------------------------------------------

def example_sides(k: int, star: bool, P: int = 30, tol=None, *, a: int = 1,
                  _nudge=None) -> tuple[BigReal, BigReal]:
    """Worked weight-3/weight-4 instances written out term by term.

    The left side uses level (2a, a); the right side is the level-(2,1)
    expression scaled by a^{-k}.  Star values come from weak-inequality
    summation; the right side uses t(2) and log 2 directly (not the general
    weighted-sum routine).
    """
    if k not in (3, 4):
        raise ValueError("worked examples exist for k = 3 and k = 4")
    if int(a) != a or a < 1:
        raise ValueError(f"a must be a positive integer, got {a!r}")
    level = (2 * a, a)
    _, log2 = const_pi_log2(P)
    with working_precision(P):
        t = (lambda idx: t_star(level, idx, P, tol)) if star else \
            (lambda idx: t_nested(level, idx, P, tol))
        sign = -1 if star else 1
        t2 = t_depth1(T_LEVEL, 2, P)
        if _nudge is not None:
            t2 = t2 * (1 + Fraction(_nudge))
        if k == 3:
            lhs = t((3,)) * sign + t((2, 1)) * 2
            rhs = t2 * log2 * 2
        else:
            lhs = t((4,)) + (t((3, 1)) + t((2, 2))) * (2 * sign) + t((2, 1, 1)) * 4
            rhs = t2 * t2 * Fraction(2, 3) + t2 * log2 * log2 * 2
        return lhs, rhs * Fraction(1, a ** k)

"""Exact layer: the Phi_0^r recurrence and brute-force z-coefficient oracles.

All arithmetic is in QQ[r][[u, v, w]] (and a truncated z-series over that).
Coefficients of z^m u^i v^j w^l in Phi_0^r are compared against finite nested
sums over the defining arithmetic progression.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .index import Index, enumerate_indices, interpolation_expansion
from .rings import QQ, QQ_r, RPolynomial
from .series import TruncatedSeriesUVW, TruncatedSeriesZ, UVWBounds, UVWRing, series_reciprocal

DEFAULT_M_ORACLE = 60


class LevelError(ValueError):
    pass


@dataclass(frozen=True)
class LevelData:
    N: int
    a: int

    def __post_init__(self) -> None:
        if int(self.N) != self.N or self.N < 1:
            raise LevelError(f"level N must be a positive integer, got {self.N!r}")
        if int(self.a) != self.a or not 1 <= self.a <= self.N:
            raise LevelError(f"residue must satisfy 1 ≤ a ≤ N, got a={self.a}, N={self.N}")

    def contains(self, m: int) -> bool:
        return m > 0 and m % self.N == self.a % self.N

    def __str__(self) -> str:
        return f"({self.N},{self.a})"


def as_level(level) -> LevelData:
    return level if isinstance(level, LevelData) else LevelData(*level)


def w_exponent(s: int) -> int:
    """Stored w-exponent of height-``s`` terms in Phi_0^r (w^{2s-2})."""
    return 2 * s - 2


def monomial_for(k: int, n: int, s: int) -> tuple[int, int, int]:
    """(k, n, s) -> exponents (i, j, l) of u^{k-n-s} v^{n-s} w^{2s-2}."""
    return k - n - s, n - s, w_exponent(s)


def weight_depth_height(i: int, j: int, l: int) -> tuple[int, int, int]:
    """Inverse of :func:`monomial_for` for even ``l``."""
    if l % 2:
        raise ValueError("odd w-exponents carry no (k, n, s)")
    s = l // 2 + 1
    n = j + s
    return i + n + s, n, s


def uvw_bounds_for_weight(max_weight: int) -> UVWBounds:
    """Smallest bounds holding every admissible (k, n, s) with k <= max_weight."""
    if max_weight < 2:
        raise ValueError("admissible indices have weight at least 2")
    d = max_weight - 2
    return UVWBounds(d, d, 2 * (max_weight // 2) - 2, d)


@dataclass
class Phi0Solution:
    level: LevelData
    series: TruncatedSeriesZ
    bounds: UVWBounds
    M: int = field(init=False)

    def __post_init__(self) -> None:
        self.M = self.series.order

    def coefficient(self, m: int, k: int, n: int, s: int) -> RPolynomial:
        """Coefficient of z^m u^{k-n-s} v^{n-s} w^{2s-2}, an element of QQ[r]."""
        i, j, l = monomial_for(k, n, s)
        if min(i, j, l) < 0:
            return QQ_r.zero()
        return self.series[m][(i, j, l)]


def _phi0_ring(bounds: UVWBounds):
    R = UVWRing(bounds, QQ_r)
    u, v, w = R.gen("u"), R.gen("v"), R.gen("w")
    r = R.embed(QQ_r.gen())
    return R, u, v, w, r


def solve_phi0(level, M: int, D_u: int, D_v: int, D_w: int, total: int | None = None,
               *, _perturb: Fraction | None = None) -> Phi0Solution:
    """Solve for Phi_0^r through z^M by the coefficient recurrence.

    ``p_a`` is the reciprocal of ``a(a-u-vr) + r(uv-w^2)`` and
    ``p_{n+N} = num(n) p_n / den(n+N)`` with
    ``num(n) = n(n-u+v-vr) - (1-r)(uv-w^2)``, ``den(m) = m(m-u-vr) + r(uv-w^2)``.
    All other coefficients vanish.  ``_perturb`` adds a rational to the
    first numerator and exists only for negative-control checks.
    """
    level = as_level(level)
    N, a = level.N, level.a
    if M < a:
        raise ValueError(f"need M ≥ a, got M={M}, a={a}")
    bounds = UVWBounds(D_u, D_v, D_w, total)
    R, u, v, w, r = _phi0_ring(bounds)
    q = u * v - w * w
    one = R.one()

    def den(m: int):
        return (one.scale(m) - u - v * r).scale(m) + r * q

    def num(n: int):
        return (one.scale(n) - u + v - v * r).scale(n) - (one - r) * q

    coeffs = [R.zero() for _ in range(M + 1)]
    coeffs[a] = series_reciprocal(den(a))
    n = a
    while n + N <= M:
        factor = num(n)
        if _perturb is not None and n == a:
            factor = factor + R.embed(_perturb)
        coeffs[n + N] = factor * coeffs[n] * series_reciprocal(den(n + N))
        n += N
    return Phi0Solution(level, TruncatedSeriesZ(coeffs, R, M), bounds)


# -- brute-force oracles ------------------------------------------------------

@lru_cache(maxsize=4096)
def _zcoeff_table(N: int, a: int, parts: tuple[int, ...], m_max: int) -> tuple[Fraction, ...]:
    """Coefficients of z^0..z^m_max in L_{N,a}(parts; z).

    Entry m is ``m^{-k_1}`` times the finite sum over m > m_2 > ... > m_n > 0
    in the progression, accumulated as exact prefix sums of the suffix table.
    """
    table = [Fraction(0)] * (m_max + 1)
    if len(parts) == 1:
        inner = None
    else:
        inner = _zcoeff_table(N, a, parts[1:], m_max)
    k1 = parts[0]
    prefix = Fraction(0)
    for m in range(1, m_max + 1):
        if m % N == a % N:
            if inner is None:
                table[m] = Fraction(1, m ** k1)
            else:
                table[m] = prefix / m ** k1
        if inner is not None:
            prefix += inner[m]
    return tuple(table)


def _check_m(m: int, m_max: int | None) -> int:
    if m < 0:
        raise ValueError("z-order must be nonnegative")
    limit = DEFAULT_M_ORACLE if m_max is None else m_max
    if m > limit:
        raise ValueError(f"z-order {m} exceeds oracle cap {limit}")
    return limit


def bruteforce_zcoeff(level, k, m: int, m_max: int | None = None) -> Fraction:
    """Coefficient of z^m in L_{N,a}(k; z) by finite nested summation."""
    level = as_level(level)
    k = k if isinstance(k, Index) else Index(tuple(k))
    if k.depth == 0:
        raise ValueError("bruteforce_zcoeff needs a nonempty index")
    limit = max(_check_m(m, m_max), m)
    if m == 0:
        return Fraction(0)
    return _zcoeff_table(level.N, level.a, k.parts, limit)[m]


def bruteforce_interp_zcoeff(level, k, m: int, m_max: int | None = None) -> RPolynomial:
    """Coefficient of z^m in L^r_{N,a}(k; z) as a polynomial in r."""
    k = k if isinstance(k, Index) else Index(tuple(k))
    out = [Fraction(0)] * k.depth
    for term in interpolation_expansion(k):
        out[term.r_exponent] += bruteforce_zcoeff(level, term.index, m, m_max)
    return RPolynomial(out)


def bruteforce_X_zcoeff(level, k: int, n: int, s: int, m: int, admissible_only: bool = True,
                        m_max: int | None = None, *, _drop: int | None = None) -> RPolynomial:
    """Coefficient of z^m in X^r(k,n,s; z) (or X_0^r when ``admissible_only``).

    ``_drop`` omits one enumerated index; it exists for negative controls.
    """
    if (k, n, s) == (0, 0, 0):
        return QQ_r.one() if m == 0 else QQ_r.zero()
    total = QQ_r.zero()
    for pos, idx in enumerate(enumerate_indices(k, n, s, admissible_only)):
        if pos == _drop:
            continue
        total = total + bruteforce_interp_zcoeff(level, idx, m, m_max)
    return total


def ode_residual(sol: Phi0Solution) -> TruncatedSeriesZ:
    """Left side of the Phi_0^r differential equation minus z^a.

    Built from z d/dz applied to the truncated series, so every coefficient
    up to the truncation order is meaningful; callers inspect orders up to
    ``M - N``.
    """
    R = sol.series.ring
    _, u, v, w, r = _phi0_ring(sol.bounds)
    N, a, M = sol.level.N, sol.level.a, sol.M
    one = R.one()
    phi = sol.series
    d1 = phi.theta()                 # z Phi'
    d2 = d1.theta() - d1             # z^2 Phi''
    q = u * v - w * w
    lhs = (d2 - d2.shift(N)
           + (d1 - d1.shift(N)) * (one - u)
           - (d1 * r + d1.shift(N) * (one - r)) * v
           + (phi * r + phi.shift(N) * (one - r)) * q)
    return lhs - TruncatedSeriesZ.monomial(M, R, a, one)


def residual_window(sol: Phi0Solution) -> int:
    return sol.M - sol.level.N


class RecurrenceResidual(NamedTuple):
    dX0: RPolynomial | None
    dXX0: RPolynomial | None


def in_region_dX0(k: int, n: int, s: int) -> bool:
    return k >= n + s and n >= s >= 1


def in_region_dXX0(k: int, n: int, s: int) -> bool:
    return k >= n + s and n >= s >= 0 and n >= 2


def recurrence_residual(level, k: int, n: int, s: int, m: int,
                        m_max: int | None = None, *, _bump: bool = False) -> RecurrenceResidual:
    """Residuals of both derivative relations at the coefficient of z^{m-1}.

    A relation whose parameter region excludes (k, n, s) yields ``None``;
    if both are excluded a ValueError is raised.  ``_bump`` adds 1 to one
    oracle term (negative control).
    """
    level = as_level(level)
    if m < 1:
        raise ValueError("derivative relations are compared at z^{m-1}, m ≥ 1")
    r1 = in_region_dX0(k, n, s)
    r2 = in_region_dXX0(k, n, s)
    if not (r1 or r2):
        raise ValueError(f"(k,n,s)=({k},{n},{s}) lies outside both relation regions")

    def X(kk, nn, ss, mm, adm):
        if min(kk, nn, ss) < 0 or mm < 0:
            return QQ_r.zero()
        return bruteforce_X_zcoeff(level, kk, nn, ss, mm, adm, m_max)

    res1 = res2 = None
    if r1:
        lhs = X(k, n, s, m, True) * m
        if _bump:
            lhs = lhs + 1
        rhs = X(k - 1, n, s - 1, m, False) + X(k - 1, n, s, m, True) - X(k - 1, n, s - 1, m, True)
        res1 = lhs - rhs
    if r2:
        lhs = (X(k, n, s, m, False) - X(k, n, s, m, True)) * m
        rhs = X(k - 1, n - 1, s, m, False) * QQ_r.gen()
        j = m - level.N
        while j >= 0:
            rhs = rhs + X(k - 1, n - 1, s, j, False)
            j -= level.N
        res2 = lhs - rhs
    return RecurrenceResidual(res1, res2)


@lru_cache(maxsize=4096)
def _star_zcoeff_table(N: int, a: int, parts: tuple[int, ...], m_max: int) -> tuple[Fraction, ...]:
    """Like :func:`_zcoeff_table` with weak inequalities m_1 ≥ m_2 ≥ ... ≥ m_n."""
    table = [Fraction(0)] * (m_max + 1)
    inner = _star_zcoeff_table(N, a, parts[1:], m_max) if len(parts) > 1 else None
    prefix = Fraction(0)
    for m in range(1, m_max + 1):
        if inner is not None:
            prefix += inner[m]
        if m % N == a % N:
            table[m] = Fraction(1, m ** parts[0]) * (1 if inner is None else prefix)
    return tuple(table)


def bruteforce_star_zcoeff(level, k, m: int, m_max: int | None = None) -> Fraction:
    """Coefficient of z^m in the star series (weak inequalities), summed directly."""
    level = as_level(level)
    k = k if isinstance(k, Index) else Index(tuple(k))
    if k.depth == 0:
        raise ValueError("bruteforce_star_zcoeff needs a nonempty index")
    limit = _check_m(m, m_max)
    if m == 0:
        return Fraction(0)
    return _star_zcoeff_table(level.N, level.a, k.parts, limit)[m]


def oracle_table(sol: Phi0Solution, max_weight: int, *, as_text: bool = True,
                 _drop: int | None = None) -> list[dict]:
    """Compare every stored coefficient of ``sol`` with the brute-force X_0^r sums.

    Rows follow ``{level, k, n, s, m, lhs, rhs, equal}``; coefficients at odd
    powers of w (no admissible index) are compared with zero and reported
    with ``k = n = s = None``.  With ``as_text=False`` the two sides stay
    polynomials instead of strings.
    """
    rows = []
    m_max = max(sol.M, DEFAULT_M_ORACLE)
    zero = QQ_r.zero()
    for m in range(sol.M + 1):
        coeff = sol.series[m]
        for (i, j, l) in _uvw_triples(sol.bounds):
            lhs = coeff[(i, j, l)]
            if l % 2:
                rhs, kns = zero, (None, None, None)
            else:
                kns = weight_depth_height(i, j, l)
                if kns[0] > max_weight:
                    continue
                rhs = bruteforce_X_zcoeff(sol.level, *kns, m, True, m_max, _drop=_drop)
            rows.append({"level": [sol.level.N, sol.level.a], "k": kns[0], "n": kns[1],
                         "s": kns[2], "m": m,
                         "lhs": str(lhs) if as_text else lhs,
                         "rhs": str(rhs) if as_text else rhs,
                         "equal": lhs == rhs})
    return rows


def _uvw_triples(bounds: UVWBounds):
    from .series import _layout
    return _layout(bounds)[0]

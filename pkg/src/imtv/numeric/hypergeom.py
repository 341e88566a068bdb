"""Generalized hypergeometric series _{m+1}F_m evaluated at 1."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from mpmath import mp, mpf

from .bigreal import BigReal, to_mpf, working_precision
from .tails import power_tail


class DivergentSeries(ValueError):
    pass


@dataclass(frozen=True)
class PFQParams:
    """Numerator parameters b_1..b_{m+1} and denominator parameters c_1..c_m."""

    b: tuple
    c: tuple

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.b) != len(self.c) + 1:
            raise ValueError(f"need m+1 numerator and m denominator parameters, "
                             f"got {len(self.b)} and {len(self.c)}")
        for ci in self.c:
            x = to_mpf(ci)
            if x <= 0 and x == int(x):
                raise ValueError(f"denominator parameter {ci} is zero or a negative integer")

    def excess(self) -> mpf:
        """``sum c - sum b``; the series converges at 1 iff this is positive."""
        return mp.fsum(to_mpf(x) for x in self.c) - mp.fsum(to_mpf(x) for x in self.b)


def pfq_terms_exact(params: PFQParams, n_max: int) -> list[Fraction]:
    """Terms T_0..T_{n_max} at z = 1 in exact rationals (parameters must be rational)."""
    b = [Fraction(x) for x in params.b]
    c = [Fraction(x) for x in params.c]
    terms = [Fraction(1)]
    for n in range(n_max):
        num, den = Fraction(1), Fraction(n + 1)
        for x in b:
            num *= x + n
        for x in c:
            den *= x + n
        terms.append(terms[-1] * num / den)
    return terms


def _log_ratio_coeffs(b, c, order: int) -> list[mpf]:
    """rho_s with log(T_{n+1}/T_n) = sum_s rho_s n^{-s}."""
    rho = [mpf(0)]
    for s in range(1, order + 1):
        power_sum = mp.fsum(x ** s for x in b) - mp.fsum(x ** s for x in c) - 1
        rho.append(mpf((-1) ** (s + 1)) / s * power_sum)
    return rho


def _tail_expansion(b, c, order: int) -> tuple[mpf, list[mpf]]:
    """Decay exponent sigma and e_j with T_n ∝ n^{-sigma} sum_j e_j n^{-j}."""
    rho = _log_ratio_coeffs(b, c, order + 1)
    sigma = -rho[1]
    d = [mpf(0)] * (order + 1)
    for s in range(2, order + 2):
        rhs = rho[s] + sigma * mpf((-1) ** (s + 1)) / s
        # phi(n+1) - phi(n) contributes sum_j d_j binom(-j, s-j) n^{-s}
        for j in range(1, s - 1):
            rhs -= d[j] * (-1) ** (s - j) * comb(s - 1, s - j)
        d[s - 1] = -rhs / (s - 1)
    e = [mpf(1)] + [mpf(0)] * order
    for j in range(1, order + 1):
        e[j] = mp.fsum(i * d[i] * e[j - i] for i in range(1, j + 1)) / j
    return sigma, e


def pfq_at_1(params: PFQParams, P: int = 30, tol=None, *, n_direct: int | None = None,
             order: int | None = None) -> BigReal:
    """Sum of the series at z = 1 with a certified asymptotic tail.

    The first ``n_direct`` terms are summed by the exact term recursion.  The
    remaining terms follow ``T_n ~ K n^{-sigma} sum_j e_j n^{-j}`` where
    ``sigma = 1 + sum c - sum b``; the e_j come from the formal expansion of
    the term ratio and K from matching T at the cutoff.  Tails of pure powers
    are summed by Euler–Maclaurin.  The bound is four times the first omitted
    tail term.
    """
    with working_precision(P):
        if params.excess() <= 0:
            raise DivergentSeries("series diverges at 1: sum c - sum b must be positive")
        b = [to_mpf(x) for x in params.b]
        c = [to_mpf(x) for x in params.c]
        scale = max([abs(x) for x in b + c] + [mpf(1)])
        M = n_direct or int(max(200, 4 * mp.dps) * max(1, float(scale)))
        total, T = mpf(0), mpf(1)
        for n in range(M):
            total += T
            ratio = mpf(1) / (n + 1)
            for x in b:
                ratio *= x + n
            for x in c:
                ratio /= x + n
            T *= ratio
            if T == 0:
                return BigReal(total, (n + 1) * abs(total) * mpf(10) ** (1 - mp.dps))
        J = order or max(8, int(mp.dps / max(1.0, float(mp.log10(M / scale)))) + 6)
        sigma, e = _tail_expansion(b, c, J + 1)
        Mf = mpf(M)
        shape = mp.fsum(e[j] * Mf ** (-j) for j in range(J + 1))
        K = T * Mf ** sigma / shape
        tail = BigReal(0)
        for j in range(J + 1):
            tail = tail + power_tail(sigma + j, M) * (K * e[j])
        omitted = abs(K * e[J + 1]) * power_tail(sigma + J + 1, M).value
        rounding = M * abs(total) * mpf(10) ** (1 - mp.dps)
        out = BigReal(total, rounding) + tail
        out = BigReal(out.value, out.err + 4 * omitted)
        if tol is not None and out.err > mpf(tol):
            raise ArithmeticError(f"pFq error bound {mp.nstr(out.err, 3)} exceeds tol {tol}")
        return out

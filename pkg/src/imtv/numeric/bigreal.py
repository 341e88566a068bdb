"""Arbitrary-precision reals carrying an explicit absolute error bound."""

from __future__ import annotations

from contextlib import contextmanager
from fractions import Fraction
from numbers import Rational

from mpmath import mp, mpf

GUARD_DIGITS = 15


@contextmanager
def working_precision(P: int):
    """Run numeric code at ``P`` decimal digits plus guard digits."""
    with mp.workdps(P + GUARD_DIGITS):
        yield


def _ulp(x) -> mpf:
    return abs(x) * mpf(10) ** (1 - mp.dps)


def to_mpf(x) -> mpf:
    if isinstance(x, BigReal):
        return x.value
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    return mpf(x)


class BigReal:
    """``value ± err`` with err propagated conservatively through arithmetic.

    Every operation also charges one unit of rounding at the current mpmath
    precision, so mixing in a low-precision context widens the bound.
    """

    __slots__ = ("value", "err")

    def __init__(self, value, err=0):
        if isinstance(value, Fraction):
            v = mpf(value.numerator) / value.denominator
            self.value = v
            self.err = mpf(err) + (0 if value.denominator == 1 else _ulp(v))
        else:
            self.value = mpf(value)
            self.err = mpf(err)
        if self.err < 0:
            raise ValueError("error bound must be nonnegative")

    @staticmethod
    def _lift(x) -> "BigReal":
        if isinstance(x, BigReal):
            return x
        if isinstance(x, (int, Rational)):
            return BigReal(Fraction(x))
        return BigReal(x)

    def __add__(self, other):
        o = BigReal._lift(other)
        v = self.value + o.value
        return BigReal(v, self.err + o.err + _ulp(v))

    __radd__ = __add__

    def __neg__(self):
        return BigReal(-self.value, self.err)

    def __sub__(self, other):
        o = BigReal._lift(other)
        v = self.value - o.value
        return BigReal(v, self.err + o.err + _ulp(v))

    def __rsub__(self, other):
        return BigReal._lift(other) - self

    def __mul__(self, other):
        o = BigReal._lift(other)
        v = self.value * o.value
        err = abs(self.value) * o.err + abs(o.value) * self.err + self.err * o.err
        return BigReal(v, err + _ulp(v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = BigReal._lift(other)
        lo = abs(o.value) - o.err
        if lo <= 0:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / o.value
        err = (self.err + abs(v) * o.err) / lo
        return BigReal(v, err + _ulp(v))

    def __rtruediv__(self, other):
        return BigReal._lift(other) / self

    def __pow__(self, n: int):
        if int(n) != n or n < 0:
            raise ValueError("only nonnegative integer powers")
        acc = BigReal(1)
        for _ in range(int(n)):
            acc = acc * self
        return acc

    def __abs__(self):
        return BigReal(abs(self.value), self.err)

    def contains(self, x) -> bool:
        return abs(to_mpf(x) - self.value) <= self.err

    def close_to(self, other, tol=0) -> bool:
        o = BigReal._lift(other)
        return abs(self.value - o.value) <= mpf(tol) + self.err + o.err

    def __float__(self) -> float:
        return float(self.value)

    def __eq__(self, other) -> bool:
        try:
            o = BigReal._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.value == o.value and self.err == o.err

    __hash__ = None

    def digits(self, n: int | None = None) -> str:
        return mp.nstr(self.value, n or mp.dps, strip_zeros=False)

    def __str__(self) -> str:
        return f"{mp.nstr(self.value, max(mp.dps - GUARD_DIGITS, 15))} ± {mp.nstr(self.err, 3)}"

    def __repr__(self) -> str:
        return f"BigReal({mp.nstr(self.value, 20)}, err={mp.nstr(self.err, 3)})"


class RealRing:
    """Coefficient ring of :class:`BigReal` with approximate equality.

    Two elements are equal when their values differ by at most
    ``tol`` plus both error bounds.
    """

    name = "RR"

    def __init__(self, tol=mpf("1e-20")):
        self.tol = mpf(tol)

    def zero(self) -> BigReal:
        return BigReal(0)

    def one(self) -> BigReal:
        return BigReal(1)

    def embed(self, q) -> BigReal:
        return BigReal._lift(q)

    def eq(self, x, y) -> bool:
        return BigReal._lift(x).close_to(y, self.tol)

    def is_zero(self, x) -> bool:
        return x.value == 0 and x.err == 0

    def inverse(self, x) -> BigReal:
        return BigReal(1) / x

    def to_str(self, x) -> str:
        return mp.nstr(x.value, max(mp.dps - GUARD_DIGITS, 15))

    def __repr__(self) -> str:
        return f"RealRing(tol={mp.nstr(self.tol, 3)})"

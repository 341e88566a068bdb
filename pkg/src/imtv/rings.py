"""Coefficient rings: exact rationals, polynomials in r, and error-tracked reals.

A ring object supplies ``zero``, ``one``, ``embed`` (rationals into the ring),
``eq`` and ``is_zero``; elements themselves support ``+``, ``-``, ``*`` and
unary minus.  Series types are parametrised by one of these ring objects.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Any, Sequence


class RingError(ValueError):
    pass


class Rationals:
    """The field of rationals, elements are :class:`fractions.Fraction`."""

    name = "QQ"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def embed(self, q) -> Fraction:
        return Fraction(q)

    def eq(self, x, y) -> bool:
        return x == y

    def is_zero(self, x) -> bool:
        return x == 0

    def inverse(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("zero is not invertible")
        return 1 / Fraction(x)

    def to_str(self, x) -> str:
        return str(Fraction(x))

    def __repr__(self) -> str:
        return "QQ"


QQ = Rationals()


def _strip(coeffs: list, ring) -> tuple:
    while coeffs and ring.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


class RPolynomial:
    """Dense polynomial ``c_0 + c_1 r + ... + c_d r^d`` over a base ring.

    Stored canonically: no trailing zero coefficients, so the zero polynomial
    has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Sequence = (), ring=QQ):
        self.ring = ring
        self.coeffs = _strip([ring.embed(c) if isinstance(c, (int, Rational)) else c
                              for c in coeffs], ring)

    @classmethod
    def _raw(cls, coeffs: tuple, ring) -> "RPolynomial":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.coeffs = coeffs
        return obj

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def _coerce(self, other) -> "RPolynomial":
        if isinstance(other, RPolynomial):
            if other.ring is not self.ring:
                raise RingError("mixing polynomials over different rings")
            return other
        return RPolynomial((other,), self.ring)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return RPolynomial._raw(_strip(out, self.ring), self.ring)

    __radd__ = __add__

    def __neg__(self):
        return RPolynomial._raw(tuple(-c for c in self.coeffs), self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, RPolynomial):
            if isinstance(other, (int, Rational)):
                if other == 0:
                    return RPolynomial._raw((), self.ring)
                return RPolynomial._raw(tuple(c * other for c in self.coeffs), self.ring)
            other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RPolynomial._raw((), self.ring)
        out = [self.ring.zero()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if self.ring.is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return RPolynomial._raw(_strip(out, self.ring), self.ring)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        try:
            other = self._coerce(other)
        except RingError:
            return NotImplemented
        if len(self.coeffs) != len(other.coeffs):
            return False
        return all(self.ring.eq(x, y) for x, y in zip(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, r):
        """Evaluate at ``r`` by Horner's rule."""
        acc = self.ring.zero()
        for c in reversed(self.coeffs):
            acc = acc * r + c
        return acc

    def coefficient(self, e: int):
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else self.ring.zero()

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        out = []
        for e, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            s = self.ring.to_str(c)
            if e == 0:
                out.append(s)
            else:
                mono = "r" if e == 1 else f"r^{e}"
                out.append(mono if s == "1" else f"-{mono}" if s == "-1" else f"{s}*{mono}")
        text = " + ".join(out)
        return text.replace("+ -", "- ")

    __repr__ = __str__


class RPolyRing:
    """Ring of polynomials in ``r`` over ``base``, optionally degree bounded.

    The degree bound is a guard, not a truncation: exceeding it raises.
    """

    def __init__(self, base=QQ, max_degree: int | None = None):
        self.base = base
        self.max_degree = max_degree
        self.name = f"{base.name}[r]"

    def _check(self, p: RPolynomial) -> RPolynomial:
        if self.max_degree is not None and p.degree > self.max_degree:
            raise RingError(f"r-degree {p.degree} exceeds bound {self.max_degree}")
        return p

    def zero(self) -> RPolynomial:
        return RPolynomial._raw((), self.base)

    def one(self) -> RPolynomial:
        return RPolynomial((self.base.one(),), self.base)

    def gen(self) -> RPolynomial:
        return RPolynomial((self.base.zero(), self.base.one()), self.base)

    def embed(self, q) -> RPolynomial:
        if isinstance(q, RPolynomial):
            return self._check(q)
        return RPolynomial((self.base.embed(q),), self.base)

    def eq(self, x: RPolynomial, y: RPolynomial) -> bool:
        return x == y

    def is_zero(self, x: RPolynomial) -> bool:
        return x.is_zero()

    def inverse(self, x: RPolynomial) -> RPolynomial:
        if x.degree != 0:
            raise ZeroDivisionError(f"{x} is not a unit in {self.name}")
        return RPolynomial((self.base.inverse(x.coeffs[0]),), self.base)

    def to_str(self, x: RPolynomial) -> str:
        return str(x)

    def __repr__(self) -> str:
        return self.name


QQ_r = RPolyRing(QQ)


def as_rational(x: Any) -> Fraction:
    """Parse ``"p/q"``, decimals or numbers into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)

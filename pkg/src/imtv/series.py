"""Truncated power series in (u, v, w) and in z over an abstract coefficient ring.

Truncation bounds are part of a series' identity: arithmetic between series
with different bounds raises :class:`BoundMismatch` instead of silently
re-truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from numbers import Rational
from typing import Iterator, NamedTuple

from .rings import QQ


class BoundMismatch(ValueError):
    pass


class SeriesError(ValueError):
    pass


class UVWBounds(NamedTuple):
    """Box bounds on the exponents of u, v, w plus an optional cap on i + j + l."""

    du: int
    dv: int
    dw: int
    total: int | None = None

    def admits(self, i: int, j: int, l: int) -> bool:
        return (i <= self.du and j <= self.dv and l <= self.dw
                and (self.total is None or i + j + l <= self.total))


@lru_cache(maxsize=None)
def _layout(bounds: UVWBounds):
    triples = [(i, j, l)
               for i in range(bounds.du + 1)
               for j in range(bounds.dv + 1)
               for l in range(bounds.dw + 1)
               if bounds.admits(i, j, l)]
    pos = {t: p for p, t in enumerate(triples)}
    return tuple(triples), pos


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Rational))


class TruncatedSeriesUVW:
    """Dense truncated series ``sum c[i,j,l] u^i v^j w^l``.

    Only exponent triples admitted by ``bounds`` are stored.
    """

    __slots__ = ("ring", "bounds", "data")

    def __init__(self, bounds: UVWBounds, ring=QQ, terms: dict | None = None):
        if not isinstance(bounds, UVWBounds):
            bounds = UVWBounds(*bounds)
        if min(bounds[:3]) < 0:
            raise SeriesError("truncation bounds must be nonnegative")
        self.ring = ring
        self.bounds = bounds
        triples, pos = _layout(bounds)
        self.data = [ring.zero()] * len(triples)
        for t, c in (terms or {}).items():
            if t in pos:
                self.data[pos[t]] = self.data[pos[t]] + (ring.embed(c) if _is_scalar(c) else c)

    @classmethod
    def _from_data(cls, bounds, ring, data) -> "TruncatedSeriesUVW":
        obj = cls.__new__(cls)
        obj.ring, obj.bounds, obj.data = ring, bounds, data
        return obj

    @classmethod
    def monomial(cls, bounds, ring, i=0, j=0, l=0, coeff=1) -> "TruncatedSeriesUVW":
        return cls(bounds, ring, {(i, j, l): coeff})

    @classmethod
    def constant(cls, bounds, ring, c) -> "TruncatedSeriesUVW":
        return cls(bounds, ring, {(0, 0, 0): c})

    # -- access -----------------------------------------------------------
    def __getitem__(self, key: tuple[int, int, int]):
        _, pos = _layout(self.bounds)
        if key not in pos:
            i, j, l = key
            if min(key) < 0 or self.bounds.admits(i, j, l):
                return self.ring.zero()
            raise SeriesError(f"exponent {key} lies beyond truncation bounds {self.bounds}")
        return self.data[pos[key]]

    def items(self) -> Iterator[tuple[tuple[int, int, int], object]]:
        """Nonzero coefficients in storage order."""
        triples, _ = _layout(self.bounds)
        for t, c in zip(triples, self.data):
            if not self.ring.is_zero(c):
                yield t, c

    def constant_term(self):
        return self.data[0]

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.data)

    def map(self, fn, ring=None) -> "TruncatedSeriesUVW":
        """Apply ``fn`` to every coefficient, optionally landing in another ring."""
        ring = ring or self.ring
        return TruncatedSeriesUVW._from_data(self.bounds, ring, [fn(c) for c in self.data])

    # -- arithmetic -------------------------------------------------------
    def _check(self, other: "TruncatedSeriesUVW") -> None:
        if other.bounds != self.bounds:
            raise BoundMismatch(f"bounds {self.bounds} vs {other.bounds}")
        if other.ring is not self.ring:
            raise BoundMismatch(f"rings {self.ring!r} vs {other.ring!r}")

    def _lift(self, other) -> "TruncatedSeriesUVW":
        if isinstance(other, TruncatedSeriesUVW):
            self._check(other)
            return other
        return TruncatedSeriesUVW.constant(self.bounds, self.ring, other)

    def __add__(self, other):
        other = self._lift(other)
        return TruncatedSeriesUVW._from_data(
            self.bounds, self.ring, [x + y for x, y in zip(self.data, other.data)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeriesUVW._from_data(self.bounds, self.ring, [-x for x in self.data])

    def __sub__(self, other):
        other = self._lift(other)
        return TruncatedSeriesUVW._from_data(
            self.bounds, self.ring, [x - y for x, y in zip(self.data, other.data)])

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "TruncatedSeriesUVW":
        if _is_scalar(c):
            c = self.ring.embed(c)
        return TruncatedSeriesUVW._from_data(self.bounds, self.ring, [x * c for x in self.data])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeriesUVW):
            return self.scale(other)
        self._check(other)
        b = self.bounds
        triples, pos = _layout(b)
        out = [self.ring.zero()] * len(triples)
        right = sorted(other.items(), key=lambda tc: sum(tc[0]))
        for (i, j, l), x in self.items():
            for (i2, j2, l2), y in right:
                I, J, L = i + i2, j + j2, l + l2
                if b.total is not None and I + J + L > b.total:
                    break
                if I > b.du or J > b.dv or L > b.dw:
                    continue
                p = pos[(I, J, L)]
                out[p] = out[p] + x * y
        return TruncatedSeriesUVW._from_data(b, self.ring, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            return series_reciprocal(self) ** (-n)
        acc = TruncatedSeriesUVW.constant(self.bounds, self.ring, self.ring.one())
        for _ in range(n):
            acc = acc * self
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeriesUVW):
            other = self._lift(other)
        if other.bounds != self.bounds:
            return False
        return all(self.ring.eq(x, y) for x, y in zip(self.data, other.data))

    __hash__ = None

    def __str__(self) -> str:
        terms = [f"({self.ring.to_str(c)})*{_pretty_monomial(t)}" if t != (0, 0, 0)
                 else f"({self.ring.to_str(c)})" for t, c in self.items()]
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


def monomial_name(t: tuple[int, int, int]) -> str:
    return " ".join(f"{v}^{e}" for v, e in zip("uvw", t))


def _pretty_monomial(t: tuple[int, int, int]) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip("uvw", t) if e)


class UVWRing:
    """Ring whose elements are :class:`TruncatedSeriesUVW` with fixed bounds."""

    def __init__(self, bounds: UVWBounds, base=QQ):
        self.bounds = bounds if isinstance(bounds, UVWBounds) else UVWBounds(*bounds)
        self.base = base
        self.name = f"{base.name}[[u,v,w]]"

    def zero(self):
        return TruncatedSeriesUVW(self.bounds, self.base)

    def one(self):
        return TruncatedSeriesUVW.constant(self.bounds, self.base, self.base.one())

    def embed(self, q):
        if isinstance(q, TruncatedSeriesUVW):
            return q
        return TruncatedSeriesUVW.constant(
            self.bounds, self.base, self.base.embed(q) if _is_scalar(q) else q)

    def gen(self, name: str, power: int = 1, coeff=1):
        i, j, l = (power if name == v else 0 for v in "uvw")
        return TruncatedSeriesUVW.monomial(self.bounds, self.base, i, j, l, coeff)

    def eq(self, x, y) -> bool:
        return x == y

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def inverse(self, x):
        return series_reciprocal(x)

    def to_str(self, x) -> str:
        return str(x)

    def __repr__(self) -> str:
        return f"UVWRing({self.bounds}, {self.base!r})"


class TruncatedSeriesZ:
    """Univariate truncated series ``p_0 + p_1 z + ... + p_M z^M``."""

    __slots__ = ("ring", "order", "coeffs")

    def __init__(self, coeffs, ring=QQ, order: int | None = None):
        coeffs = [ring.embed(c) if _is_scalar(c) else c for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("series order must be nonnegative")
        if len(coeffs) > order + 1:
            raise SeriesError(f"{len(coeffs)} coefficients exceed order {order}")
        self.ring = ring
        self.order = order
        self.coeffs = coeffs + [ring.zero()] * (order + 1 - len(coeffs))

    @classmethod
    def zero(cls, order: int, ring=QQ) -> "TruncatedSeriesZ":
        return cls([], ring, order)

    @classmethod
    def monomial(cls, order: int, ring, m: int, coeff=1) -> "TruncatedSeriesZ":
        out = cls.zero(order, ring)
        if m <= order:
            out.coeffs[m] = ring.embed(coeff) if _is_scalar(coeff) else coeff
        return out

    def __getitem__(self, m: int):
        if m < 0:
            return self.ring.zero()
        if m > self.order:
            raise SeriesError(f"z^{m} lies beyond truncation order {self.order}")
        return self.coeffs[m]

    def __len__(self) -> int:
        return self.order + 1

    def constant_term(self):
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(c) for c in self.coeffs)

    def _check(self, other: "TruncatedSeriesZ") -> None:
        if other.order != self.order:
            raise BoundMismatch(f"orders {self.order} vs {other.order}")
        if other.ring is not self.ring:
            raise BoundMismatch(f"rings {self.ring!r} vs {other.ring!r}")

    def _lift(self, other) -> "TruncatedSeriesZ":
        if isinstance(other, TruncatedSeriesZ):
            self._check(other)
            return other
        return TruncatedSeriesZ.monomial(self.order, self.ring, 0, other)

    def _new(self, coeffs) -> "TruncatedSeriesZ":
        obj = TruncatedSeriesZ.__new__(TruncatedSeriesZ)
        obj.ring, obj.order, obj.coeffs = self.ring, self.order, coeffs
        return obj

    def __add__(self, other):
        other = self._lift(other)
        return self._new([x + y for x, y in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return self._new([-x for x in self.coeffs])

    def __sub__(self, other):
        other = self._lift(other)
        return self._new([x - y for x, y in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "TruncatedSeriesZ":
        if _is_scalar(c):
            c = self.ring.embed(c)
        return self._new([x * c for x in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeriesZ):
            return self.scale(other)
        self._check(other)
        M = self.order
        out = [self.ring.zero()] * (M + 1)
        right = [(j, y) for j, y in enumerate(other.coeffs) if not self.ring.is_zero(y)]
        for i, x in enumerate(self.coeffs):
            if self.ring.is_zero(x):
                continue
            for j, y in right:
                if i + j > M:
                    break
                out[i + j] = out[i + j] + x * y
        return self._new(out)

    def __rmul__(self, other):
        return self.scale(other)

    def derivative(self) -> "TruncatedSeriesZ":
        """d/dz; the top coefficient becomes unknown and is dropped (order - 1)."""
        if self.order == 0:
            raise SeriesError("cannot differentiate an order-0 series")
        return TruncatedSeriesZ([self.coeffs[m + 1] * (m + 1) for m in range(self.order)],
                                self.ring, self.order - 1)

    def theta(self) -> "TruncatedSeriesZ":
        """Euler operator z d/dz, which keeps the truncation order."""
        return self._new([c * m for m, c in enumerate(self.coeffs)])

    def shift(self, k: int) -> "TruncatedSeriesZ":
        """Multiply by z^k (k >= 0), truncating at the same order."""
        if k < 0:
            raise SeriesError("negative shifts are not series operations")
        zero = self.ring.zero()
        return self._new([zero] * min(k, self.order + 1) + self.coeffs[: max(self.order + 1 - k, 0)])

    def truncate(self, order: int) -> "TruncatedSeriesZ":
        if order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeriesZ(self.coeffs[: order + 1], self.ring, order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeriesZ):
            other = self._lift(other)
        if other.order != self.order:
            return False
        return all(self.ring.eq(x, y) for x, y in zip(self.coeffs, other.coeffs))

    __hash__ = None

    def __str__(self) -> str:
        terms = [f"({self.ring.to_str(c)})*z^{m}" for m, c in enumerate(self.coeffs)
                 if not self.ring.is_zero(c)]
        return " + ".join(terms) + f" + O(z^{self.order + 1})" if terms else f"O(z^{self.order + 1})"

    __repr__ = __str__


def series_arith(a, b, op: str):
    """``op`` is ``add``, ``mul`` or ``scale`` (``b`` is then a ring element)."""
    if op == "add":
        if not isinstance(b, type(a)):
            raise BoundMismatch("add needs two series of the same kind")
        return a + b
    if op == "mul":
        if not isinstance(b, type(a)):
            raise BoundMismatch("mul needs two series of the same kind")
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown series operation {op!r}")


def series_reciprocal(a):
    """Multiplicative inverse within the truncation bounds.

    Graded back-substitution: ``b_0 = 1/a_0`` and, for every other exponent,
    ``b_e = -a_0^{-1} sum_{0 < d <= e} a_d b_{e-d}``.
    """
    ring = a.ring
    c0 = a.constant_term()
    if ring.is_zero(c0):
        raise ZeroDivisionError("series with zero constant term has no reciprocal")
    inv0 = ring.inverse(c0)
    if isinstance(a, TruncatedSeriesZ):
        out = [ring.zero()] * (a.order + 1)
        out[0] = inv0
        nz = [(d, x) for d, x in enumerate(a.coeffs) if d and not ring.is_zero(x)]
        for e in range(1, a.order + 1):
            acc = ring.zero()
            for d, x in nz:
                if d > e:
                    break
                acc = acc + x * out[e - d]
            out[e] = -(inv0 * acc)
        return a._new(out)
    bounds = a.bounds
    triples, pos = _layout(bounds)
    out = [ring.zero()] * len(triples)
    out[0] = inv0
    nz = [(t, x) for t, x in a.items() if t != (0, 0, 0)]
    # box-and-total truncation is an order ideal, so graded order is a valid schedule
    for e in sorted(range(1, len(triples)), key=lambda p: sum(triples[p])):
        i, j, l = triples[e]
        acc = ring.zero()
        for (di, dj, dl), x in nz:
            if di <= i and dj <= j and dl <= l:
                acc = acc + x * out[pos[(i - di, j - dj, l - dl)]]
        out[e] = -(inv0 * acc)
    return TruncatedSeriesUVW._from_data(bounds, ring, out)


def exp_series(a):
    """``sum a^m / m!``; ``a`` must have zero constant term (so a is nilpotent)."""
    ring = a.ring
    if not ring.is_zero(a.constant_term()):
        raise SeriesError("exp_series needs a series with zero constant term")
    one = (TruncatedSeriesUVW.constant(a.bounds, ring, ring.one())
           if isinstance(a, TruncatedSeriesUVW)
           else TruncatedSeriesZ.monomial(a.order, ring, 0, ring.one()))
    total, power, m = one, one, 0
    while True:
        m += 1
        power = power * a
        if power.is_zero():
            return total
        total = total + power.scale(ring.embed(Fraction(1, factorial(m))))


@dataclass(frozen=True)
class RootPair:
    """Two roots described only by their sum ``e1`` and product ``e2``."""

    e1: object
    e2: object


def newton_power_sums(rp: RootPair, n_max: int) -> list:
    """Power sums ``P_1..P_{n_max}`` of the two roots of ``x^2 - e1 x + e2``."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    e1, e2 = rp.e1, rp.e2
    sums = [e1]
    if n_max >= 2:
        sums.append(e1 * e1 - (e2 + e2))
    for _ in range(3, n_max + 1):
        sums.append(e1 * sums[-1] - e2 * sums[-2])
    return sums


def series_to_json(s) -> list[dict]:
    """Nonzero coefficients as ``{"monomial": ..., "coeff": ...}`` records."""
    ring = s.ring
    if isinstance(s, TruncatedSeriesZ):
        return [{"monomial": f"z^{m}", "coeff": ring.to_str(c)}
                for m, c in enumerate(s.coeffs) if not ring.is_zero(c)]
    return [{"monomial": monomial_name(t), "coeff": ring.to_str(c)} for t, c in s.items()]

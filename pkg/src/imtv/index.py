"""Index combinatorics: statistics, enumeration and comma/plus expansion."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator


class InvalidIndex(ValueError):
    """Raised for malformed or invalid indices."""


@dataclass(frozen=True, order=True)
class Index:
    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise InvalidIndex(f"index parts must be positive integers, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def depth(self) -> int:
        return len(self.parts)

    @property
    def height(self) -> int:
        return sum(1 for p in self.parts if p >= 2)

    @property
    def admissible(self) -> bool:
        return not self.parts or self.parts[0] > 1

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return format_index(self)

    @classmethod
    def parse(cls, text: str) -> "Index":
        return parse_index(text)


@dataclass(frozen=True)
class ExpansionTerm:
    index: Index
    r_exponent: int


def index_stats(parts) -> tuple[int, int, int, bool]:
    """Return ``(weight, depth, height, admissible)`` for a list of parts."""
    k = parts if isinstance(parts, Index) else Index(tuple(parts))
    return k.weight, k.depth, k.height, k.admissible


def _compositions(k: int, n: int, s: int, first_min: int) -> Iterator[tuple[int, ...]]:
    # descending lexicographic order; s = number of parts >= 2 still to place
    if n == 0:
        if k == 0 and s == 0:
            yield ()
        return
    if s > n or k < n + s:
        return
    hi = k - (n - 1) - max(s - 1, 0)  # leave room for the remaining parts
    for p in range(hi, first_min - 1, -1):
        big = 1 if p >= 2 else 0
        if s - big < 0:
            continue
        for rest in _compositions(k - p, n - 1, s - big, 1):
            yield (p,) + rest


def enumerate_indices(k: int, n: int, s: int, admissible_only: bool = True) -> list[Index]:
    """All indices of weight ``k``, depth ``n`` and height ``s``.

    Returns ``I_0(k, n, s)`` when ``admissible_only`` is true, else ``I(k, n, s)``,
    in lexicographically descending order.  The empty index belongs to
    ``(0, 0, 0)`` only.
    """
    for name, val in (("k", k), ("n", n), ("s", s)):
        if int(val) != val or val < 0:
            raise InvalidIndex(f"{name} must be a nonnegative integer, got {val!r}")
    if n == 0:
        return [Index()] if k == 0 and s == 0 else []
    if k < n + s or s > n:
        return []
    if admissible_only and s < 1:
        return []
    first_min = 2 if admissible_only else 1
    return [Index(c) for c in _compositions(k, n, s, first_min)]


def interpolation_expansion(k: Index) -> list[ExpansionTerm]:
    """Expand ``(k_1 □ k_2 □ ... □ k_n)`` over all comma/plus fillings.

    Terms are ordered by the binary value of the filling, the last
    placeholder being the least significant bit (bit set = plus).
    """
    if not isinstance(k, Index):
        k = Index(tuple(k))
    n = k.depth
    if n == 0:
        raise InvalidIndex("interpolation expansion needs a nonempty index")
    terms = []
    for pattern in range(1 << (n - 1)):
        parts = [k.parts[0]]
        for j in range(1, n):
            if pattern >> (n - 1 - j) & 1:
                parts[-1] += k.parts[j]
            else:
                parts.append(k.parts[j])
        terms.append(ExpansionTerm(Index(tuple(parts)), n - len(parts)))
    return terms


_REPEAT = re.compile(r"^\{(\d+)\}\^(\d+)$")


def parse_index(text: str) -> Index:
    """Parse ``"3,1,1"``; ``{2}^4`` repeats a part (``"3,{1}^2"`` is ``3,1,1``)."""
    text = text.strip()
    if text in ("", "()", "∅"):
        return Index()
    parts: list[int] = []
    for chunk in text.strip("()").split(","):
        chunk = chunk.strip()
        m = _REPEAT.match(chunk)
        try:
            if m:
                parts.extend([int(m.group(1))] * int(m.group(2)))
            else:
                parts.append(int(chunk))
        except ValueError:
            raise InvalidIndex(f"malformed index string {text!r}") from None
    return Index(tuple(parts))


def format_index(k: Index) -> str:
    return ",".join(str(p) for p in k.parts)

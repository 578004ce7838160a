"""Ultimately periodic subsets of the naturals and Parikh vectors.

A :class:`UnarySet` stores the exponent set of a unary regular language as a
lasso: ``index`` tail positions followed by a cycle of ``period`` positions.
Every public constructor returns the canonical (minimal) lasso.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

ParikhVector = tuple[int, ...]


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def parikh(word: Iterable[str], alphabet: Sequence[str]) -> ParikhVector:
    """Letter counts of ``word`` in alphabet order."""
    pos = {c: j for j, c in enumerate(alphabet)}
    counts = [0] * len(alphabet)
    for c in word:
        try:
            counts[pos[c]] += 1
        except KeyError:
            raise ValueError(f"letter {c!r} not in alphabet {''.join(alphabet)!r}") from None
    return tuple(counts)


def vector_leq(u: Sequence[int], v: Sequence[int]) -> bool:
    """Componentwise order on Parikh vectors."""
    if len(u) != len(v):
        raise ValueError("arity mismatch")
    return all(x <= y for x, y in zip(u, v))


class InconsistentPrefix(ValueError):
    """The bit prefix does not fit the caller's (index, period) guarantee."""


@dataclass(frozen=True)
class UnarySet:
    index: int
    period: int
    bits: tuple[bool, ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if self.index < 0:
            raise ValueError("index must be >= 0")
        if len(self.bits) != self.index + self.period:
            raise ValueError(
                f"membership has length {len(self.bits)}, expected {self.index + self.period}"
            )

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls) -> UnarySet:
        return cls(0, 1, (False,))

    @classmethod
    def full(cls) -> UnarySet:
        return cls(0, 1, (True,))

    @classmethod
    def finite(cls, *members: int) -> UnarySet:
        """The finite set ``members``."""
        if not members:
            return cls.empty()
        top = max(members)
        bits = [False] * (top + 2)
        for m in members:
            if m < 0:
                raise ValueError("exponents are natural numbers")
            bits[m] = True
        return cls.of(top + 1, 1, bits)

    @classmethod
    def lasso(cls, offset: int, step: int) -> UnarySet:
        """The set ``offset + step*N``; ``step == 0`` gives ``{offset}``."""
        if offset < 0 or step < 0:
            raise ValueError("offset and step must be natural numbers")
        if step == 0:
            return cls.finite(offset)
        bits = [False] * (offset + step)
        bits[offset] = True
        return cls.of(offset, step, bits)

    @classmethod
    def of(cls, index: int, period: int, bits: Sequence[bool]) -> UnarySet:
        """Canonical form of an arbitrary lasso representation."""
        bits = tuple(bool(b) for b in bits)
        if len(bits) != index + period:
            raise ValueError("membership length must equal index + period")
        new_index, new_period = reduce_lasso(bits, index, period)
        return cls(new_index, new_period, bits[: new_index + new_period])

    # -- queries -----------------------------------------------------------

    def clamp(self, m: int) -> int:
        """Lasso position reached after ``m`` steps."""
        if m < self.index + self.period:
            return m
        return self.index + (m - self.index) % self.period

    def __contains__(self, m: int) -> bool:
        return m >= 0 and self.bits[self.clamp(m)]

    def is_empty(self) -> bool:
        return not any(self.bits)

    def is_finite(self) -> bool:
        return not any(self.bits[self.index :])

    def prefix(self, length: int) -> np.ndarray:
        """Membership of 0..length-1 as a boolean array."""
        return np.array([m in self for m in range(length)], dtype=np.bool_)

    def members(self, limit: int) -> list[int]:
        return [m for m in range(limit) if m in self]

    def is_canonical(self) -> bool:
        return reduce_lasso(self.bits, self.index, self.period) == (self.index, self.period)

    def __repr__(self) -> str:
        body = "".join("1" if b else "0" for b in self.bits)
        return f"UnarySet(index={self.index}, period={self.period}, bits={body[:self.index]}|{body[self.index:]})"


def reduce_lasso(colors: Sequence, index: int, period: int) -> tuple[int, int]:
    """Minimal (index, period) of the eventually periodic sequence a lasso spells.

    ``colors[s]`` is the output of lasso state ``s``; any hashable values work,
    which lets the grid layer reuse this for axis slices.
    """
    n = index + period
    if len(colors) != n:
        raise ValueError("colors must cover the lasso")
    cycle = colors[index:]
    best = period
    # minimal eventual period divides every eventual period
    for d in divisors(period):
        if all(cycle[s] == cycle[(s + d) % period] for s in range(period)):
            best = d
            break

    def clamp(m: int) -> int:
        return m if m < n else index + (m - index) % period

    new_index = index
    while new_index > 0 and colors[new_index - 1] == colors[clamp(new_index - 1 + best)]:
        new_index -= 1
    return new_index, best


def unary_canonicalize(bits: Sequence[bool], guarantee: tuple[int, int]) -> UnarySet:
    """Fold a finite prefix of an eventually periodic set into its minimal lasso.

    ``guarantee = (max_index, max_period)`` promises that the infinite set has
    index at most ``max_index`` and some period at most ``max_period``.
    """
    max_index, max_period = guarantee
    bits = [bool(b) for b in bits]
    if max_period < 1:
        raise ValueError("max_period must be >= 1")
    if len(bits) < max_index + 2 * max_period:
        raise ValueError(
            f"need at least {max_index + 2 * max_period} bits for guarantee {guarantee}, got {len(bits)}"
        )
    n = len(bits)
    for p in range(1, max_period + 1):
        if all(bits[m] == bits[m + p] for m in range(max_index, n - p)):
            break
    else:
        raise InconsistentPrefix(f"no period <= {max_period} fits the prefix beyond {max_index}")
    index = max_index
    while index > 0 and bits[index - 1] == bits[index - 1 + p]:
        index -= 1
    return UnarySet(index, p, tuple(bits[: index + p]))


def _aligned(a: UnarySet, b: UnarySet) -> tuple[int, int, np.ndarray, np.ndarray]:
    index = max(a.index, b.index)
    period = lcm(a.period, b.period)
    n = index + period
    return index, period, a.prefix(n), b.prefix(n)


def unary_union(a: UnarySet, b: UnarySet) -> UnarySet:
    index, period, x, y = _aligned(a, b)
    return UnarySet.of(index, period, x | y)


def unary_intersection(a: UnarySet, b: UnarySet) -> UnarySet:
    index, period, x, y = _aligned(a, b)
    return UnarySet.of(index, period, x & y)


def unary_complement(a: UnarySet) -> UnarySet:
    return UnarySet(a.index, a.period, tuple(not b for b in a.bits))


def sum_bounds(a: UnarySet, b: UnarySet) -> tuple[int, int]:
    """(max_index, max_period) guaranteed for ``a + b``.

    Translates of a periodic tail stay periodic with the same period, and
    tail + tail is periodic with the gcd once past the Frobenius gap, which
    is below ``lcm``.  Hence period divides ``lcm`` from
    ``a.index + b.index + a.period + b.period + lcm`` on.
    """
    period = lcm(a.period, b.period)
    return a.index + b.index + a.period + b.period + period, period


def unary_minkowski_sum(a: UnarySet, b: UnarySet) -> UnarySet:
    """{m + n : m in a, n in b}; unary shuffle and concatenation coincide with it."""
    if a.is_empty() or b.is_empty():
        return UnarySet.empty()
    max_index, max_period = sum_bounds(a, b)
    length = max_index + 2 * max_period
    bits = _kernels.sumset(a.prefix(length), b.prefix(length), length)
    return unary_canonicalize(bits, (max_index, max_period))

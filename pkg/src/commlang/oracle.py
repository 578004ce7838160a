"""Brute-force reference semantics on a finite box of Parikh vectors.

Nothing here looks at lassos or final tuples except :func:`box_from_grid`,
which only asks the grid for membership.  Closures, sums and interiors are
computed straight from their order-theoretic definitions, one member at a
time.  Slow on purpose.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

import numpy as np

from .grid import GridAutomaton, box_vectors


@dataclass(frozen=True, eq=False)
class BoxLanguage:
    """Members of a language among the vectors ``v <= bound``."""

    bound: tuple[int, ...]
    mask: np.ndarray

    def __post_init__(self):
        mask = np.array(self.mask, dtype=np.bool_)
        if mask.shape != tuple(b + 1 for b in self.bound):
            raise ValueError("mask shape must be bound + 1 per axis")
        mask.setflags(write=False)
        object.__setattr__(self, "bound", tuple(int(b) for b in self.bound))
        object.__setattr__(self, "mask", mask)

    @property
    def k(self) -> int:
        return len(self.bound)

    @property
    def members(self) -> frozenset[tuple[int, ...]]:
        return frozenset(tuple(int(x) for x in v) for v in np.argwhere(self.mask))

    def __contains__(self, v) -> bool:
        v = tuple(v)
        if len(v) != self.k or any(x < 0 or x > b for x, b in zip(v, self.bound)):
            return False
        return bool(self.mask[v])

    def __eq__(self, other):
        if not isinstance(other, BoxLanguage):
            return NotImplemented
        return self.bound == other.bound and np.array_equal(self.mask, other.mask)

    def restrict(self, bound: Sequence[int]) -> BoxLanguage:
        bound = tuple(bound)
        if any(b > c for b, c in zip(bound, self.bound)):
            raise ValueError("can only restrict to a smaller box")
        return BoxLanguage(bound, self.mask[tuple(slice(0, b + 1) for b in bound)])


def box_from_members(bound: Sequence[int], members: Iterable[Sequence[int]]) -> BoxLanguage:
    bound = tuple(bound)
    mask = np.zeros(tuple(b + 1 for b in bound), dtype=np.bool_)
    for v in members:
        v = tuple(v)
        if all(0 <= x <= b for x, b in zip(v, bound)):
            mask[v] = True
    return BoxLanguage(bound, mask)


def box_from_grid(g: GridAutomaton, bound: Sequence[int]) -> BoxLanguage:
    bound = tuple(bound)
    if len(bound) != g.k:
        raise ValueError("bound arity does not match the grid")
    mask = np.zeros(tuple(b + 1 for b in bound), dtype=np.bool_)
    for v in box_vectors(bound):
        mask[v] = v in g
    return BoxLanguage(bound, mask)


def _same_box(a: BoxLanguage, b: BoxLanguage) -> None:
    if a.bound != b.bound:
        raise ValueError(f"boxes differ: {a.bound} vs {b.bound}")


def box_union(a: BoxLanguage, b: BoxLanguage) -> BoxLanguage:
    _same_box(a, b)
    return BoxLanguage(a.bound, a.mask | b.mask)


def box_intersection(a: BoxLanguage, b: BoxLanguage) -> BoxLanguage:
    _same_box(a, b)
    return BoxLanguage(a.bound, a.mask & b.mask)


def box_complement(a: BoxLanguage) -> BoxLanguage:
    return BoxLanguage(a.bound, ~a.mask)


def box_projection(a: BoxLanguage, keep: Sequence[int]) -> BoxLanguage:
    """Delete every coordinate not listed in ``keep``."""
    keep = sorted(set(keep))
    bound = tuple(a.bound[j] for j in keep)
    return box_from_members(bound, (tuple(v[j] for j in keep) for v in a.members))


def box_minkowski(a: BoxLanguage, b: BoxLanguage, bound: Sequence[int]) -> BoxLanguage:
    """{u + v <= bound : u in a, v in b}; exact when both boxes reach ``bound``."""
    bound = tuple(bound)
    if any(x < c for x, c in zip(b.bound, bound)):
        raise ValueError("second operand must be sampled up to the target bound")
    mask = np.zeros(tuple(c + 1 for c in bound), dtype=np.bool_)
    for u in a.members:
        if any(x > c for x, c in zip(u, bound)):
            continue
        # every v with u + v inside the box, translated by u
        shifted = b.mask[tuple(slice(0, c - x + 1) for x, c in zip(u, bound))]
        mask[tuple(slice(x, None) for x in u)] |= shifted
    return BoxLanguage(bound, mask)


def box_up_closure(a: BoxLanguage, bound: Sequence[int] | None = None) -> BoxLanguage:
    """{u <= bound : some member v <= u}; exact whenever ``a`` covers ``bound``."""
    bound = a.bound if bound is None else tuple(bound)
    mask = np.zeros(tuple(b + 1 for b in bound), dtype=np.bool_)
    for v in a.members:
        if all(x <= c for x, c in zip(v, bound)):
            mask[tuple(slice(x, None) for x in v)] = True
    return BoxLanguage(bound, mask)


def box_down_closure(a: BoxLanguage, bound: Sequence[int] | None = None) -> BoxLanguage:
    """{u <= bound : some member v >= u}.

    Members beyond ``bound`` matter here, so ``a`` must be sampled on a box
    large enough that every relevant witness ``v`` appears in it.
    """
    bound = a.bound if bound is None else tuple(bound)
    mask = np.zeros(tuple(b + 1 for b in bound), dtype=np.bool_)
    for v in a.members:
        mask[tuple(slice(0, min(x, c) + 1) for x, c in zip(v, bound))] = True
    return BoxLanguage(bound, mask)


def box_upward_interior(a: BoxLanguage, bound: Sequence[int] | None = None) -> BoxLanguage:
    """Complement of the down-closure of the complement."""
    return box_complement(box_down_closure(box_complement(a), bound))


def box_downward_interior(a: BoxLanguage, bound: Sequence[int] | None = None) -> BoxLanguage:
    """Complement of the up-closure of the complement."""
    return box_complement(box_up_closure(box_complement(a), bound))


def box_interiors(a: BoxLanguage, bound: Sequence[int] | None = None) -> tuple[BoxLanguage, BoxLanguage]:
    return box_upward_interior(a, bound), box_downward_interior(a, bound)


def is_upward_closed(a: BoxLanguage) -> bool:
    return box_up_closure(a) == a


def is_downward_closed(a: BoxLanguage) -> bool:
    return box_down_closure(a) == a


# ---------------------------------------------------------------------------
# comparison against grids


def default_corner(g: GridAutomaton) -> tuple[int, ...]:
    """Box corner ``i + 2p + 4`` per axis: a full extra period past saturation."""
    return tuple(i + 2 * p + 4 for i, p in g.axes)


def covers_saturation(g: GridAutomaton, bound: Sequence[int]) -> bool:
    """Whether the box reaches past the grid's last lasso state on every axis."""
    return all(b >= s for b, s in zip(bound, g.saturation_corner))


def oracle_mismatch(g: GridAutomaton, box: BoxLanguage) -> tuple[int, ...] | None:
    """First vector (lexicographic) on which grid and box disagree, if any."""
    if g.k != box.k:
        raise ValueError("arity mismatch between grid and box")
    for v in box_vectors(box.bound):
        if (v in g) != bool(box.mask[v]):
            return v
    return None


def oracle_equiv(g: GridAutomaton, box: BoxLanguage) -> bool:
    return oracle_mismatch(g, box) is None


# ---------------------------------------------------------------------------
# word-level reference


def interleavings(u: str, v: str) -> set[str]:
    """All shuffles of two words, straight from the recursive definition."""
    if not u:
        return {v}
    if not v:
        return {u}
    return {u[0] + w for w in interleavings(u[1:], v)} | {v[0] + w for w in interleavings(u, v[1:])}


def word_shuffle(us: Iterable[str], vs: Iterable[str]) -> set[str]:
    vs = list(vs)
    out: set[str] = set()
    for u in us:
        for v in vs:
            out |= interleavings(u, v)
    return out


def commutative_closure(words: Iterable[str]) -> set[str]:
    return {"".join(p) for w in words for p in set(permutations(w))}


def words_up_to(alphabet: Sequence[str], length: int) -> Iterable[str]:
    for n in range(length + 1):
        for t in product(alphabet, repeat=n):
            yield "".join(t)

"""Grid automata: the canonical representation of commutative regular languages.

A grid keeps one lasso per letter (``axes[j] = (index, period)``) and a
boolean table over the box ``prod(index_j + period_j)`` marking final
coordinate tuples.  A word is accepted iff the tuple of its clamped letter
counts is final, so membership only depends on the Parikh vector.

All operations return canonical grids: every axis is reduced to the Nerode
classes of its letter powers, which makes the axis shapes equal to the
index and period vectors of the language.
"""
from __future__ import annotations

import json
import string
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Iterable, Sequence

import numpy as np

from .parikh import (
    ParikhVector,
    UnarySet,
    lcm,
    reduce_lasso,
    unary_minkowski_sum,
)


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class IndexPeriodVectors:
    index_vector: tuple[int, ...]
    period_vector: tuple[int, ...]


class GridAutomaton:
    """Product of per-letter lassos with a set of final tuples."""

    __slots__ = ("alphabet", "axes", "table", "_canonical")

    def __init__(
        self,
        alphabet: Sequence[str],
        axes: Sequence[tuple[int, int]],
        table,
        *,
        _canonical: bool = False,
    ):
        alphabet = tuple(alphabet)
        axes = tuple((int(i), int(p)) for i, p in axes)
        if len(alphabet) != len(axes):
            raise ValueError("one axis per letter")
        if len(set(alphabet)) != len(alphabet):
            raise ValueError("duplicate letters in alphabet")
        for i, p in axes:
            if i < 0 or p < 1:
                raise ValueError(f"bad axis shape ({i}, {p})")
        shape = tuple(i + p for i, p in axes)
        table = np.array(table, dtype=np.bool_)
        if table.shape != shape:
            raise ValueError(f"table shape {table.shape} does not match axes box {shape}")
        table.setflags(write=False)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_canonical", _canonical)

    def __setattr__(self, name, value):
        raise AttributeError("GridAutomaton is immutable")

    # -- basic structure ---------------------------------------------------

    @property
    def k(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.table.shape

    @property
    def size(self) -> int:
        """Number of grid states, prod(index_j + period_j)."""
        return int(np.prod(self.shape, dtype=np.int64))

    @property
    def finals(self) -> frozenset[ParikhVector]:
        return frozenset(tuple(int(x) for x in t) for t in np.argwhere(self.table))

    @property
    def saturation_corner(self) -> tuple[int, ...]:
        return tuple(i + p - 1 for i, p in self.axes)

    def clamp(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.k:
            raise ValueError(f"vector of arity {len(v)} for alphabet of size {self.k}")
        out = []
        for m, (i, p) in zip(v, self.axes):
            if m < 0:
                raise ValueError("counts are natural numbers")
            out.append(m if m < i + p else i + (m - i) % p)
        return tuple(out)

    def __contains__(self, v: Sequence[int]) -> bool:
        return bool(self.table[self.clamp(v)])

    def accepts(self, word: str) -> bool:
        pos = {c: j for j, c in enumerate(self.alphabet)}
        counts = [0] * self.k
        for c in word:
            counts[pos[c]] += 1
        return tuple(counts) in self

    def is_empty(self) -> bool:
        return not self.table.any()

    def __eq__(self, other):
        if not isinstance(other, GridAutomaton):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.axes == other.axes
            and np.array_equal(self.table, other.table)
        )

    def __hash__(self):
        return hash((self.alphabet, self.axes, self.table.tobytes()))

    def __repr__(self):
        finals = sorted(self.finals)
        if len(finals) > 8:
            shown = ", ".join(map(str, finals[:8])) + ", ..."
        else:
            shown = ", ".join(map(str, finals))
        return f"GridAutomaton(alphabet={''.join(self.alphabet)!r}, axes={self.axes}, finals={{{shown}}})"

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "axes": [{"index": i, "period": p} for i, p in self.axes],
            "finals": [list(t) for t in sorted(self.finals)],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> GridAutomaton:
        alphabet = list(data["alphabet"])
        if any(not isinstance(c, str) or len(c) != 1 for c in alphabet):
            raise ValueError("alphabet entries must be single characters")
        axes = [(int(a["index"]), int(a["period"])) for a in data["axes"]]
        table = np.zeros(tuple(i + p for i, p in axes), dtype=np.bool_)
        for f in data["finals"]:
            f = tuple(int(x) for x in f)
            if len(f) != len(axes) or any(not 0 <= x < i + p for x, (i, p) in zip(f, axes)):
                raise ValueError(f"final tuple {f} outside the grid box")
            table[f] = True
        return cls(alphabet, axes, table)

    @classmethod
    def from_json(cls, text: str) -> GridAutomaton:
        return cls.from_dict(json.loads(text))


def default_alphabet(k: int) -> tuple[str, ...]:
    if k > len(string.ascii_lowercase):
        raise ValueError("alphabet too large for default letters")
    return tuple(string.ascii_lowercase[:k])


def _check_same_alphabet(a: GridAutomaton, b: GridAutomaton) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(
            f"alphabets differ: {''.join(a.alphabet)!r} vs {''.join(b.alphabet)!r}"
        )


# ---------------------------------------------------------------------------
# construction


def grid_from_products(
    alphabet: Sequence[str] | int, summands: Iterable[Sequence[UnarySet]]
) -> GridAutomaton:
    """Union over summands of the shuffle of their unary components."""
    if isinstance(alphabet, int):
        alphabet = default_alphabet(alphabet)
    alphabet = tuple(alphabet)
    k = len(alphabet)
    summands = [tuple(s) for s in summands]
    for s in summands:
        if len(s) != k:
            raise ValueError(f"summand of arity {len(s)} for alphabet of size {k}")
    if not summands:
        return empty_grid(alphabet)
    axes = []
    for j in range(k):
        index = max(s[j].index for s in summands)
        period = reduce(lcm, (s[j].period for s in summands), 1)
        axes.append((index, period))
    shape = tuple(i + p for i, p in axes)
    table = np.zeros(shape, dtype=np.bool_)
    for s in summands:
        cells = np.ones(shape, dtype=np.bool_)
        for j, u in enumerate(s):
            view = [1] * k
            view[j] = shape[j]
            cells &= u.prefix(shape[j]).reshape(view)
        table |= cells
    return grid_canonicalize(GridAutomaton(alphabet, axes, table))


def empty_grid(alphabet: Sequence[str] | int) -> GridAutomaton:
    if isinstance(alphabet, int):
        alphabet = default_alphabet(alphabet)
    k = len(alphabet)
    return GridAutomaton(alphabet, [(0, 1)] * k, np.zeros((1,) * k, dtype=np.bool_), _canonical=True)


def sigma_star(alphabet: Sequence[str] | int) -> GridAutomaton:
    if isinstance(alphabet, int):
        alphabet = default_alphabet(alphabet)
    k = len(alphabet)
    return GridAutomaton(alphabet, [(0, 1)] * k, np.ones((1,) * k, dtype=np.bool_), _canonical=True)


def epsilon_grid(alphabet: Sequence[str] | int) -> GridAutomaton:
    return vector_grid(alphabet, (0,) * (alphabet if isinstance(alphabet, int) else len(alphabet)))


def vector_grid(alphabet: Sequence[str] | int, v: Sequence[int]) -> GridAutomaton:
    """The commutative closure of a single word with Parikh vector ``v``."""
    if isinstance(alphabet, int):
        alphabet = default_alphabet(alphabet)
    if len(v) != len(alphabet):
        raise ValueError("vector arity does not match alphabet")
    return grid_from_products(alphabet, [tuple(UnarySet.finite(m) for m in v)])


def letter_grid(alphabet: Sequence[str], letter: str, unary: UnarySet) -> GridAutomaton:
    """Words using only ``letter`` whose length lies in ``unary``."""
    alphabet = tuple(alphabet)
    if letter not in alphabet:
        raise ValueError(f"letter {letter!r} not in alphabet {''.join(alphabet)!r}")
    comps = tuple(unary if c == letter else UnarySet.finite(0) for c in alphabet)
    return grid_from_products(alphabet, [comps])


def free_letters_grid(alphabet: Sequence[str], letter: str, unary: UnarySet) -> GridAutomaton:
    """``unary`` on ``letter`` shuffled with all words over the other letters."""
    alphabet = tuple(alphabet)
    if letter not in alphabet:
        raise ValueError(f"letter {letter!r} not in alphabet {''.join(alphabet)!r}")
    comps = tuple(unary if c == letter else UnarySet.full() for c in alphabet)
    return grid_from_products(alphabet, [comps])


# ---------------------------------------------------------------------------
# canonical form


def grid_canonicalize(g: GridAutomaton) -> GridAutomaton:
    """Merge Nerode-equivalent states on every axis.

    Axis state ``s`` outputs the slice of the table at ``s``; two axis states
    are equivalent iff the slice sequences along their lasso futures agree,
    which is the unary lasso reduction applied to slice colors.  Merging on
    one axis never changes which slices differ on another, so a single pass
    over the axes suffices.
    """
    if g._canonical:
        return g
    table = np.asarray(g.table)
    axes = list(g.axes)
    for j, (i, p) in enumerate(g.axes):
        moved = np.moveaxis(table, j, 0)
        colors = [moved[s].tobytes() for s in range(i + p)]
        ni, np_ = reduce_lasso(colors, i, p)
        if (ni, np_) != (i, p):
            table = np.take(table, np.arange(ni + np_), axis=j)
            axes[j] = (ni, np_)
    return GridAutomaton(g.alphabet, axes, table, _canonical=True)


def grid_index_period(g: GridAutomaton) -> IndexPeriodVectors:
    c = grid_canonicalize(g)
    return IndexPeriodVectors(tuple(i for i, _ in c.axes), tuple(p for _, p in c.axes))


def grid_membership(g: GridAutomaton, v: Sequence[int]) -> bool:
    return v in g


def _realign(g: GridAutomaton, axes: Sequence[tuple[int, int]]) -> np.ndarray:
    """Table of ``g`` re-expressed on a larger box with compatible lassos."""
    maps = []
    for (i, p), (ni, np_) in zip(g.axes, axes):
        idx = np.arange(ni + np_)
        maps.append(np.where(idx < i + p, idx, i + (idx - i) % p))
    if not maps:
        return np.asarray(g.table)
    return np.asarray(g.table)[np.ix_(*maps)]


def _common_axes(a: GridAutomaton, b: GridAutomaton) -> list[tuple[int, int]]:
    return [(max(i, j), lcm(p, q)) for (i, p), (j, q) in zip(a.axes, b.axes)]


# ---------------------------------------------------------------------------
# boolean operations


def grid_union(a: GridAutomaton, b: GridAutomaton) -> GridAutomaton:
    _check_same_alphabet(a, b)
    axes = _common_axes(a, b)
    return grid_canonicalize(GridAutomaton(a.alphabet, axes, _realign(a, axes) | _realign(b, axes)))


def grid_intersection(a: GridAutomaton, b: GridAutomaton) -> GridAutomaton:
    _check_same_alphabet(a, b)
    axes = _common_axes(a, b)
    return grid_canonicalize(GridAutomaton(a.alphabet, axes, _realign(a, axes) & _realign(b, axes)))


def grid_complement(a: GridAutomaton) -> GridAutomaton:
    return grid_canonicalize(GridAutomaton(a.alphabet, a.axes, ~np.asarray(a.table), _canonical=a._canonical))


# ---------------------------------------------------------------------------
# decomposition and shuffle


def axis_class(axis: tuple[int, int], state: int) -> UnarySet:
    """Exponents ``m`` whose clamp on the lasso ``axis`` is ``state``."""
    i, p = axis
    bits = [False] * (i + p)
    bits[state] = True
    return UnarySet.of(i, p, bits)


def grid_decompose(g: GridAutomaton) -> list[tuple[UnarySet, ...]]:
    """One product summand per final tuple; their union is the language."""
    g = grid_canonicalize(g)
    return [tuple(axis_class(ax, s) for ax, s in zip(g.axes, f)) for f in sorted(g.finals)]


def _contract(weights: np.ndarray, factors: Sequence[np.ndarray], k: int) -> np.ndarray:
    """OR over box tuples ``f`` with weights[f] of the outer product of factors[j][f_j]."""
    letters = string.ascii_letters
    src = letters[:k]
    dst = letters[k : 2 * k]
    subscripts = src + "," + ",".join(src[j] + dst[j] for j in range(k)) + "->" + dst
    out = np.einsum(subscripts, weights.astype(np.float64), *[f.astype(np.float64) for f in factors], optimize=True)
    return out > 0.5


def grid_shuffle(a: GridAutomaton, b: GridAutomaton) -> GridAutomaton:
    """Shuffle of two commutative languages.

    Both operands are decomposed into one product per final tuple; products
    combine axis by axis with unary Minkowski sums and everything is united.
    Sums depend only on the pair of axis states, so they are computed once per
    pair and the union over final-tuple pairs runs as a single contraction.
    """
    _check_same_alphabet(a, b)
    a = grid_canonicalize(a)
    b = grid_canonicalize(b)
    k = a.k
    if k == 0:
        return GridAutomaton(a.alphabet, [], np.asarray(a.table) & np.asarray(b.table))
    if a.is_empty() or b.is_empty():
        return empty_grid(a.alphabet)
    sums = []
    axes = []
    for ax_a, ax_b in zip(a.axes, b.axes):
        na, nb = ax_a[0] + ax_a[1], ax_b[0] + ax_b[1]
        pair = [[unary_minkowski_sum(axis_class(ax_a, x), axis_class(ax_b, y)) for y in range(nb)] for x in range(na)]
        index = max(s.index for row in pair for s in row)
        period = reduce(lcm, (s.period for row in pair for s in row), 1)
        n = index + period
        stack = np.zeros((na, nb, n), dtype=np.bool_)
        for x in range(na):
            for y in range(nb):
                stack[x, y] = pair[x][y].prefix(n)
        sums.append(stack)
        axes.append((index, period))
    # contract one operand away first, then the other
    letters = string.ascii_letters
    xs, ys, ts = letters[:k], letters[k : 2 * k], letters[2 * k : 3 * k]
    subscripts = f"{xs},{ys}," + ",".join(xs[j] + ys[j] + ts[j] for j in range(k)) + f"->{ts}"
    out = np.einsum(
        subscripts,
        np.asarray(a.table, dtype=np.float64),
        np.asarray(b.table, dtype=np.float64),
        *[s.astype(np.float64) for s in sums],
        optimize=True,
    )
    return grid_canonicalize(GridAutomaton(a.alphabet, axes, out > 0.5))


# ---------------------------------------------------------------------------
# projection


def grid_projection(g: GridAutomaton, letters: Iterable[str]) -> GridAutomaton:
    """Erase the letters outside ``letters``; the result lives over those letters."""
    keep = set(letters)
    unknown = keep - set(g.alphabet)
    if unknown:
        raise ValueError(f"letters {''.join(sorted(unknown))!r} not in alphabet {''.join(g.alphabet)!r}")
    kept = [j for j, c in enumerate(g.alphabet) if c in keep]
    dropped = tuple(j for j in range(g.k) if j not in kept)
    table = np.asarray(g.table).any(axis=dropped) if dropped else np.asarray(g.table)
    return grid_canonicalize(
        GridAutomaton([g.alphabet[j] for j in kept], [g.axes[j] for j in kept], table)
    )


# ---------------------------------------------------------------------------
# closures and interiors


def upward_automaton(g: GridAutomaton) -> GridAutomaton:
    """The saturating automaton for the upward closure, before reduction.

    Each letter stops advancing at its last lasso state, so the axis becomes
    a lasso of index ``i + p - 1`` and period 1 on the same box; the finals
    are every tuple dominating an original final.
    """
    g = grid_canonicalize(g)
    table = np.asarray(g.table)
    for j in range(g.k):
        table = np.logical_or.accumulate(table, axis=j)
    axes = [(i + p - 1, 1) for i, p in g.axes]
    return GridAutomaton(g.alphabet, axes, table)


def _cycle_mates(axis: tuple[int, int]) -> np.ndarray:
    """mates[f, s]: state s equals f, or both lie on the cycle."""
    i, p = axis
    n = i + p
    idx = np.arange(n)
    on_cycle = idx >= i
    return (idx[:, None] == idx[None, :]) | (on_cycle[:, None] & on_cycle[None, :])


def downward_automaton(g: GridAutomaton) -> GridAutomaton:
    """Same transitions as ``g``; finals are the down-closure of E'.

    E' holds tuples that on every axis either equal a final's coordinate or
    sit on the cycle together with it.
    """
    g = grid_canonicalize(g)
    k = g.k
    if k == 0:
        return g
    extended = _contract(np.asarray(g.table), [_cycle_mates(ax) for ax in g.axes], k)
    table = extended
    for j in range(k):
        table = np.flip(np.logical_or.accumulate(np.flip(table, axis=j), axis=j), axis=j)
    return GridAutomaton(g.alphabet, g.axes, table)


def grid_upward_closure(g: GridAutomaton) -> GridAutomaton:
    return grid_canonicalize(upward_automaton(g))


def grid_downward_closure(g: GridAutomaton) -> GridAutomaton:
    return grid_canonicalize(downward_automaton(g))


def grid_upward_interior(g: GridAutomaton) -> GridAutomaton:
    """Largest upward-closed subset: complement of the down-closure of the complement."""
    return grid_complement(grid_downward_closure(grid_complement(g)))


def grid_downward_interior(g: GridAutomaton) -> GridAutomaton:
    """Largest downward-closed subset: complement of the up-closure of the complement."""
    return grid_complement(grid_upward_closure(grid_complement(g)))


# ---------------------------------------------------------------------------
# classification


def grid_alphabet(g: GridAutomaton) -> tuple[str, ...]:
    """Letters occurring in some member of the language."""
    g = grid_canonicalize(g)
    finals = np.argwhere(np.asarray(g.table))
    out = []
    for j, (i, _) in enumerate(g.axes):
        # with index 0 the origin sits on the cycle, so positive counts reach it too
        if finals.size and (i == 0 or (finals[:, j] > 0).any()):
            out.append(g.alphabet[j])
    return tuple(out)


def grid_is_group(g: GridAutomaton) -> bool:
    return all(i == 0 for i in grid_index_period(g).index_vector)


def grid_is_aperiodic(g: GridAutomaton) -> bool:
    return all(p == 1 for p in grid_index_period(g).period_vector)


def restricted_sigma_star(alphabet: Sequence[str], letters: Iterable[str]) -> GridAutomaton:
    """All words over ``letters`` as a language over ``alphabet``."""
    letters = set(letters)
    comps = tuple(UnarySet.full() if c in letters else UnarySet.finite(0) for c in alphabet)
    return grid_from_products(alphabet, [comps])


# ---------------------------------------------------------------------------
# sampling


def random_grid(
    rng: np.random.Generator,
    k: int,
    max_index: int = 3,
    max_period: int = 3,
    *,
    kind: str = "any",
    density: float | None = None,
    alphabet: Sequence[str] | None = None,
) -> GridAutomaton:
    """A random canonical grid; ``kind`` is ``any``, ``group`` or ``aperiodic``.

    Group grids get index 0 on every axis and aperiodic ones period 1, which
    canonicalization preserves.
    """
    if alphabet is None:
        alphabet = default_alphabet(k)
    axes = []
    for _ in range(k):
        i = 0 if kind == "group" else int(rng.integers(0, max_index + 1))
        p = 1 if kind == "aperiodic" else int(rng.integers(1, max_period + 1))
        axes.append((i, p))
    shape = tuple(i + p for i, p in axes)
    if density is None:
        density = float(rng.uniform(0.1, 0.9))
    table = rng.random(shape) < density
    return grid_canonicalize(GridAutomaton(alphabet, axes, table))


def box_vectors(bound: Sequence[int]) -> Iterable[tuple[int, ...]]:
    """Every vector ``v <= bound``."""
    return product(*(range(b + 1) for b in bound))

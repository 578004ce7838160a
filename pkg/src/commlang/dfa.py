"""Complete DFAs for exact state-complexity measurement.

Minimization is Moore partition refinement: O(n^2 k) worst case against
Hopcroft's O(n k log n), which does not matter at the sizes measured here
and keeps the refinement step a single vectorizable kernel.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels
from .grid import GridAutomaton


class MonoidBudgetExceeded(RuntimeError):
    """The transition monoid grew past the enumeration budget."""


@dataclass(frozen=True, eq=False)
class Dfa:
    alphabet: tuple[str, ...]
    trans: np.ndarray  # (n, k) int64
    start: int
    finals: np.ndarray  # (n,) bool
    labels: tuple | None = field(default=None)
    minimal: bool = False

    def __post_init__(self):
        trans = np.array(self.trans, dtype=np.int64).reshape(-1, len(self.alphabet))
        finals = np.array(self.finals, dtype=np.bool_).reshape(-1)
        n = finals.size
        if trans.shape[0] != n:
            raise ValueError("transition table and final mask disagree on the state count")
        if n == 0:
            raise ValueError("a complete DFA has at least one state")
        if trans.size and (trans.min() < 0 or trans.max() >= n):
            raise ValueError("transition target out of range")
        if not 0 <= self.start < n:
            raise ValueError("start state out of range")
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("one label per state")
        trans.setflags(write=False)
        finals.setflags(write=False)
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "trans", trans)
        object.__setattr__(self, "finals", finals)

    @property
    def n_states(self) -> int:
        return int(self.finals.size)

    def __len__(self) -> int:
        return self.n_states

    def run(self, word: str) -> int:
        pos = {c: j for j, c in enumerate(self.alphabet)}
        s = self.start
        for c in word:
            s = int(self.trans[s, pos[c]])
        return s

    def accepts(self, word: str) -> bool:
        return bool(self.finals[self.run(word)])

    @classmethod
    def from_table(cls, alphabet, table: Sequence[Sequence[int]], start: int, finals) -> Dfa:
        """Build from ``table[state][letter] -> state`` and an iterable of final states."""
        n = len(table)
        mask = np.zeros(n, dtype=np.bool_)
        for f in finals:
            mask[f] = True
        return cls(tuple(alphabet), np.array(table, dtype=np.int64).reshape(n, len(alphabet)), start, mask)


def dfa_from_grid(g: GridAutomaton) -> Dfa:
    """Product of the axis lassos over the grid box.

    Every tuple of the box is reachable from the origin (each letter walks its
    own lasso independently), so no state is dropped.
    """
    shape = g.shape
    coords = np.indices(shape).reshape(len(shape), -1) if shape else np.zeros((0, 1), dtype=np.int64)
    n = coords.shape[1]
    trans = np.empty((n, g.k), dtype=np.int64)
    for j, (i, p) in enumerate(g.axes):
        nxt = coords.copy()
        step = nxt[j] + 1
        nxt[j] = np.where(step < i + p, step, i)
        trans[:, j] = np.ravel_multi_index(tuple(nxt), shape)
    finals = np.asarray(g.table).reshape(-1)
    labels = tuple(tuple(int(x) for x in coords[:, s]) for s in range(n))
    return Dfa(g.alphabet, trans, 0, finals, labels)


def dfa_reachable(d: Dfa) -> Dfa:
    mask = _kernels.reachable(d.trans, d.start)
    if mask.all():
        return d
    old = np.flatnonzero(mask)
    new_id = np.full(d.n_states, -1, dtype=np.int64)
    new_id[old] = np.arange(old.size)
    labels = tuple(d.labels[s] for s in old) if d.labels is not None else None
    return Dfa(d.alphabet, new_id[d.trans[old]], int(new_id[d.start]), d.finals[old], labels)


def dfa_minimize(d: Dfa) -> Dfa:
    """Minimal complete DFA; states numbered in BFS order from the start."""
    if d.minimal:
        return d
    d = dfa_reachable(d)
    cls = _kernels.moore_classes(d.trans, d.finals)
    count = int(cls.max()) + 1
    rep = np.zeros(count, dtype=np.int64)
    rep[cls[::-1]] = np.arange(d.n_states)[::-1]
    trans = cls[d.trans[rep]]
    finals = d.finals[rep]
    start = int(cls[d.start])
    # canonical numbering: breadth-first from the start, letters in order
    order = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for t in trans[s]:
            t = int(t)
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    renum = np.empty(count, dtype=np.int64)
    renum[order] = np.arange(count)
    order = np.array(order)
    return Dfa(d.alphabet, renum[trans[order]], 0, finals[order], None, minimal=True)


def state_complexity(g: GridAutomaton) -> int:
    return dfa_minimize(dfa_from_grid(g)).n_states


def dfa_equivalent(a: Dfa, b: Dfa) -> bool:
    if a.alphabet != b.alphabet:
        raise ValueError(f"alphabets differ: {''.join(a.alphabet)!r} vs {''.join(b.alphabet)!r}")
    return not _kernels.distinguishable(a.trans, a.finals, a.start, b.trans, b.finals, b.start)


def grids_equivalent(a: GridAutomaton, b: GridAutomaton) -> bool:
    return dfa_equivalent(dfa_from_grid(a), dfa_from_grid(b))


def dfa_isomorphic(a: Dfa, b: Dfa) -> bool:
    """Structural equality of the canonical minimal forms."""
    ma, mb = dfa_minimize(a), dfa_minimize(b)
    return (
        ma.alphabet == mb.alphabet
        and np.array_equal(ma.trans, mb.trans)
        and np.array_equal(ma.finals, mb.finals)
    )


def is_permutation_dfa(d: Dfa) -> bool:
    """Every letter acts as a bijection on the states."""
    n = d.n_states
    return all(np.unique(d.trans[:, c]).size == n for c in range(len(d.alphabet)))


def transition_monoid(d: Dfa, budget: int = 100_000) -> set[bytes]:
    """All state transformations induced by words, as raw int64 byte strings."""
    n = d.n_states
    ident = np.arange(n, dtype=np.int64)
    gens = [np.ascontiguousarray(d.trans[:, c]) for c in range(len(d.alphabet))]
    seen = {ident.tobytes()}
    queue = deque([ident])
    while queue:
        m = queue.popleft()
        for g in gens:
            nxt = g[m]  # apply m, then the letter
            key = nxt.tobytes()
            if key not in seen:
                seen.add(key)
                if len(seen) > budget:
                    raise MonoidBudgetExceeded(f"transition monoid exceeds {budget} elements")
                queue.append(nxt)
    return seen


def is_aperiodic_dfa(d: Dfa, budget: int = 100_000) -> bool:
    """No word induces a nontrivial cycle: every m satisfies m^e = m^(e+1)."""
    for key in transition_monoid(d, budget):
        m = np.frombuffer(key, dtype=np.int64)
        power = m
        seen = {power.tobytes()}
        while True:
            nxt = m[power]
            if np.array_equal(nxt, power):
                break
            key_n = nxt.tobytes()
            if key_n in seen:
                return False
            seen.add(key_n)
            power = nxt
    return True


def to_dot(d: Dfa, name: str = "dfa") -> str:
    """Graphviz source; grid-derived states are labeled by their coordinate tuples."""
    lines = [f"digraph {name} {{", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for s in range(d.n_states):
        if d.labels is not None:
            label = "(" + ",".join(str(x) for x in d.labels[s]) + ")"
        else:
            label = str(s)
        shape = "doublecircle" if d.finals[s] else "circle"
        lines.append(f'  q{s} [shape={shape}, label="{label}"];')
    lines.append(f"  __start -> q{d.start};")
    for s in range(d.n_states):
        edges: dict[int, list[str]] = {}
        for c, letter in enumerate(d.alphabet):
            edges.setdefault(int(d.trans[s, c]), []).append(letter)
        for t in sorted(edges):
            lines.append(f'  q{s} -> q{t} [label="{",".join(edges[t])}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

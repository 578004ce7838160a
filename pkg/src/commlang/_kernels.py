"""Hot inner loops for DFA work.

Each kernel has a numba ``@njit`` body and a pure-numpy twin with the same
signature and the same output (class ids are renumbered by first occurrence,
so both paths agree bit for bit).  Set ``COMMLANG_DISABLE_NUMBA=1`` to force
the numpy path; it is also used automatically when numba cannot be imported.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("COMMLANG_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLED:
        raise ImportError("numba disabled by COMMLANG_DISABLE_NUMBA")
    import numba
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:
    numba = None
    NUMBA_AVAILABLE = False

BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"


# ---------------------------------------------------------------------------
# numpy implementations


def _first_occurrence(labels: np.ndarray) -> np.ndarray:
    """Renumber arbitrary labels 0, 1, 2, ... in order of first appearance."""
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return rank[inverse.reshape(-1)].astype(np.int64)


def _reachable_np(trans: np.ndarray, start: int) -> np.ndarray:
    n = trans.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    seen[start] = True
    frontier = np.array([start], dtype=np.int64)
    while frontier.size:
        nxt = np.unique(trans[frontier].reshape(-1))
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return seen


def _moore_np(trans: np.ndarray, finals: np.ndarray) -> np.ndarray:
    n, k = trans.shape
    cls = _first_occurrence(finals.astype(np.int64))
    count = int(cls.max()) + 1 if n else 0
    while True:
        key = cls.copy()
        for c in range(k):
            key = _first_occurrence(key * n + cls[trans[:, c]])
        new_count = int(key.max()) + 1 if n else 0
        cls = key
        if new_count == count:
            return cls
        count = new_count


def _distinguishable_np(ta, fa, sa, tb, fb, sb) -> bool:
    """Breadth-first search of the product from the start pair.

    Pairs are encoded as ``pa * nb + pb`` and the visited set only holds
    reachable pairs, never the full ``na * nb`` product.
    """
    nb = tb.shape[0]
    k = ta.shape[1]
    start = sa * nb + sb
    seen = np.array([start], dtype=np.int64)  # kept sorted
    frontier = seen
    while frontier.size:
        pa, pb = np.divmod(frontier, nb)
        if np.any(fa[pa] != fb[pb]):
            return True
        if k == 0:
            return False
        nxt = np.unique((ta[pa] * nb + tb[pb]).reshape(-1))
        pos = np.searchsorted(seen, nxt)
        fresh = (pos == seen.size) | (seen[np.minimum(pos, seen.size - 1)] != nxt)
        frontier = nxt[fresh]
        seen = np.union1d(seen, frontier)
    return False


def _sumset_np(a: np.ndarray, b: np.ndarray, length: int) -> np.ndarray:
    conv = np.convolve(a.astype(np.int64), b.astype(np.int64))
    out = np.zeros(length, dtype=np.bool_)
    m = min(length, conv.size)
    out[:m] = conv[:m] > 0
    return out


# ---------------------------------------------------------------------------
# numba implementations

if NUMBA_AVAILABLE:
    from numba import types
    from numba.typed import Dict

    @njit(cache=True)
    def _renumber_nb(key):
        table = Dict.empty(key_type=types.int64, value_type=types.int64)
        out = np.empty(key.size, dtype=np.int64)
        for s in range(key.size):
            v = key[s]
            if v in table:
                out[s] = table[v]
            else:
                idx = len(table)
                table[v] = idx
                out[s] = idx
        return out

    @njit(cache=True)
    def _reachable_nb(trans, start):
        n, k = trans.shape
        seen = np.zeros(n, dtype=np.bool_)
        stack = np.empty(n, dtype=np.int64)
        seen[start] = True
        stack[0] = start
        top = 1
        while top > 0:
            top -= 1
            s = stack[top]
            for c in range(k):
                t = trans[s, c]
                if not seen[t]:
                    seen[t] = True
                    stack[top] = t
                    top += 1
        return seen

    @njit(cache=True)
    def _moore_nb(trans, finals):
        n, k = trans.shape
        cls = _renumber_nb(finals.astype(np.int64))
        count = 0
        for s in range(n):
            if cls[s] + 1 > count:
                count = cls[s] + 1
        key = np.empty(n, dtype=np.int64)
        while True:
            key[:] = cls
            for c in range(k):
                comb = np.empty(n, dtype=np.int64)
                for s in range(n):
                    comb[s] = key[s] * n + cls[trans[s, c]]
                key = _renumber_nb(comb)
            new_count = 0
            for s in range(n):
                if key[s] + 1 > new_count:
                    new_count = key[s] + 1
            cls = key.copy()
            if new_count == count:
                return cls
            count = new_count

    @njit(cache=True)
    def _distinguishable_nb(ta, fa, sa, tb, fb, sb):
        k = ta.shape[1]
        nb = tb.shape[0]
        start = sa * nb + sb
        seen = {start}
        stack = [start]
        while len(stack) > 0:
            p = stack.pop()
            pa = p // nb
            pb = p % nb
            if fa[pa] != fb[pb]:
                return True
            for c in range(k):
                q = ta[pa, c] * nb + tb[pb, c]
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return False

    @njit(cache=True)
    def _sumset_nb(a, b, length):
        out = np.zeros(length, dtype=np.bool_)
        for i in range(min(a.size, length)):
            if a[i]:
                for j in range(min(b.size, length - i)):
                    if b[j]:
                        out[i + j] = True
        return out


# ---------------------------------------------------------------------------
# dispatch


def reachable(trans: np.ndarray, start: int, backend: str | None = None) -> np.ndarray:
    """Boolean mask of states reachable from ``start``."""
    trans = np.ascontiguousarray(trans, dtype=np.int64)
    if _pick(backend) == "numba":
        return _reachable_nb(trans, np.int64(start))
    return _reachable_np(trans, int(start))


def moore_classes(trans: np.ndarray, finals: np.ndarray, backend: str | None = None) -> np.ndarray:
    """Nerode class id of every state, numbered by first occurrence."""
    trans = np.ascontiguousarray(trans, dtype=np.int64)
    finals = np.ascontiguousarray(finals, dtype=np.bool_)
    if trans.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if _pick(backend) == "numba":
        return _moore_nb(trans, finals)
    return _moore_np(trans, finals)


def distinguishable(ta, fa, sa, tb, fb, sb, backend: str | None = None) -> bool:
    """True iff some word leads the two automata to disagreeing states."""
    ta = np.ascontiguousarray(ta, dtype=np.int64)
    tb = np.ascontiguousarray(tb, dtype=np.int64)
    fa = np.ascontiguousarray(fa, dtype=np.bool_)
    fb = np.ascontiguousarray(fb, dtype=np.bool_)
    if _pick(backend) == "numba":
        return bool(_distinguishable_nb(ta, fa, np.int64(sa), tb, fb, np.int64(sb)))
    return _distinguishable_np(ta, fa, int(sa), tb, fb, int(sb))


def sumset(a: np.ndarray, b: np.ndarray, length: int, backend: str | None = None) -> np.ndarray:
    """Indicator of {x + y} for indicator vectors ``a`` and ``b``, truncated to ``length``."""
    a = np.ascontiguousarray(a, dtype=np.bool_)
    b = np.ascontiguousarray(b, dtype=np.bool_)
    if _pick(backend) == "numba":
        return _sumset_nb(a, b, length)
    return _sumset_np(a, b, length)


def _pick(backend: str | None) -> str:
    if backend is None:
        return BACKEND
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and not NUMBA_AVAILABLE:
        raise RuntimeError("numba backend requested but numba is unavailable")
    return backend

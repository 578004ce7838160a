from itertools import product
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commlang.parikh import (
    InconsistentPrefix,
    UnarySet,
    lcm,
    parikh,
    reduce_lasso,
    unary_canonicalize,
    unary_complement,
    unary_intersection,
    unary_minkowski_sum,
    unary_union,
    vector_leq,
)


def bits(s):
    return [c == "1" for c in s]


@st.composite
def unary_sets(draw, max_index=4, max_period=4):
    i = draw(st.integers(0, max_index))
    p = draw(st.integers(1, max_period))
    b = draw(st.lists(st.booleans(), min_size=i + p, max_size=i + p))
    return UnarySet.of(i, p, b)


def naive_sum(a, b, limit):
    xs, ys = a.members(limit), b.members(limit)
    return {x + y for x in xs for y in ys if x + y < limit}


# -- canonicalization -------------------------------------------------------


def test_pure_periodic_prefix():
    u = unary_canonicalize(bits("101010"), (2, 2))
    assert (u.index, u.period, u.bits) == (0, 2, (True, False))


def test_single_residue_class():
    n = 3
    prefix = [m % n == n - 1 for m in range(9)]
    u = unary_canonicalize(prefix, (3, 3))
    assert (u.index, u.period, u.bits) == (0, 3, (False, False, True))


def test_two_then_tail():
    # {2} u {m >= 5}: 4 is rejected and 4 + 1 accepted, so index 5 is already minimal
    prefix = [m == 2 or m >= 5 for m in range(8)]
    u = unary_canonicalize(prefix, (6, 1))
    assert (u.index, u.period) == (5, 1)
    assert u.bits == tuple(bits("001001"))
    assert [m for m in range(12) if m in u] == [2] + list(range(5, 12))


def test_guarantee_violation_rejected():
    with pytest.raises(InconsistentPrefix):
        unary_canonicalize(bits("100100100"), (0, 2))


def test_prefix_too_short():
    with pytest.raises(ValueError):
        unary_canonicalize(bits("10"), (1, 1))


def test_degenerate_sets():
    assert UnarySet.empty().bits == (False,)
    assert UnarySet.full().bits == (True,)
    assert UnarySet.finite(3) == UnarySet(4, 1, tuple(bits("00010")))
    assert UnarySet.lasso(1, 2) == UnarySet(0, 2, (False, True))
    assert UnarySet.lasso(2, 0) == UnarySet.finite(2)


def test_invalid_representation():
    with pytest.raises(ValueError):
        UnarySet(0, 0, ())
    with pytest.raises(ValueError):
        UnarySet(1, 1, (True,))


@given(unary_sets())
def test_canonical_idempotent(u):
    assert u.is_canonical()
    assert UnarySet.of(u.index, u.period, u.bits) == u


@given(unary_sets())
def test_canonical_invariants(u):
    if u.index > 0:
        assert u.bits[u.index - 1] != u.bits[u.index + u.period - 1]
    cycle = u.bits[u.index :]
    for q in range(1, u.period):
        if u.period % q == 0:
            assert any(cycle[s] != cycle[(s + q) % u.period] for s in range(u.period))


def test_reduce_lasso_on_colors():
    assert reduce_lasso(["x", "y", "x", "y"], 0, 4) == (0, 2)
    assert reduce_lasso(["z", "x", "x"], 1, 2) == (1, 1)


# -- boolean operations -----------------------------------------------------


def test_union_partition():
    u = unary_union(UnarySet.lasso(0, 2), UnarySet.lasso(1, 2))
    assert u == UnarySet.full()


def test_union_example():
    u = unary_union(UnarySet.finite(2), UnarySet.lasso(5, 1))
    assert (u.index, u.period) == (5, 1)


def test_union_identity():
    x = UnarySet.lasso(2, 3)
    assert unary_union(x, UnarySet.empty()) == x


def test_intersection_crt():
    u = unary_intersection(UnarySet.lasso(0, 2), UnarySet.lasso(0, 3))
    assert u == UnarySet.lasso(0, 6)


@given(unary_sets())
def test_complement_laws(x):
    assert unary_complement(unary_complement(x)) == x
    assert unary_intersection(x, unary_complement(x)) == UnarySet.empty()
    assert unary_union(x, unary_complement(x)) == UnarySet.full()


@given(unary_sets(), unary_sets())
def test_boolean_ops_match_enumeration(a, b):
    limit = 4 * max(a.index + a.period, b.index + b.period)
    for op, f in ((unary_union, lambda x, y: x or y), (unary_intersection, lambda x, y: x and y)):
        r = op(a, b)
        assert r.is_canonical()
        assert r.index <= max(a.index, b.index)
        assert lcm(a.period, b.period) % r.period == 0
        for m in range(limit):
            assert (m in r) == f(m in a, m in b)


# -- Minkowski sums ---------------------------------------------------------


def test_sum_example():
    s = unary_minkowski_sum(UnarySet.lasso(1, 2), UnarySet.lasso(2, 3))
    assert s.index <= 5 and s.period == 1
    assert set(s.members(30)) == naive_sum(UnarySet.lasso(1, 2), UnarySet.lasso(2, 3), 30)


def test_sum_identity_and_empty():
    x = UnarySet.lasso(3, 4)
    assert unary_minkowski_sum(x, UnarySet.finite(0)) == x
    assert unary_minkowski_sum(x, UnarySet.empty()) == UnarySet.empty()


def test_sum_frobenius_gap():
    p, q = 2, 3
    s = unary_minkowski_sum(UnarySet.lasso(p - 1, p), UnarySet.lasso(q - 1, q))
    assert p * q - 2 not in s
    assert all(m in s for m in range(p * q - 1, 40))


def test_sum_index_zero_plus_singleton():
    # {0} + (aa)^* keeps period 2; a gcd-only guarantee would lose it
    s = unary_minkowski_sum(UnarySet.finite(0), UnarySet.lasso(0, 2))
    assert s == UnarySet.lasso(0, 2)


@given(unary_sets(), unary_sets())
@settings(max_examples=150)
def test_sum_matches_enumeration(a, b):
    s = unary_minkowski_sum(a, b)
    assert s.is_canonical()
    limit = 4 * (a.index + a.period + b.index + b.period) + 12
    assert set(s.members(limit)) == naive_sum(a, b, limit)


@given(unary_sets(3, 3), unary_sets(3, 3), unary_sets(3, 3))
@settings(max_examples=60)
def test_sum_commutative_associative(a, b, c):
    assert unary_minkowski_sum(a, b) == unary_minkowski_sum(b, a)
    left = unary_minkowski_sum(unary_minkowski_sum(a, b), c)
    right = unary_minkowski_sum(a, unary_minkowski_sum(b, c))
    assert left == right


def test_index_zero_sum_bound_periods_up_to_eight():
    # index-0 nonempty operands: index <= lcm - 1, period divides gcd
    rng = np.random.default_rng(7)
    for p, q in product(range(1, 9), repeat=2):
        for _ in range(3):
            a = UnarySet.of(0, p, rng.random(p) < 0.5)
            b = UnarySet.of(0, q, rng.random(q) < 0.5)
            if a.is_empty() or b.is_empty():
                continue
            s = unary_minkowski_sum(a, b)
            assert s.index <= lcm(p, q) - 1, (p, q, a, b, s)
            assert gcd(p, q) % s.period == 0, (p, q, a, b, s)


# -- Parikh vectors ---------------------------------------------------------


def test_parikh_vector():
    assert parikh("abba", "ab") == (2, 2)
    assert parikh("", "abc") == (0, 0, 0)
    with pytest.raises(ValueError):
        parikh("abz", "ab")


def test_vector_order():
    assert vector_leq((1, 2), (1, 3))
    assert not vector_leq((2, 0), (1, 5))

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commlang import grid as G
from commlang.dfa import (
    Dfa,
    MonoidBudgetExceeded,
    dfa_equivalent,
    dfa_from_grid,
    dfa_isomorphic,
    dfa_minimize,
    is_aperiodic_dfa,
    is_permutation_dfa,
    state_complexity,
    to_dot,
    transition_monoid,
)
from commlang.oracle import words_up_to
from commlang.parikh import UnarySet
from commlang.witnesses import parity_union, staircase, residue_language, single_powers

seeds = st.integers(0, 2**32 - 1)


def random_dfa(rng, n, k):
    return Dfa(G.default_alphabet(k), rng.integers(0, n, size=(n, k)), 0, rng.random(n) < 0.5)


def test_staircase_dfa_has_twelve_states():
    d = dfa_from_grid(staircase())
    assert d.n_states == 12
    assert d.labels[0] == (0, 0)
    for w in words_up_to("ab", 6):
        assert d.accepts(w) == staircase().accepts(w)


def test_sigma_star_single_state():
    d = dfa_from_grid(G.sigma_star("ab"))
    assert d.n_states == 1 and d.finals[0]


def test_parity_union_product_and_minimal():
    d = dfa_from_grid(parity_union())
    assert d.n_states == 8
    assert dfa_minimize(d).n_states == 8


def test_two_single_powers():
    # {aa, bb}: eps, a, b, accept, trap
    assert state_complexity(single_powers("ab", 2)) == 5


def test_shuffle_measurements():
    u, v = residue_language("ab", "a", 1, 2), residue_language("ab", "a", 2, 3)
    assert state_complexity(G.grid_shuffle(u, v)) == 6
    assert state_complexity(G.sigma_star("abc")) == 1
    p = G.grid_from_products("ab", [(UnarySet.lasso(1, 2),) * 2])
    q = G.grid_from_products("ab", [(UnarySet.lasso(2, 3),) * 2])
    assert state_complexity(G.grid_shuffle(p, q)) == 36


def test_equivalence():
    d = dfa_from_grid(staircase())
    assert dfa_equivalent(d, dfa_minimize(d))
    assert not dfa_equivalent(dfa_from_grid(G.empty_grid("ab")), dfa_from_grid(G.epsilon_grid("ab")))
    with pytest.raises(ValueError):
        dfa_equivalent(d, dfa_from_grid(G.sigma_star("abc")))


def test_saturating_automaton_by_hand():
    # hand transcription of the saturating 3x4 automaton for the upward closure
    states = [(x, y) for x in range(2) for y in range(3)]
    idx = {s: n for n, s in enumerate(states)}
    table = [[idx[(min(x + 1, 1), y)], idx[(x, min(y + 1, 2))]] for x, y in states]
    finals = [idx[(0, 2)], idx[(1, 1)], idx[(1, 2)]]
    middle = Dfa.from_table("ab", table, idx[(0, 0)], finals)
    assert dfa_equivalent(middle, dfa_from_grid(G.grid_upward_closure(staircase())))


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_minimize_properties(seed):
    rng = np.random.default_rng(seed)
    d = random_dfa(rng, int(rng.integers(1, 30)), int(rng.integers(1, 4)))
    m = dfa_minimize(d)
    assert m.n_states <= d.n_states
    assert dfa_minimize(m) is m
    assert dfa_equivalent(d, m)
    assert dfa_isomorphic(d, m)
    for w in words_up_to(d.alphabet, 4):
        assert d.accepts(w) == m.accepts(w)


@given(seeds)
@settings(max_examples=40, deadline=None)
def test_sandwich_and_classification(seed):
    rng = np.random.default_rng(seed)
    g = G.random_grid(rng, int(rng.integers(1, 4)))
    sc = state_complexity(g)
    sizes = [i + p for i, p in g.axes]
    assert max(sizes) <= sc <= int(np.prod(sizes))
    m = dfa_minimize(dfa_from_grid(g))
    assert is_permutation_dfa(m) == G.grid_is_group(g)
    assert is_aperiodic_dfa(m) == G.grid_is_aperiodic(g)


def test_classification_examples():
    assert is_permutation_dfa(dfa_minimize(dfa_from_grid(parity_union())))
    a3 = dfa_minimize(dfa_from_grid(G.vector_grid("a", (3,))))
    assert is_aperiodic_dfa(a3) and not is_permutation_dfa(a3)
    s = G.grid_shuffle(single_powers("ab", 2), single_powers("ab", 3))
    assert is_aperiodic_dfa(dfa_minimize(dfa_from_grid(s)))


def test_monoid_budget():
    d = dfa_minimize(dfa_from_grid(parity_union()))
    assert len(transition_monoid(d)) == 8
    with pytest.raises(MonoidBudgetExceeded):
        transition_monoid(d, budget=3)


def test_invalid_dfa():
    with pytest.raises(ValueError):
        Dfa("a", [[1]], 0, [True])
    with pytest.raises(ValueError):
        Dfa("a", [[0]], 2, [True])


def test_dot_export():
    text = to_dot(dfa_from_grid(staircase()), name="staircase")
    assert text.startswith("digraph staircase {")
    assert 'q0 [shape=circle, label="(0,0)"];' in text
    assert 'label="(0,2)"' in text and "doublecircle" in text
    assert text == to_dot(dfa_from_grid(staircase()), name="staircase")
    plain = to_dot(dfa_minimize(dfa_from_grid(staircase())))
    assert 'q0 [shape=circle, label="0"];' in plain

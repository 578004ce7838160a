import numpy as np
import pytest

from commlang import grid as G
from commlang.dfa import state_complexity
from commlang.witnesses import (
    EQUAL,
    EXACT,
    MATCHES,
    NOTED,
    VIOLATES,
    WITHIN,
    WitnessCase,
    WitnessError,
    aperiodic_suite,
    bound_violations,
    default_suite,
    parity_union,
    random_bound_sweep,
    render_markdown,
    run_case,
    run_report,
    witness_aperiodic_downward,
    witness_aperiodic_shuffle,
    witness_group_downward,
    witness_group_shuffle_coprime,
    witness_group_shuffle_sharp,
    witness_group_upward,
    witness_upward_blowup,
    witness_union_intersection,
)


def test_sharp_group_shuffle():
    r = run_case(witness_group_shuffle_sharp(2, 3, 2))
    assert (r.claimed, r.measured, r.operand_sc, r.verdict) == (36, 36, [4, 9], MATCHES)
    r = run_case(witness_group_shuffle_sharp(2, 3, 1))
    assert (r.claimed, r.measured) == (6, 6)


@pytest.mark.parametrize("n, m", [(2, 3), (3, 4), (1, 1)])
def test_coprime_shuffle(n, m):
    r = run_case(witness_group_shuffle_coprime(n, m))
    assert r.measured == n * m and r.verdict == MATCHES


@pytest.mark.parametrize("op", ["union", "intersection"])
@pytest.mark.parametrize("k", [1, 2])
def test_union_intersection(op, k):
    r = run_case(witness_union_intersection(2, 3, k, op))
    assert r.measured == 6 and r.verdict == MATCHES
    # n = 1 makes U all of Sigma^*: the intersection is V, the union Sigma^*
    r = run_case(witness_union_intersection(1, 4, k, op))
    assert r.measured == (4 if op == "intersection" else 1)


def test_group_upward_sc_and_index_note():
    r = run_case(witness_group_upward(4))
    assert r.measured == 4
    assert r.index_vector == (3, 0) and r.period_vector == (1, 1)
    assert r.verdict == NOTED
    assert run_case(witness_group_upward(4, k=1)).verdict == MATCHES
    assert run_case(witness_group_upward(1)).measured == 1


def test_group_downward_forms():
    for form in (False, True):
        assert run_case(witness_group_downward(parity_union(), "parity", statement_form=form)).verdict == MATCHES
    empty = G.empty_grid("ab")
    r = run_case(witness_group_downward(empty, "empty", doubtful=True))
    assert r.verdict == NOTED


def test_aperiodic_downward():
    for n, sc in [(0, 2), (1, 3), (3, 5)]:
        r = run_case(witness_aperiodic_downward(n))
        assert r.measured == sc and r.verdict == MATCHES


def test_upward_blowup():
    assert run_case(witness_upward_blowup(1, 1)).measured == 2
    r = run_case(witness_upward_blowup(2, 2))
    assert r.measured == 5 and r.verdict == WITHIN
    assert run_case(witness_upward_blowup(3, 2)).measured >= 9


def test_aperiodic_shuffle_measured_operands():
    r = run_case(witness_aperiodic_shuffle(1, 1))
    assert r.measured == 4 and r.operand_sc == [3, 3]
    r = run_case(witness_aperiodic_shuffle(2, 2))
    assert r.operand_sc == [5, 5]
    assert r.measured >= 5 * 5 / 4 + 1
    assert r.verdict == NOTED  # the stated operand size 2N+2 is off by one


def test_default_suite_shape():
    reports, table = run_report(default_suite())
    assert len(reports) >= 12
    assert all(r.verdict != VIOLATES for r in reports)
    exact = [r for r in reports if r.claim_kind in (EXACT, EQUAL)]
    assert all(r.verdict in (MATCHES, NOTED) for r in exact)
    header = table.splitlines()[0]
    for col in ("operation", "parameters", "claimed", "measured", "verdict"):
        assert col in header


def test_empty_report():
    reports, table = run_report([])
    assert reports == [] and len(table.strip().splitlines()) == 2
    assert render_markdown([]) == table


def test_single_case_report():
    reports, table = run_report([witness_group_shuffle_sharp(2, 3, 2)])
    assert len(reports) == 1 and reports[0].verdict == MATCHES
    assert len(table.strip().splitlines()) == 3


def test_builder_failure_names_case():
    def broken():
        raise RuntimeError("boom")

    case = WitnessCase("broken", {}, "identity", broken, "1", lambda sc: 1, EXACT)
    with pytest.raises(WitnessError, match="broken: boom"):
        run_case(case)


def test_false_exact_claim_is_violation():
    case = WitnessCase(
        "wrong", {}, "identity", lambda: (G.sigma_star("a"),), "2", lambda sc: 2, EXACT
    )
    assert run_case(case).verdict == VIOLATES


def test_family_classification():
    for case in aperiodic_suite():
        if case.name.startswith(("aperiodic", "upward_blowup")):
            assert all(G.grid_is_aperiodic(g) for g in case.builder())
    for p, q in [(2, 3), (3, 5)]:
        assert all(G.grid_is_group(g) for g in witness_group_shuffle_sharp(p, q, 2).builder())


def test_random_bound_sweeps():
    for kind in ("any", "group", "aperiodic"):
        assert random_bound_sweep(5, 60, kind=kind) == []


def test_bound_violations_clean_on_sample():
    rng = np.random.default_rng(0)
    g = G.random_grid(rng, 2)
    assert bound_violations(g) == []
    assert state_complexity(g) >= 1

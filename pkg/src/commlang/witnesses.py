"""Witness families and a harness that measures them against claimed values.

Claims are data.  Each case builds its operands, applies one grid operation,
measures the minimal DFA of the result and compares with the claimed number
or language.  Nothing here raises on a mismatch; the verdict records it.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from math import gcd, prod
from typing import Callable, Sequence

import numpy as np

from . import grid as G
from .dfa import grids_equivalent, state_complexity
from .grid import GridAutomaton
from .parikh import UnarySet, lcm

EXACT, LOWER, UPPER, EQUAL = "exact", "lower_bound", "upper_bound", "equal_language"
MATCHES, WITHIN, VIOLATES, NOTED = "matches", "within_bound", "violates", "discrepancy_noted"

OPERATIONS: dict[str, Callable[..., GridAutomaton]] = {
    "shuffle": G.grid_shuffle,
    "union": G.grid_union,
    "intersection": G.grid_intersection,
    "complement": G.grid_complement,
    "up": G.grid_upward_closure,
    "down": G.grid_downward_closure,
    "upint": G.grid_upward_interior,
    "downint": G.grid_downward_interior,
    "identity": lambda g: g,
}


class WitnessError(RuntimeError):
    pass


@dataclass(frozen=True)
class Probe:
    """A side check on the result; ``doubtful`` ones only ever note a discrepancy."""

    label: str
    check: Callable[[GridAutomaton, Sequence[GridAutomaton]], bool]
    doubtful: bool = False


@dataclass
class WitnessCase:
    name: str
    params: dict
    operation: str
    builder: Callable[[], tuple[GridAutomaton, ...]]
    claim_formula: str
    claim: Callable[[list[int]], float] | Callable[[Sequence[GridAutomaton]], GridAutomaton]
    claim_kind: str
    doubtful: bool = False
    probes: tuple[Probe, ...] = ()


@dataclass
class WitnessReport:
    name: str
    operation: str
    params: dict
    claim_formula: str
    claim_kind: str
    claimed: float | str
    measured: int
    operand_sc: list[int]
    index_vector: tuple[int, ...]
    period_vector: tuple[int, ...]
    verdict: str
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "operation": self.operation,
            "params": self.params,
            "claim_formula": self.claim_formula,
            "claim_kind": self.claim_kind,
            "claimed": self.claimed,
            "measured_sc": self.measured,
            "operand_sc": self.operand_sc,
            "index_vector": list(self.index_vector),
            "period_vector": list(self.period_vector),
            "verdict": self.verdict,
            "notes": self.notes,
        }


# ---------------------------------------------------------------------------
# language builders


def residue_language(alphabet: Sequence[str], letter: str, offset: int, modulus: int) -> GridAutomaton:
    """Words whose count of ``letter`` lies in ``offset + modulus*N``; other letters free."""
    return G.free_letters_grid(alphabet, letter, UnarySet.lasso(offset, modulus))


def letterwise_product(alphabet: Sequence[str], unary: UnarySet) -> GridAutomaton:
    """Shuffle over all letters of the same unary exponent set."""
    return G.grid_from_products(alphabet, [tuple(unary for _ in alphabet)])


def single_powers(alphabet: Sequence[str], n: int) -> GridAutomaton:
    """The finite language {a^n : a in alphabet}."""
    out = G.empty_grid(alphabet)
    for c in alphabet:
        out = G.grid_union(out, G.letter_grid(alphabet, c, UnarySet.finite(n)))
    return out


def parity_union() -> GridAutomaton:
    return G.grid_from_products(
        "ab",
        [(UnarySet.lasso(0, 2), UnarySet.lasso(0, 2)), (UnarySet.lasso(0, 4), UnarySet.full())],
    )


def staircase() -> GridAutomaton:
    return G.grid_from_products(
        "ab",
        [(UnarySet.finite(0), UnarySet.lasso(2, 2)), (UnarySet.lasso(1, 2), UnarySet.finite(1))],
    )


# ---------------------------------------------------------------------------
# witness families


def _operand_sc_is(*expected: int, doubtful: bool = False) -> Probe:
    def check(result, operands):
        return [state_complexity(g) for g in operands] == list(expected)

    return Probe(f"operand sc = {list(expected)}", check, doubtful)


def _vectors_are(index: tuple[int, ...] | None, period: tuple[int, ...] | None, doubtful: bool = False) -> Probe:
    def check(result, operands):
        v = G.grid_index_period(result)
        return (index is None or v.index_vector == index) and (period is None or v.period_vector == period)

    parts = []
    if index is not None:
        parts.append(f"index={index}")
    if period is not None:
        parts.append(f"period={period}")
    return Probe(" ".join(parts), check, doubtful)


def witness_group_shuffle_sharp(p: int, q: int, k: int) -> WitnessCase:
    alphabet = G.default_alphabet(k)
    claimed = (gcd(p, q) + lcm(p, q) - 1) ** k
    return WitnessCase(
        name=f"group_shuffle_sharp(p={p},q={q},k={k})",
        params={"p": p, "q": q, "k": k},
        operation="shuffle",
        builder=lambda: (
            letterwise_product(alphabet, UnarySet.lasso(p - 1, p)),
            letterwise_product(alphabet, UnarySet.lasso(q - 1, q)),
        ),
        claim_formula="(gcd(p,q)+lcm(p,q)-1)^k",
        claim=lambda _sc: claimed,
        claim_kind=EXACT,
        probes=(
            _operand_sc_is(p**k, q**k),
            _vectors_are((lcm(p, q) - 1,) * k, (gcd(p, q),) * k),
        ),
    )


def witness_group_shuffle_coprime(n: int, m: int) -> WitnessCase:
    alphabet = ("a", "b")

    def frobenius(result, operands):
        top = n * m
        rejected = top < 2 or (top - 2, 0) not in result
        accepted = all((x, 0) in result for x in range(max(top - 1, 0), top + 2 * n * m))
        return rejected and accepted

    return WitnessCase(
        name=f"group_shuffle_coprime(n={n},m={m})",
        params={"n": n, "m": m},
        operation="shuffle",
        builder=lambda: (
            residue_language(alphabet, "a", n - 1, n),
            residue_language(alphabet, "a", m - 1, m),
        ),
        claim_formula="nm",
        claim=lambda _sc: n * m,
        claim_kind=EXACT,
        probes=(_operand_sc_is(n, m), Probe("a^(nm-2) rejected, a^(>=nm-1) accepted", frobenius)),
    )


def witness_union_intersection(n: int, m: int, k: int = 2, operation: str = "union") -> WitnessCase:
    alphabet = G.default_alphabet(k)
    return WitnessCase(
        name=f"group_{operation}(n={n},m={m},k={k})",
        params={"n": n, "m": m, "k": k},
        operation=operation,
        builder=lambda: (
            residue_language(alphabet, "a", 0, n),
            residue_language(alphabet, "a", 0, m),
        ),
        claim_formula="nm",
        claim=lambda _sc: n * m,
        claim_kind=EXACT,
        probes=(_operand_sc_is(n, m),),
    )


def witness_group_upward(n: int, k: int = 2) -> WitnessCase:
    alphabet = G.default_alphabet(k)
    stated_index = (n - 1,) + (1,) * (k - 1)
    return WitnessCase(
        name=f"group_upward(n={n},k={k})",
        params={"n": n, "k": k},
        operation="up",
        builder=lambda: (residue_language(alphabet, "a", n - 1, n),),
        claim_formula="n",
        claim=lambda _sc: n,
        claim_kind=EXACT,
        probes=(
            _operand_sc_is(n),
            _vectors_are(None, (1,) * k),
            # the stated index vector puts 1 on the free letters; their Nerode index is 0
            _vectors_are(stated_index, None, doubtful=True),
        ),
    )


def witness_group_downward(
    sample: GridAutomaton, label: str = "sample", *, statement_form: bool = False, doubtful: bool = False
) -> WitnessCase:
    """Downward closure of a group language.

    The proof form compares with alph(L)^*, the statement form with Sigma^*.
    A nonempty commutative group language uses every letter (index 0 puts
    count 0 and count p in one class), so the two only part ways on the
    empty language, which has index vector 0 yet is excluded by the claim.
    """
    alphabet = sample.alphabet
    if statement_form:
        formula = "down(L) = Sigma^*"
        claim = lambda ops: G.sigma_star(alphabet)
    else:
        formula = "down(L) = alph(L)^*"
        claim = lambda ops: G.restricted_sigma_star(alphabet, G.grid_alphabet(ops[0]))
    return WitnessCase(
        name=f"group_downward({label}{', statement' if statement_form else ''})",
        params={"sample": label},
        operation="down",
        builder=lambda: (sample,),
        claim_formula=formula,
        claim=claim,
        claim_kind=EQUAL,
        doubtful=doubtful,
        probes=(Probe("operand is a group language", lambda r, ops: G.grid_is_group(ops[0])),),
    )


def witness_aperiodic_downward(n: int) -> WitnessCase:
    return WitnessCase(
        name=f"aperiodic_downward(n={n})",
        params={"n": n},
        operation="down",
        builder=lambda: (G.vector_grid("a", (n,)),),
        claim_formula="n+2",
        claim=lambda _sc: n + 2,
        claim_kind=EXACT,
        probes=(_operand_sc_is(n + 2),),
    )


def witness_upward_blowup(N: int, k: int) -> WitnessCase:
    alphabet = G.default_alphabet(k)
    return WitnessCase(
        name=f"upward_blowup(N={N},k={k})",
        params={"N": N, "k": k},
        operation="up",
        builder=lambda: (single_powers(alphabet, N),),
        claim_formula="N^k",
        claim=lambda _sc: N**k,
        claim_kind=LOWER,
        probes=(Probe("operand is aperiodic", lambda r, ops: G.grid_is_aperiodic(ops[0])),),
    )


def witness_aperiodic_shuffle(N: int, M: int) -> WitnessCase:
    """Finite two-letter witnesses; the bound is evaluated on measured operand sizes."""
    alphabet = ("a", "b")
    return WitnessCase(
        name=f"aperiodic_shuffle(N={N},M={M})",
        params={"N": N, "M": M},
        operation="shuffle",
        builder=lambda: (single_powers(alphabet, N), single_powers(alphabet, M)),
        claim_formula="sc(U)*sc(V)/4+1",
        claim=lambda sc: sc[0] * sc[1] / 4 + 1,
        claim_kind=LOWER,
        probes=(
            Probe("result is aperiodic", lambda r, ops: G.grid_is_aperiodic(r)),
            # operand sizes stated as |Sigma|N+2; minimization merges the two accepting ends
            _operand_sc_is(2 * N + 2, 2 * M + 2, doubtful=True),
        ),
    )


def witness_closure_bound(sample: GridAutomaton, label: str, operation: str) -> WitnessCase:
    """sc of a closure or interior against prod(i_j + p_j) of the input."""
    vectors = G.grid_index_period(sample)
    bound = prod(i + p for i, p in zip(vectors.index_vector, vectors.period_vector))
    return WitnessCase(
        name=f"closure_bound({label},{operation})",
        params={"sample": label},
        operation=operation,
        builder=lambda: (sample,),
        claim_formula="prod(i_j+p_j)",
        claim=lambda _sc: bound,
        claim_kind=UPPER,
    )


def witness_aperiodic_shuffle_bound(N: int, M: int, k: int) -> WitnessCase:
    """Shuffle of two finite aperiodic languages against prod(i_j + i'_j + 1)."""
    alphabet = G.default_alphabet(k)

    def build():
        return single_powers(alphabet, N), single_powers(alphabet, M)

    def claim(_sc):
        a, b = build()
        ia, ib = G.grid_index_period(a).index_vector, G.grid_index_period(b).index_vector
        return prod(x + y + 1 for x, y in zip(ia, ib))

    return WitnessCase(
        name=f"aperiodic_shuffle_bound(N={N},M={M},k={k})",
        params={"N": N, "M": M, "k": k},
        operation="shuffle",
        builder=build,
        claim_formula="prod(i_j+i'_j+1)",
        claim=claim,
        claim_kind=UPPER,
        probes=(Probe("result is aperiodic", lambda r, ops: G.grid_is_aperiodic(r)),),
    )


# ---------------------------------------------------------------------------
# suites


def group_suite() -> list[WitnessCase]:
    cases = [
        witness_group_shuffle_sharp(2, 3, 1),
        witness_group_shuffle_sharp(2, 3, 2),
        witness_group_shuffle_sharp(2, 5, 1),
        witness_group_shuffle_sharp(3, 5, 1),
    ]
    cases += [witness_group_shuffle_coprime(n, m) for n, m in [(1, 1), (2, 3), (3, 4), (2, 5)]]
    for k in (1, 2):
        for n, m in [(2, 3), (3, 4), (2, 5)]:
            cases.append(witness_union_intersection(n, m, k, "union"))
            cases.append(witness_union_intersection(n, m, k, "intersection"))
    cases += [witness_group_upward(n) for n in range(1, 7)]
    samples = [(parity_union(), "parity_union"), (G.free_letters_grid("ab", "a", UnarySet.lasso(0, 2)), "(aa)*<>b*")]
    for sample, label in samples:
        cases.append(witness_group_downward(sample, label))
        cases.append(witness_group_downward(sample, label, statement_form=True))
    for form in (False, True):
        cases.append(witness_group_downward(G.empty_grid("ab"), "empty", statement_form=form, doubtful=True))
    return cases


def aperiodic_suite() -> list[WitnessCase]:
    cases = [witness_aperiodic_downward(n) for n in range(0, 6)]
    cases += [witness_upward_blowup(N, k) for N, k in [(1, 1), (2, 2), (3, 2), (4, 2)]]
    cases += [witness_aperiodic_shuffle(N, M) for N, M in [(1, 1), (2, 2), (3, 3), (3, 2), (4, 4)]]
    cases += [witness_aperiodic_shuffle_bound(N, M, 2) for N, M in [(1, 2), (2, 3), (3, 3)]]
    return cases


def default_suite() -> list[WitnessCase]:
    cases = group_suite() + aperiodic_suite()
    for op in ("up", "down", "upint", "downint"):
        cases.append(witness_closure_bound(staircase(), "staircase", op))
    return cases


SUITES = {"default": default_suite, "group": group_suite, "aperiodic": aperiodic_suite}


# ---------------------------------------------------------------------------
# running


def _compare(kind: str, claimed: float, measured: float) -> bool:
    if kind == EXACT:
        return measured == claimed
    if kind == UPPER:
        return measured <= claimed
    if kind == LOWER:
        return measured >= claimed
    raise ValueError(f"unknown claim kind {kind!r}")


def run_case(case: WitnessCase) -> WitnessReport:
    try:
        operands = case.builder()
        result = OPERATIONS[case.operation](*operands)
    except Exception as exc:
        raise WitnessError(f"{case.name}: {exc}") from exc
    operand_sc = [state_complexity(g) for g in operands]
    measured = state_complexity(result)
    vectors = G.grid_index_period(result)
    notes = []
    if case.claim_kind == EQUAL:
        expected = case.claim(operands)
        ok = grids_equivalent(result, expected)
        claimed: float | str = case.claim_formula
        if not ok:
            notes.append(f"language differs from claim (claimed sc={state_complexity(expected)})")
    else:
        claimed = case.claim(operand_sc)
        ok = _compare(case.claim_kind, claimed, measured)
        if isinstance(claimed, float) and claimed.is_integer():
            claimed = int(claimed)
    hard_probe_failed = soft_probe_failed = False
    for probe in case.probes:
        if not probe.check(result, operands):
            notes.append(f"probe failed: {probe.label}")
            if probe.doubtful:
                soft_probe_failed = True
            else:
                hard_probe_failed = True
    if not ok:
        verdict = NOTED if case.doubtful else VIOLATES
    elif hard_probe_failed:
        verdict = VIOLATES
    elif soft_probe_failed:
        verdict = NOTED
    else:
        verdict = MATCHES if case.claim_kind in (EXACT, EQUAL) else WITHIN
    return WitnessReport(
        name=case.name,
        operation=case.operation,
        params=dict(case.params),
        claim_formula=case.claim_formula,
        claim_kind=case.claim_kind,
        claimed=claimed,
        measured=measured,
        operand_sc=operand_sc,
        index_vector=vectors.index_vector,
        period_vector=vectors.period_vector,
        verdict=verdict,
        notes=notes,
    )


def run_report(cases: Sequence[WitnessCase]) -> tuple[list[WitnessReport], str]:
    reports = [run_case(c) for c in cases]
    return reports, render_markdown(reports)


def _fmt_params(params: dict) -> str:
    return ", ".join(f"{k}={v}" for k, v in params.items())


def _fmt_claim(r: WitnessReport) -> str:
    sign = {EXACT: "=", UPPER: "<=", LOWER: ">=", EQUAL: ""}[r.claim_kind]
    if r.claim_kind == EQUAL:
        return r.claim_formula
    value = f"{r.claimed:.2f}" if isinstance(r.claimed, float) else str(r.claimed)
    return f"{sign} {value} ({r.claim_formula})"


def render_markdown(reports: Sequence[WitnessReport]) -> str:
    header = "| case | operation | parameters | claimed | measured | verdict | notes |"
    rule = "|---|---|---|---|---|---|---|"
    if not reports:
        return header + "\n" + rule + "\n"
    rows = [header, rule]
    for r in reports:
        measured = f"sc={r.measured}"
        if r.operand_sc:
            measured += f" (operands {r.operand_sc})"
        rows.append(
            f"| {r.name} | {r.operation} | {_fmt_params(r.params)} | {_fmt_claim(r)} | {measured} | {r.verdict} | {'; '.join(r.notes)} |"
        )
    return "\n".join(rows) + "\n"


def render_csv(reports: Sequence[WitnessReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["case", "operation", "parameters", "claim_kind", "claimed", "measured_sc", "operand_sc", "index_vector", "period_vector", "verdict", "notes"])
    for r in reports:
        w.writerow([
            r.name, r.operation, _fmt_params(r.params), r.claim_kind, r.claimed, r.measured,
            " ".join(map(str, r.operand_sc)), " ".join(map(str, r.index_vector)),
            " ".join(map(str, r.period_vector)), r.verdict, "; ".join(r.notes),
        ])
    return buf.getvalue()


def render_json(reports: Sequence[WitnessReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


# ---------------------------------------------------------------------------
# bound sweeps on random grids


def bound_violations(g: GridAutomaton, h: GridAutomaton | None = None) -> list[str]:
    """Every upper bound that applies to ``g`` (and the pair ``g, h``), checked by measurement."""
    out = []
    v = G.grid_index_period(g)
    box = prod(i + p for i, p in zip(v.index_vector, v.period_vector))
    sc = state_complexity(g)
    lower = max((i + p for i, p in zip(v.index_vector, v.period_vector)), default=1)
    if not lower <= sc <= box:
        out.append(f"index/period sandwich: {lower} <= {sc} <= {box} fails")
    for name, construct in (("up", G.upward_automaton), ("down", G.downward_automaton)):
        if construct(g).size > box:
            out.append(f"{name} construction has {construct(g).size} > {box} states")
    for op in ("up", "down", "upint", "downint"):
        c = state_complexity(OPERATIONS[op](g))
        if c > box:
            out.append(f"sc({op}) = {c} > prod(i+p) = {box}")
        if c > sc ** g.k and g.k > 0:
            out.append(f"sc({op}) = {c} > sc^k = {sc ** g.k}")
    if h is None:
        return out
    s = G.grid_shuffle(g, h)
    sv = G.grid_index_period(s)
    w = G.grid_index_period(h)
    if G.grid_is_aperiodic(g) and G.grid_is_aperiodic(h):
        if not G.grid_is_aperiodic(s):
            out.append("shuffle of aperiodic languages is not aperiodic")
        for j, (x, y, z) in enumerate(zip(v.index_vector, w.index_vector, sv.index_vector)):
            if z > x + y:
                out.append(f"aperiodic shuffle index[{j}] = {z} > {x} + {y}")
    if G.grid_is_group(g) and G.grid_is_group(h) and not g.is_empty() and not h.is_empty():
        for j, (p, q, i, r) in enumerate(zip(v.period_vector, w.period_vector, sv.index_vector, sv.period_vector)):
            if i > lcm(p, q) - 1 or gcd(p, q) % r:
                out.append(f"group shuffle axis {j}: index {i}, period {r} vs lcm-1 = {lcm(p, q) - 1}, gcd = {gcd(p, q)}")
        scs = state_complexity(s)
        bound = (sc * state_complexity(h)) ** g.k
        if scs > bound:
            out.append(f"group shuffle sc {scs} > (nm)^k = {bound}")
    return out


def random_bound_sweep(seed: int, count: int, *, kind: str = "any", max_k: int = 3) -> list[str]:
    rng = np.random.default_rng(seed)
    problems = []
    for n in range(count):
        k = int(rng.integers(1, max_k + 1))
        g = G.random_grid(rng, k, kind=kind)
        h = G.random_grid(rng, k, kind=kind)
        problems += [f"case {n}: {msg}" for msg in bound_violations(g, h)]
    return problems

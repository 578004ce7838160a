"""Differential fuzzing: every grid operation against the box oracle."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import grid as G
from . import oracle as O
from .grid import GridAutomaton

OPERATION_NAMES = (
    "shuffle",
    "union",
    "intersection",
    "complement",
    "projection",
    "up",
    "down",
    "upint",
    "downint",
)


@dataclass(frozen=True)
class Counterexample:
    operation: str
    operands: tuple[GridAutomaton, ...]
    vector: tuple[int, ...]
    grid_says: bool
    oracle_says: bool
    letters: tuple[str, ...] | None = None

    def to_dict(self) -> dict:
        out = {
            "operation": self.operation,
            "operands": [g.to_dict() for g in self.operands],
            "vector": list(self.vector),
            "grid": self.grid_says,
            "oracle": self.oracle_says,
        }
        if self.letters is not None:
            out["letters"] = "".join(self.letters)
        return out


@dataclass
class FuzzResult:
    cases: int = 0
    checks: dict[str, int] = field(default_factory=lambda: {op: 0 for op in OPERATION_NAMES})
    counterexamples: list[Counterexample] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        lines = [f"{op:<13} {self.checks[op]:>6} checks" for op in OPERATION_NAMES]
        total = sum(self.checks.values())
        verdict = "ok" if self.ok else "FAIL"
        lines.append(f"{verdict}: {self.cases} cases, {total} checks, {len(self.counterexamples)} mismatches")
        return "\n".join(lines)


def _down_bound(g: GridAutomaton, bound: Sequence[int]) -> tuple[int, ...]:
    # witnesses above the result box live within one more period past saturation
    return tuple(max(b, i + p) + p for b, (i, p) in zip(bound, g.axes))


def oracle_for(
    operation: str, g: GridAutomaton, h: GridAutomaton, letters: Sequence[str], bound: Sequence[int]
) -> O.BoxLanguage:
    """Reference result of ``operation`` on the box ``bound``."""
    bound = tuple(bound)
    if operation == "union":
        return O.box_union(O.box_from_grid(g, bound), O.box_from_grid(h, bound))
    if operation == "intersection":
        return O.box_intersection(O.box_from_grid(g, bound), O.box_from_grid(h, bound))
    if operation == "complement":
        return O.box_complement(O.box_from_grid(g, bound))
    if operation == "shuffle":
        return O.box_minkowski(O.box_from_grid(g, bound), O.box_from_grid(h, bound), bound)
    if operation == "up":
        return O.box_up_closure(O.box_from_grid(g, bound))
    if operation == "downint":
        return O.box_downward_interior(O.box_from_grid(g, bound))
    if operation in ("down", "upint"):
        big = O.box_from_grid(g, _down_bound(g, bound))
        fn = O.box_down_closure if operation == "down" else O.box_upward_interior
        return fn(big, bound)
    if operation == "projection":
        keep = [j for j, c in enumerate(g.alphabet) if c in letters]
        it = iter(bound)
        # erased coordinates only need to reach the operand's saturation corner
        full = tuple(next(it) if j in keep else s for j, s in enumerate(g.saturation_corner))
        return O.box_projection(O.box_from_grid(g, full), keep)
    raise ValueError(f"unknown operation {operation!r}")


def apply_operation(operation: str, g: GridAutomaton, h: GridAutomaton, letters: Sequence[str]) -> GridAutomaton:
    table: dict[str, Callable[[], GridAutomaton]] = {
        "shuffle": lambda: G.grid_shuffle(g, h),
        "union": lambda: G.grid_union(g, h),
        "intersection": lambda: G.grid_intersection(g, h),
        "complement": lambda: G.grid_complement(g),
        "projection": lambda: G.grid_projection(g, letters),
        "up": lambda: G.grid_upward_closure(g),
        "down": lambda: G.grid_downward_closure(g),
        "upint": lambda: G.grid_upward_interior(g),
        "downint": lambda: G.grid_downward_interior(g),
    }
    return table[operation]()


def check_pair(g: GridAutomaton, h: GridAutomaton, letters: Sequence[str]) -> tuple[dict[str, int], list[Counterexample]]:
    """Run all nine operations on ``(g, h)``; the projection keeps ``letters``."""
    checks = {}
    found = []
    for op in OPERATION_NAMES:
        result = apply_operation(op, g, h, letters)
        bound = O.default_corner(result)
        box = oracle_for(op, g, h, letters, bound)
        checks[op] = int(box.mask.size)
        v = O.oracle_mismatch(result, box)
        if v is not None:
            operands = (g, h) if op in ("shuffle", "union", "intersection") else (g,)
            found.append(
                Counterexample(op, operands, v, v in result, bool(box.mask[v]),
                               tuple(letters) if op == "projection" else None)
            )
    return checks, found


def sample_pair(
    rng: np.random.Generator, max_k: int, max_index: int, max_period: int
) -> tuple[GridAutomaton, GridAutomaton, tuple[str, ...]]:
    k = int(rng.integers(1, max_k + 1))
    g = G.random_grid(rng, k, max_index, max_period)
    h = G.random_grid(rng, k, max_index, max_period)
    keep = rng.random(k) < 0.5
    letters = tuple(c for c, x in zip(g.alphabet, keep) if x)
    return g, h, letters


def run_fuzz(
    seed: int = 0,
    cases: int = 100,
    max_k: int = 3,
    max_index: int = 3,
    max_period: int = 3,
    *,
    stop_at_first: bool = True,
) -> FuzzResult:
    rng = np.random.default_rng(seed)
    result = FuzzResult()
    for _ in range(cases):
        g, h, letters = sample_pair(rng, max_k, max_index, max_period)
        checks, found = check_pair(g, h, letters)
        result.cases += 1
        for op, n in checks.items():
            result.checks[op] += n
        result.counterexamples += found
        if found and stop_at_first:
            break
    return result


def describe(cx: Counterexample) -> str:
    return json.dumps(cx.to_dict(), sort_keys=True)

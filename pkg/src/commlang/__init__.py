"""Commutative regular languages as grid automata."""
from .dfa import Dfa, dfa_equivalent, dfa_from_grid, dfa_minimize, state_complexity, to_dot
from .expr import ParseError, eval_text, parse, render
from .grid import (
    GridAutomaton,
    grid_canonicalize,
    grid_complement,
    grid_decompose,
    grid_downward_closure,
    grid_downward_interior,
    grid_index_period,
    grid_intersection,
    grid_projection,
    grid_shuffle,
    grid_union,
    grid_upward_closure,
    grid_upward_interior,
)
from .parikh import UnarySet, unary_minkowski_sum

__all__ = [
    "Dfa",
    "GridAutomaton",
    "ParseError",
    "UnarySet",
    "dfa_equivalent",
    "dfa_from_grid",
    "dfa_minimize",
    "eval_text",
    "grid_canonicalize",
    "grid_complement",
    "grid_decompose",
    "grid_downward_closure",
    "grid_downward_interior",
    "grid_index_period",
    "grid_intersection",
    "grid_projection",
    "grid_shuffle",
    "grid_union",
    "grid_upward_closure",
    "grid_upward_interior",
    "parse",
    "render",
    "state_complexity",
    "to_dot",
    "unary_minkowski_sum",
]

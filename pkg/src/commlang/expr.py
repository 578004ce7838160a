"""One-line expression syntax for commutative languages.

    expr   := term { "|" term }
    term   := shuf { "&" shuf }
    shuf   := unary { "<>" unary }
    unary  := "!" unary | primary
    primary:= "(" expr ")" | "up(" expr ")" | "down(" expr ")"
            | "upint(" expr ")" | "downint(" expr ")"
            | "proj{" letters "}(" expr ")"
            | "sigma*" | "empty" | "eps"
            | "[" NAT { "," NAT } "]"          -- all words with that Parikh vector
            | LETTER "{" NAT "}"                 -- a{3} = {aaa}
            | LETTER "{" NAT "+" NAT "}"         -- a{i+p} = a^i (a^p)^*

Shuffle binds tighter than ``&``, which binds tighter than ``|``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from . import grid as G
from .grid import GridAutomaton
from .parikh import UnarySet

Span = tuple[int, int]


class ExprError(ValueError):
    def __init__(self, message: str, span: Span | None = None, text: str | None = None):
        self.message = message
        self.span = span
        self.text = text
        super().__init__(self.render())

    def render(self) -> str:
        if self.span is None:
            return self.message
        start, end = self.span
        out = f"{self.message} at column {start + 1}"
        if self.text is not None:
            width = max(1, end - start)
            out += f"\n  {self.text}\n  {' ' * start}{'^' * width}"
        return out


class ParseError(ExprError):
    pass


class EvalError(ExprError):
    pass


# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class UnaryAtom:
    letter: str
    offset: int
    period: int  # 0 means the finite set {offset}
    span: Span


@dataclass(frozen=True)
class WordAtom:
    vector: tuple[int, ...]
    span: Span


@dataclass(frozen=True)
class SigmaStar:
    span: Span


@dataclass(frozen=True)
class Empty:
    span: Span


@dataclass(frozen=True)
class Eps:
    span: Span


@dataclass(frozen=True)
class Binary:
    op: str  # "shuffle" | "union" | "intersection"
    left: "LangExpr"
    right: "LangExpr"
    span: Span


@dataclass(frozen=True)
class Apply:
    op: str  # "complement" | "up" | "down" | "upint" | "downint"
    arg: "LangExpr"
    span: Span


@dataclass(frozen=True)
class Projection:
    letters: tuple[str, ...]
    arg: "LangExpr"
    span: Span


LangExpr = Union[UnaryAtom, WordAtom, SigmaStar, Empty, Eps, Binary, Apply, Projection]

_FUNCTIONS = ("upint(", "downint(", "up(", "down(")
_CONSTANTS = {"sigma*": SigmaStar, "empty": Empty, "eps": Eps}


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, alphabet: Sequence[str]):
        self.text = text
        self.alphabet = tuple(alphabet)
        self.pos = 0

    def error(self, message: str, start: int | None = None, end: int | None = None) -> ParseError:
        start = self.pos if start is None else start
        end = start + 1 if end is None else end
        return ParseError(message, (start, end), self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, token: str) -> bool:
        self.skip()
        return self.text.startswith(token, self.pos)

    def accept(self, token: str) -> bool:
        if self.peek(token):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str) -> None:
        if not self.accept(token):
            found = self.text[self.pos : self.pos + 1] or "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")

    def nat(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a natural number")
        return int(self.text[start : self.pos])

    def parse(self) -> LangExpr:
        self.skip()
        if self.pos == len(self.text):
            raise ParseError("empty expression", (0, 1), self.text)
        node = self.expr()
        self.skip()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.text[self.pos]!r}")
        return node

    def expr(self) -> LangExpr:
        start = self._start()
        node = self.term()
        while self.accept("|"):
            node = Binary("union", node, self.term(), (start, self.pos))
        return node

    def term(self) -> LangExpr:
        start = self._start()
        node = self.shuf()
        while self.accept("&"):
            node = Binary("intersection", node, self.shuf(), (start, self.pos))
        return node

    def shuf(self) -> LangExpr:
        start = self._start()
        node = self.unary()
        while self.accept("<>"):
            node = Binary("shuffle", node, self.unary(), (start, self.pos))
        return node

    def unary(self) -> LangExpr:
        start = self._start()
        if self.accept("!"):
            return Apply("complement", self.unary(), (start, self.pos))
        return self.primary()

    def _start(self) -> int:
        self.skip()
        return self.pos

    def primary(self) -> LangExpr:
        start = self._start()
        if self.pos == len(self.text):
            raise self.error("unexpected end of input")
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        for fn in _FUNCTIONS:
            if self.accept(fn):
                arg = self.expr()
                self.expect(")")
                return Apply(fn[:-1], arg, (start, self.pos))
        if self.accept("proj{"):
            letters = []
            while not self.peek("}"):
                if self.pos >= len(self.text):
                    raise self.error("unterminated letter set")
                c = self.text[self.pos]
                if c not in self.alphabet:
                    raise self.error(f"unknown letter {c!r}")
                letters.append(c)
                self.pos += 1
            self.expect("}")
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Projection(tuple(dict.fromkeys(letters)), arg, (start, self.pos))
        for word, cls in _CONSTANTS.items():
            if self.accept(word):
                return cls((start, self.pos))
        if self.accept("["):
            values = [self.nat()]
            while self.accept(","):
                values.append(self.nat())
            self.expect("]")
            if len(values) != len(self.alphabet):
                raise self.error(
                    f"vector has {len(values)} entries for an alphabet of {len(self.alphabet)} letters",
                    start,
                    self.pos,
                )
            return WordAtom(tuple(values), (start, self.pos))
        c = self.text[self.pos]
        if c.isalpha():
            if c not in self.alphabet:
                raise self.error(f"unknown letter {c!r}")
            self.pos += 1
            self.expect("{")
            offset = self.nat()
            period = 0
            if self.accept("+"):
                period = self.nat()
            self.expect("}")
            return UnaryAtom(c, offset, period, (start, self.pos))
        raise self.error(f"unexpected {c!r}")


def parse(text: str, alphabet: Sequence[str]) -> LangExpr:
    return _Parser(text, alphabet).parse()


# ---------------------------------------------------------------------------
# evaluation


_UNARY_OPS = {
    "complement": G.grid_complement,
    "up": G.grid_upward_closure,
    "down": G.grid_downward_closure,
    "upint": G.grid_upward_interior,
    "downint": G.grid_downward_interior,
}
_BINARY_OPS = {
    "shuffle": G.grid_shuffle,
    "union": G.grid_union,
    "intersection": G.grid_intersection,
}


def evaluate(node: LangExpr, alphabet: Sequence[str], text: str | None = None) -> GridAutomaton:
    alphabet = tuple(alphabet)
    if isinstance(node, UnaryAtom):
        return G.letter_grid(alphabet, node.letter, UnarySet.lasso(node.offset, node.period))
    if isinstance(node, WordAtom):
        return G.vector_grid(alphabet, node.vector)
    if isinstance(node, SigmaStar):
        return G.sigma_star(alphabet)
    if isinstance(node, Empty):
        return G.empty_grid(alphabet)
    if isinstance(node, Eps):
        return G.epsilon_grid(alphabet)
    if isinstance(node, Apply):
        return _UNARY_OPS[node.op](evaluate(node.arg, alphabet, text))
    if isinstance(node, Projection):
        arg = evaluate(node.arg, alphabet, text)
        missing = [c for c in node.letters if c not in arg.alphabet]
        if missing:
            raise EvalError(f"cannot project onto {''.join(missing)!r}: already erased", node.span, text)
        return G.grid_projection(arg, node.letters)
    if isinstance(node, Binary):
        left = evaluate(node.left, alphabet, text)
        right = evaluate(node.right, alphabet, text)
        try:
            return _BINARY_OPS[node.op](left, right)
        except G.AlphabetMismatch as exc:
            raise EvalError(str(exc), node.span, text) from exc
    raise TypeError(f"not an expression node: {node!r}")


def eval_text(text: str, alphabet: Sequence[str]) -> GridAutomaton:
    return evaluate(parse(text, alphabet), alphabet, text)


# ---------------------------------------------------------------------------
# rendering


def _axis_atom(letter: str, axis: tuple[int, int], state: int) -> str:
    i, p = axis
    if state < i:
        return f"{letter}{{{state}}}"
    return f"{letter}{{{state}+{p}}}"


def render(g: GridAutomaton) -> str:
    """An expression for ``g``: one shuffle term per final tuple."""
    g = G.grid_canonicalize(g)
    finals = sorted(g.finals)
    if not finals:
        return "empty"
    if g.k == 0:
        return "eps"
    terms = []
    for f in finals:
        atoms = [_axis_atom(c, ax, s) for c, ax, s in zip(g.alphabet, g.axes, f)]
        terms.append(" <> ".join(atoms))
    return " | ".join(terms)

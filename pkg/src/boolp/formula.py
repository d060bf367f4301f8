"""Propositional formulas over alphabet symbols.

Formulas are used both as Boolean update functions and as rule guards.
The concrete syntax is::

    expr   := term { "|" term }
    term   := factor { "&" factor }
    factor := "!" factor | "(" expr ")" | IDENT | "0" | "1"

Conjunctions and disjunctions are flat n-ary nodes; parentheses in the
source text produce nesting, so printing and reparsing is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Collection, Iterable, Mapping, Optional, Sequence, Union


class FormulaError(ValueError):
    """Raised for malformed formula text or unknown identifiers."""

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class Const:
    value: bool


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("conjunction needs at least two operands")


@dataclass(frozen=True)
class Or:
    args: tuple

    def __post_init__(self):
        if len(self.args) < 2:
            raise ValueError("disjunction needs at least two operands")


Formula = Union[Const, Var, Not, And, Or]

TRUE = Const(True)
FALSE = Const(False)


def conj(items: Iterable[Formula]) -> Formula:
    """Conjunction of `items`; empty gives 1 and a single item is returned as is."""
    items = tuple(items)
    if not items:
        return TRUE
    if len(items) == 1:
        return items[0]
    return And(items)


def disj(items: Iterable[Formula]) -> Formula:
    items = tuple(items)
    if not items:
        return FALSE
    if len(items) == 1:
        return items[0]
    return Or(items)


def evaluate(f: Formula, w: Collection[str]) -> bool:
    """Truth value of `f` when the symbols in `w` are 1 and all others 0."""
    if isinstance(f, Var):
        return f.name in w
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return not evaluate(f.arg, w)
    if isinstance(f, And):
        return all(evaluate(a, w) for a in f.args)
    if isinstance(f, Or):
        return any(evaluate(a, w) for a in f.args)
    raise TypeError(f"not a formula: {f!r}")


def compile_mask(f: Formula, index: Mapping[str, int]) -> Callable[[int], bool]:
    """Compile `f` into a predicate on bitmask configurations.

    Bit ``index[name]`` of the mask is the value of ``name``.
    """
    if isinstance(f, Var):
        bit = 1 << index[f.name]
        return lambda m: bool(m & bit)
    if isinstance(f, Const):
        v = f.value
        return lambda m: v
    if isinstance(f, Not):
        g = compile_mask(f.arg, index)
        return lambda m: not g(m)
    if isinstance(f, And):
        gs = tuple(compile_mask(a, index) for a in f.args)
        return lambda m: all(g(m) for g in gs)
    if isinstance(f, Or):
        gs = tuple(compile_mask(a, index) for a in f.args)
        return lambda m: any(g(m) for g in gs)
    raise TypeError(f"not a formula: {f!r}")


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, Const):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.arg)
    return frozenset().union(*(free_vars(a) for a in f.args))


def substitute(f: Formula, values: Mapping[str, bool]) -> Formula:
    """Replace the variables named in `values` by constants. No simplification."""
    if isinstance(f, Var):
        if f.name in values:
            return Const(bool(values[f.name]))
        return f
    if isinstance(f, Const):
        return f
    if isinstance(f, Not):
        return Not(substitute(f.arg, values))
    return type(f)(tuple(substitute(a, values) for a in f.args))


def exact_set_formula(mu: Iterable[str], universe: Sequence[str]) -> Formula:
    """Formula satisfied by W exactly when W ∩ universe == mu.

    Literals follow the order of `universe`.
    """
    mu = frozenset(mu)
    extra = mu.difference(universe)
    if extra:
        raise ValueError(f"symbols {sorted(extra)} are not in the universe")
    return conj(Var(u) if u in mu else Not(Var(u)) for u in universe)


# -- printing -------------------------------------------------------------

def to_text(f: Formula) -> str:
    """Render `f` in the concrete syntax; parse_formula(to_text(f)) == f."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Const):
        return "1" if f.value else "0"
    if isinstance(f, Not):
        inner = to_text(f.arg)
        if isinstance(f.arg, (And, Or)):
            inner = f"({inner})"
        return "!" + inner
    if isinstance(f, And):
        # nested And/Or children need parentheses to survive the flat parse
        parts = [f"({to_text(a)})" if isinstance(a, (And, Or)) else to_text(a) for a in f.args]
        return " & ".join(parts)
    if isinstance(f, Or):
        parts = [f"({to_text(a)})" if isinstance(a, Or) else to_text(a) for a in f.args]
        return " | ".join(parts)
    raise TypeError(f"not a formula: {f!r}")


# -- parsing --------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|([01])(?![A-Za-z0-9_])|([!&|()]))")
IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("ident", m.group(1), start))
        elif m.group(2):
            tokens.append(("const", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse_formula(text: str, alphabet: Optional[Collection[str]] = None) -> Formula:
    """Parse `text`; identifiers must belong to `alphabet` when one is given."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expr() -> Formula:
        items = [term()]
        while peek()[:2] == ("op", "|"):
            advance()
            items.append(term())
        return items[0] if len(items) == 1 else Or(tuple(items))

    def term() -> Formula:
        items = [factor()]
        while peek()[:2] == ("op", "&"):
            advance()
            items.append(factor())
        return items[0] if len(items) == 1 else And(tuple(items))

    def factor() -> Formula:
        kind, val, at = advance()
        if kind == "op" and val == "!":
            return Not(factor())
        if kind == "op" and val == "(":
            inner = expr()
            kind2, val2, at2 = advance()
            if (kind2, val2) != ("op", ")"):
                raise FormulaError("expected ')'", at2)
            return inner
        if kind == "const":
            return Const(val == "1")
        if kind == "ident":
            if alphabet is not None and val not in alphabet:
                raise FormulaError(f"unknown identifier {val!r}", at)
            return Var(val)
        if kind == "end":
            raise FormulaError("unexpected end of formula", at)
        raise FormulaError(f"unexpected token {val!r}", at)

    result = expr()
    kind, val, at = peek()
    if kind != "end":
        raise FormulaError(f"unexpected token {val!r}", at)
    return result

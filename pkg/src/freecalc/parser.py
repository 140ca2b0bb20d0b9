"""Text grammar for words and terms of the language of group theory.

    word   := factor { "*" factor }
    factor := atom [ "^" int ]
    atom   := name | "1" | "(" word ")" | "[" word "," word { "," word } "]"

Names are ASCII identifiers.  ``_0`` is the subject placeholder of a term
and ``_1`` .. ``_s`` are its argument placeholders.  Brackets with more than
two entries are left-normed commutators.  Whitespace is ignored.
"""

from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import AlphabetError, ArityError, ParseError
from .words import Alphabet, Word, commutator, left_normed

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>[0-9]+)|(?P<sym>[-+*^()\[\],]))")
_PLACEHOLDER = re.compile(r"_([0-9]+)$")


# AST ------------------------------------------------------------------------

@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Placeholder:
    index: int


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: object
    exp: int


@dataclass(frozen=True)
class Commutator:
    items: tuple


Node = Gen | Placeholder | One | Product | Power | Commutator


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", text, start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> Node:
        node = self.word()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return node

    def word(self) -> Node:
        factors = []
        self._extend(factors, self.factor())
        while self.peek()[1] == "*":
            self.take("*")
            self._extend(factors, self.factor())
        if len(factors) == 1:
            return factors[0]
        return Product(tuple(factors))

    @staticmethod
    def _extend(factors: list, node: Node) -> None:
        # products are associative: flatten so printing needs no parentheses
        if isinstance(node, Product):
            factors.extend(node.factors)
        else:
            factors.append(node)

    def factor(self) -> Node:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take("^")
            sign = 1
            if self.peek()[1] in "-+" and self.peek()[0] == "sym":
                sign = -1 if self.take()[1] == "-" else 1
            exp = sign * int(self.take(kind="int")[1])
            if exp == 1:
                return base
            return Power(base, exp)
        return base

    def atom(self) -> Node:
        kind, value, pos = self.peek()
        if kind == "name":
            self.take()
            m = _PLACEHOLDER.match(value)
            if m:
                return Placeholder(int(m.group(1)))
            if value.startswith("_"):
                raise ParseError(f"names starting with '_' are reserved for placeholders: {value!r}", self.text, pos)
            return Gen(value)
        if kind == "int":
            if value != "1":
                raise ParseError(f"only the literal 1 may appear as a factor, found {value!r}", self.text, pos)
            self.take()
            return One()
        if value == "(":
            self.take("(")
            node = self.word()
            self.take(")")
            return node
        if value == "[":
            self.take("[")
            items = [self.word()]
            while self.peek()[1] == ",":
                self.take(",")
                items.append(self.word())
            close = self.take("]")
            if len(items) < 2:
                raise ParseError("a commutator needs at least two entries", self.text, close[2])
            return Commutator(tuple(items))
        raise ParseError(f"unexpected {value or 'end of input'!r}", self.text, pos)


def parse_expr(text: str) -> Node:
    return _Parser(text).parse()


# printing -------------------------------------------------------------------

def to_text(node: Node) -> str:
    if isinstance(node, Gen):
        return node.name
    if isinstance(node, Placeholder):
        return f"_{node.index}"
    if isinstance(node, One):
        return "1"
    if isinstance(node, Product):
        return "*".join(to_text(f) for f in node.factors)
    if isinstance(node, Power):
        base = to_text(node.base)
        if isinstance(node.base, (Product, Power)):
            base = f"({base})"
        return f"{base}^{node.exp}"
    if isinstance(node, Commutator):
        return "[" + ",".join(to_text(i) for i in node.items) + "]"
    raise TypeError(node)


def names_in(node: Node) -> list[str]:
    """Generator names in order of first appearance."""
    seen: list[str] = []

    def walk(n):
        if isinstance(n, Gen):
            if n.name not in seen:
                seen.append(n.name)
        elif isinstance(n, Product):
            for f in n.factors:
                walk(f)
        elif isinstance(n, Power):
            walk(n.base)
        elif isinstance(n, Commutator):
            for i in n.items:
                walk(i)

    walk(node)
    return seen


def placeholders_in(node: Node) -> set[int]:
    if isinstance(node, Placeholder):
        return {node.index}
    if isinstance(node, Product):
        return set().union(*(placeholders_in(f) for f in node.factors))
    if isinstance(node, Power):
        return placeholders_in(node.base)
    if isinstance(node, Commutator):
        return set().union(*(placeholders_in(i) for i in node.items))
    return set()


# evaluation -----------------------------------------------------------------

def _evaluate(node: Node, alphabet: Alphabet, slots: Sequence[Word] | None) -> Word:
    if isinstance(node, Gen):
        return alphabet.gen(node.name)
    if isinstance(node, One):
        return alphabet.identity()
    if isinstance(node, Placeholder):
        if slots is None:
            raise ParseError(f"placeholder _{node.index} is not allowed in a word")
        return slots[node.index]
    if isinstance(node, Product):
        acc = alphabet.identity()
        for f in node.factors:
            acc = acc * _evaluate(f, alphabet, slots)
        return acc
    if isinstance(node, Power):
        return _evaluate(node.base, alphabet, slots) ** node.exp
    if isinstance(node, Commutator):
        items = [_evaluate(i, alphabet, slots) for i in node.items]
        if len(items) == 2:
            return commutator(*items)
        return left_normed(items)
    raise TypeError(node)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    node = parse_expr(text)
    if placeholders_in(node):
        raise ParseError(f"placeholders are not allowed in a word: {text!r}")
    return _evaluate(node, alphabet, None)


@dataclass(frozen=True)
class TermExpr:
    """A term w(_0; _1, ..., _s) together with its arity s."""

    root: Node
    arity: int

    def __str__(self) -> str:
        return to_text(self.root)


def parse_term(text: str) -> TermExpr:
    node = parse_expr(text)
    used = placeholders_in(node)
    if not used:
        raise ParseError(f"term {text!r} does not mention the placeholder _0")
    arity = max(used)
    if used != set(range(arity + 1)):
        missing = sorted(set(range(arity + 1)) - used)
        raise ParseError(
            f"placeholders must be contiguous from _0; missing {', '.join(f'_{k}' for k in missing)}"
        )
    return TermExpr(node, arity)


def evaluate_term(term: TermExpr, subject: Word, args: Sequence[Word]) -> Word:
    """The word w(subject; args), freely reduced."""
    if len(args) != term.arity:
        raise ArityError(f"term has arity {term.arity} but {len(args)} argument(s) were given")
    for a in args:
        if a.alphabet != subject.alphabet:
            raise AlphabetError("term arguments and subject must share an alphabet")
    return _evaluate(term.root, subject.alphabet, (subject, *args))

"""Parse and print algebra elements.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := rational? factor*        # at least one of the two
    factor := ident '*'?

Juxtaposition is the product and ``*`` is the ghost of the single
identifier before it.  Identifiers may be run together (``ef``); they are
split greedily into the longest vertex or edge names of the graph.  A term
without factors is a scalar multiple of the identity ``Σ_v v``.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterator
from fractions import Fraction
from typing import NamedTuple

from lpa_chen.algebra import AlgebraElement, LeavittAlgebra, format_element
from lpa_chen.errors import ParseError
from lpa_chen.graph import Graph


class Token(NamedTuple):
    type: str
    value: str | Fraction
    where: tuple[int, int]


_TOKENS = {
    "num": r"\d+(?:/\d+)?",
    "word": r"[A-Za-z_][A-Za-z0-9_']*",
    "star": r"\*",
    "op": r"[+\-]",
    "skip": r"\s+",
    "error": r".",
}
_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in _TOKENS.items()))


def split_identifiers(g: Graph, word: str, start: int = 0) -> list[tuple[str, int]]:
    """Split *word* into graph ids by greedy longest match.

    Returns ``(name, offset)`` pairs, offsets counted from the start of the
    source line.

    Raises:
        ParseError: if some part of *word* starts no known id.
    """
    names = sorted(set(g.vertices) | set(g.edges), key=len, reverse=True)
    out = []
    i = 0
    while i < len(word):
        name = next((n for n in names if word.startswith(n, i)), None)
        if name is None:
            raise ParseError(f"Unknown identifier '{word[i:]}'", 1, start + i + 1)
        out.append((name, start + i))
        i += len(name)
    return out


def tokenize(g: Graph, text: str) -> Iterator[Token]:
    for mo in _REGEX.finditer(text):
        kind = str(mo.lastgroup)
        value = mo.group()
        where = mo.start(), mo.end()
        if kind == "skip":
            continue
        if kind == "error":
            raise ParseError(f"Unexpected character '{value}'", 1, where[0] + 1)
        if kind == "num":
            try:
                yield Token(kind, Fraction(value), where)
            except ZeroDivisionError:
                raise ParseError(f"Zero denominator in '{value}'", 1, where[0] + 1) from None
        elif kind == "word":
            for name, offset in split_identifiers(g, value, where[0]):
                yield Token("ident", name, (offset, offset + len(name)))
        else:
            yield Token(kind, value, where)


class _Parser:
    def __init__(self, alg: LeavittAlgebra, text: str, warnings: list[str] | None) -> None:
        self.alg = alg
        self.tokens = list(tokenize(alg.graph, text))
        self.pos = 0
        self.text = text
        self.warnings = warnings

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def error(self, message: str) -> ParseError:
        token = self.peek()
        column = token.where[0] + 1 if token else len(self.text) + 1
        return ParseError(message, 1, column)

    def expr(self) -> AlgebraElement:
        total = self.alg.zero()
        sign = 1
        token = self.peek()
        if token is not None and token.type == "op":
            sign = -1 if self.take().value == "-" else 1
        while True:
            total = total + self.term().scale(sign)
            token = self.peek()
            if token is None:
                return total
            if token.type != "op":
                raise self.error("Expected '+' or '-'")
            sign = -1 if self.take().value == "-" else 1

    def term(self) -> AlgebraElement:
        alg = self.alg
        token = self.peek()
        if token is None:
            raise self.error("Expected a term")
        start = token.where[0]
        k = Fraction(1)
        has_scalar = token.type == "num"
        if has_scalar:
            k = self.take().value
        factors = []
        while (token := self.peek()) is not None and token.type == "ident":
            name = self.take().value
            ghost = (nxt := self.peek()) is not None and nxt.type == "star"
            if ghost:
                self.take()
            factors.append(self._generator(name, ghost))
        if not factors and not has_scalar:
            raise self.error("Expected a scalar or an identifier")
        if not factors:
            return alg.scalar(k)
        value = alg.product(*factors)
        if not value and len(factors) > 1:
            message = f"zero product at column {start + 1}: '{self.text[start:self._end()].strip()}'"
            logging.warning("Expression %s", message)
            if self.warnings is not None:
                self.warnings.append(message)
        return value.scale(k)

    def _end(self) -> int:
        token = self.peek()
        return token.where[0] if token else len(self.text)

    def _generator(self, name: str, ghost: bool) -> AlgebraElement:
        g = self.alg.graph
        if g.is_vertex(name):
            return self.alg.vertex(name)
        return self.alg.ghost(name) if ghost else self.alg.edge(name)


def parse_expr(alg: LeavittAlgebra, text: str, warnings: list[str] | None = None) -> AlgebraElement:
    """Parse *text* into a normalized element of *alg*.

    Products of non-composable generators are zero; each is logged and,
    when *warnings* is given, appended to it.

    Raises:
        ParseError: for syntax errors and unknown identifiers.
    """
    return _Parser(alg, text, warnings).expr()


def format_expr(a: AlgebraElement) -> str:
    return format_element(a)

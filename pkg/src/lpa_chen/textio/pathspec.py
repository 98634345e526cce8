"""Text forms of infinite-path specs and Chen module elements.

::

    sink: <path>? -> <vertex>
    rat:  <path>? (<path>)^inf
    irr:  <path>? | {edge, edge, ...}

A path is a run of edge ids; a lone vertex name is the length-0 path at
that vertex.  Chen elements are ``k @ spec`` terms joined by ``;``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from lpa_chen.algebra import LeavittAlgebra
from lpa_chen.chen import ChenElement, ChenModule
from lpa_chen.errors import ParseError
from lpa_chen.graph import FinPath, Graph
from lpa_chen.omega import IrrationalSpec, Lasso, OmegaPathSpec, SinkAnchor
from lpa_chen.textio.expr import split_identifiers

_KIND_RE = re.compile(r"\s*(sink|rat|irr)\s*:")
_RAT_RE = re.compile(r"(?P<prefix>[^(]*)\((?P<cycle>[^)]*)\)\s*\^\s*inf\s*\Z")
_IRR_RE = re.compile(r"(?P<prefix>[^|]*)\|\s*\{(?P<edges>[^}]*)\}\s*\Z")
_SCALAR_RE = re.compile(r"\s*(?P<k>-?\d+(?:/\d+)?)\s*@")


def parse_path(g: Graph, text: str, offset: int = 0) -> FinPath | None:
    """Parse a finite path; ``None`` when *text* is blank.

    Raises:
        ParseError: for unknown ids or a vertex mixed with edges.
        PathError: when the edges do not compose.
    """
    names: list[tuple[str, int]] = []
    for m in re.finditer(r"\S+", text):
        names.extend(split_identifiers(g, m.group(), offset + m.start()))
    if not names:
        return None
    vertices = [(n, at) for n, at in names if g.is_vertex(n)]
    if vertices:
        if len(names) > 1:
            name, at = vertices[0]
            raise ParseError(f"Vertex '{name}' inside an edge path", 1, at + 1)
        return g.vertex_path(vertices[0][0])
    return g.path(tuple(n for n, _ in names))


def parse_path_spec(g: Graph, text: str) -> OmegaPathSpec:
    """Parse a spec without canonicalizing it.

    An ``irr:`` spec with no prefix starts at the first vertex, in
    declaration order, touched by the recurrent edges.

    Raises:
        ParseError: for text outside the grammar.
    """
    m = _KIND_RE.match(text)
    if m is None:
        raise ParseError("Expected 'sink:', 'rat:' or 'irr:'", 1, 1)
    kind = m.group(1)
    start = m.end()
    body = text[start:]

    if kind == "sink":
        if "->" not in body:
            raise ParseError("Expected '-> <vertex>'", 1, len(text) + 1)
        head, _, tail = body.rpartition("->")
        sink = tail.strip()
        at = start + len(head) + 2 + tail.index(sink) if sink else len(text)
        if not g.is_vertex(sink):
            raise ParseError(f"Unknown vertex '{sink}'", 1, at + 1)
        prefix = parse_path(g, head, start) or g.vertex_path(sink)
        return SinkAnchor(prefix, sink)

    if kind == "rat":
        rm = _RAT_RE.match(body)
        if rm is None:
            raise ParseError("Expected '<path>? (<cycle>)^inf'", 1, start + 1)
        cycle = parse_path(g, rm.group("cycle"), start + rm.start("cycle"))
        if cycle is None or not cycle.edges:
            raise ParseError("Empty cycle", 1, start + rm.start("cycle") + 1)
        prefix = parse_path(g, rm.group("prefix"), start) or g.vertex_path(cycle.src)
        return Lasso(prefix, cycle)

    im = _IRR_RE.match(body)
    if im is None:
        raise ParseError("Expected '<path>? | {edge, ...}'", 1, start + 1)
    recurrent = []
    offset = start + im.start("edges")
    for part in im.group("edges").split(","):
        name = part.strip()
        if name:
            column = offset + part.index(name) + 1
            if not g.is_edge(name):
                raise ParseError(f"Unknown edge '{name}'", 1, column)
            recurrent.append(name)
        offset += len(part) + 1
    if not recurrent:
        raise ParseError("Empty recurrent edge set", 1, start + im.start("edges") + 1)
    prefix = parse_path(g, im.group("prefix"), start)
    if prefix is None:
        touched = {g.src[e] for e in recurrent} | {g.rng[e] for e in recurrent}
        prefix = g.vertex_path(next(v for v in g.vertices if v in touched))
    return IrrationalSpec(prefix, frozenset(recurrent))


def format_path_spec(p: OmegaPathSpec) -> str:
    return str(p)


def parse_chen(alg: LeavittAlgebra, text: str) -> ChenElement:
    """Parse ``k @ spec ; k @ spec ; ...`` into an element of one Chen module.

    The module is the class of the first spec.

    Raises:
        ParseError: for an empty element or malformed terms.
        PreconditionError: when a later spec lies in another class.
    """
    terms = []
    offset = 0
    for chunk in text.split(";"):
        if chunk.strip():
            m = _SCALAR_RE.match(chunk)
            k = Fraction(1)
            shift = 0
            if m is not None:
                value = m.group("k")
                try:
                    k = Fraction(value)
                except ZeroDivisionError:
                    raise ParseError(f"Zero denominator in '{value}'", 1, offset + m.start("k") + 1) from None
                shift = m.end()
            try:
                terms.append((parse_path_spec(alg.graph, chunk[shift:]), k))
            except ParseError as exc:
                raise ParseError(exc.message, 1, offset + shift + exc.column) from exc
        offset += len(chunk) + 1
    if not terms:
        raise ParseError("Empty module element", 1, 1)
    module = ChenModule(alg, terms[0][0])
    return module.element(terms)

"""Read and write ``.lpa`` graph documents.

A document starts with the header line ``lpa-graph v1``.  Every other
non-blank line is a comment (``# ...``), a vertex declaration (one or more
comma-separated names) or an edge declaration::

    e: v -> w
    e: v -> w x3        # declares e1, e2, e3

Vertices must be declared before the edges that use them.
"""

from __future__ import annotations

import re

from lpa_chen.errors import ParseError, UnknownIdError
from lpa_chen.graph import Graph

HEADER = "lpa-graph v1"

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_NAME_RE = re.compile(rf"{_NAME}\Z")
_EDGE_RE = re.compile(
    rf"\s*(?P<id>{_NAME})\s*:\s*(?P<src>{_NAME})\s*->\s*(?P<rng>{_NAME})"
    r"(?:\s+x\s*(?P<mult>\S+))?\s*\Z"
)


def parse_graph(text: str) -> Graph:
    """Parse a graph document.

    Raises:
        ParseError: with the line and column of the first problem, including
            duplicate ids and undeclared endpoints.
    """
    lines = text.splitlines()
    first = next((i for i, line in enumerate(lines) if line.strip()), None)
    if first is None or lines[first].strip() != HEADER:
        raise ParseError(f"Expected header '{HEADER}'", (first or 0) + 1, 1)

    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    seen: set[str] = set()

    def claim(name: str, lineno: int, column: int) -> None:
        if name in seen:
            raise ParseError(f"Duplicate id '{name}'", lineno, column)
        seen.add(name)

    for lineno, raw in enumerate(lines[first + 1 :], start=first + 2):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if ":" not in line:
            offset = 0
            for part in line.split(","):
                name = part.strip()
                column = offset + part.index(name) + 1 if name else offset + 1
                if not _NAME_RE.match(name):
                    raise ParseError(f"Invalid vertex name '{name}'", lineno, column)
                claim(name, lineno, column)
                vertices.append(name)
                offset += len(part) + 1
            continue

        m = _EDGE_RE.match(line)
        if m is None:
            raise ParseError("Expected 'name: src -> dst'", lineno, len(line) - len(line.lstrip()) + 1)
        for key in ("src", "rng"):
            if m.group(key) not in vertices:
                raise ParseError(
                    f"Edge '{m.group('id')}' uses undeclared vertex '{m.group(key)}'",
                    lineno,
                    m.start(key) + 1,
                )
        names = [m.group("id")]
        if m.group("mult") is not None:
            names = _expand(m.group("id"), m.group("mult"), lineno, m.start("mult") + 1)
        for name in names:
            claim(name, lineno, m.start("id") + 1)
            edges.append((name, m.group("src"), m.group("rng")))

    try:
        return Graph(vertices, edges)
    except UnknownIdError as exc:
        raise ParseError(str(exc), first + 1, 1) from exc


def _expand(name: str, mult: str, lineno: int, column: int) -> list[str]:
    if mult == "inf":
        raise ParseError("Infinite edge multiplicity is not supported", lineno, column)
    if not mult.isdigit() or int(mult) < 1:
        raise ParseError(f"Invalid edge multiplicity '{mult}'", lineno, column)
    return [f"{name}{i}" for i in range(1, int(mult) + 1)]


def print_graph(g: Graph) -> str:
    """Render *g* as a document that :func:`parse_graph` reads back unchanged."""
    out = [HEADER, *g.vertices]
    out.extend(f"{e}: {g.src[e]} -> {g.rng[e]}" for e in g.edges)
    return "\n".join(out) + "\n"


def load_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())

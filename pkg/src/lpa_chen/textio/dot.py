"""Best-effort conversion of Graphviz DOT digraphs to graph documents.

Only edge statements ``a -> b`` (optionally ``[label=e]``) and bare node
statements are read; attributes other than ``label`` and any subgraph
structure are ignored.  Unlabelled edges are named ``e1, e2, ...`` in
file order, skipping names already taken.
"""

from __future__ import annotations

import logging
import re

from lpa_chen.errors import ParseError
from lpa_chen.textio.graph_format import HEADER

_ID = r'(?:"[^"]*"|[A-Za-z_][A-Za-z0-9_]*|\d+)'
_EDGE_RE = re.compile(rf"^\s*(?P<src>{_ID})\s*->\s*(?P<rng>{_ID})\s*(?:\[(?P<attrs>[^\]]*)\])?\s*;?\s*$")
_NODE_RE = re.compile(rf"^\s*(?P<id>{_ID})\s*(?:\[[^\]]*\])?\s*;?\s*$")
_LABEL_RE = re.compile(rf"\blabel\s*=\s*(?P<label>{_ID})")
_SKIP_RE = re.compile(r"^(?:(?:strict\s+)?(?:di)?graph|node|edge|subgraph)\b|^[{}]|^//|^#|^\w+\s*=")


def _unquote(name: str) -> str:
    return name[1:-1] if name.startswith('"') else name


def dot_to_document(text: str) -> str:
    """Return an ``lpa-graph v1`` document for the digraph in *text*.

    Raises:
        ParseError: when an edge chain (``a -> b -> c``) or undirected
            edge (``a -- b``) is found.
    """
    vertices: list[str] = []
    edges: list[tuple[str | None, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or _SKIP_RE.match(line):
            continue
        if "--" in line:
            raise ParseError("Undirected edges are not supported", lineno, line.index("--") + 1)
        if line.count("->") > 1:
            raise ParseError("Edge chains are not supported; write one edge per line", lineno, 1)
        m = _EDGE_RE.match(line)
        if m is not None:
            src, rng = _unquote(m.group("src")), _unquote(m.group("rng"))
            label = None
            if m.group("attrs"):
                lm = _LABEL_RE.search(m.group("attrs"))
                if lm is not None:
                    label = _unquote(lm.group("label"))
            for v in (src, rng):
                if v not in vertices:
                    vertices.append(v)
            edges.append((label, src, rng))
            continue
        m = _NODE_RE.match(line)
        if m is not None:
            v = _unquote(m.group("id"))
            if v not in vertices:
                vertices.append(v)
            continue
        logging.debug("dot: skipping line %d: %s", lineno, line)

    taken = set(vertices) | {label for label, _, _ in edges if label}
    counter = 0
    out = [HEADER, *vertices]
    for label, src, rng in edges:
        if label is None:
            counter += 1
            while f"e{counter}" in taken:
                counter += 1
            label = f"e{counter}"
            taken.add(label)
        out.append(f"{label}: {src} -> {rng}")
    return "\n".join(out) + "\n"

"""Finite directed multigraphs and the path primitives built on them.

Vertices and edges are identified by string ids.  Every iteration follows
declaration order, and "least edge" always means least in that order, so
normal forms and reports are reproducible.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple

import networkx as nx

from lpa_chen.errors import PathError, UnknownIdError


class Graph:
    """A finite directed multigraph ``E = (E⁰, E¹, s, r)``.

    Parallel edges and loops are allowed; edge identity is by id only.
    Instances are immutable after construction.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> None:
        self.vertices: tuple[str, ...] = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise UnknownIdError("Duplicate vertex id in graph declaration")
        declared = set(self.vertices)

        src: dict[str, str] = {}
        rng: dict[str, str] = {}
        for edge_id, s, r in edges:
            if edge_id in src or edge_id in declared:
                raise UnknownIdError(f"Duplicate id '{edge_id}'")
            for endpoint in (s, r):
                if endpoint not in declared:
                    raise UnknownIdError(f"Edge '{edge_id}' uses undeclared vertex '{endpoint}'")
            src[edge_id] = s
            rng[edge_id] = r

        self.edges: tuple[str, ...] = tuple(src)
        self.src: dict[str, str] = src
        self.rng: dict[str, str] = rng
        self._vertex_rank = {v: i for i, v in enumerate(self.vertices)}
        self._edge_rank = {e: i for i, e in enumerate(self.edges)}
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[src[e]].append(e)
        self._out = {v: tuple(es) for v, es in out.items()}

    # ------------------------------------------------------------------
    # Identity
    # ------------------------------------------------------------------

    def _key(self) -> tuple:
        return self.vertices, tuple((e, self.src[e], self.rng[e]) for e in self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self is other or self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"Graph(vertices={len(self.vertices)}, edges={len(self.edges)})"

    # ------------------------------------------------------------------
    # Lookups
    # ------------------------------------------------------------------

    def check_vertex(self, v: str) -> str:
        if v not in self._vertex_rank:
            raise UnknownIdError(f"Unknown vertex '{v}'")
        return v

    def check_edge(self, e: str) -> str:
        if e not in self._edge_rank:
            raise UnknownIdError(f"Unknown edge '{e}'")
        return e

    def is_vertex(self, name: str) -> bool:
        return name in self._vertex_rank

    def is_edge(self, name: str) -> bool:
        return name in self._edge_rank

    def vertex_rank(self, v: str) -> int:
        return self._vertex_rank[v]

    def edge_rank(self, e: str) -> int:
        return self._edge_rank[e]

    def out_edges(self, v: str) -> tuple[str, ...]:
        """Return ``s⁻¹(v)`` in declaration order."""
        return self._out[self.check_vertex(v)]

    def special_edge(self, v: str) -> str | None:
        """Return the least out-edge at *v*, or ``None`` for a sink."""
        out = self.out_edges(v)
        return out[0] if out else None

    def sinks(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if not self._out[v])

    @cached_property
    def nx_graph(self) -> nx.MultiDiGraph:
        """The graph as a ``networkx.MultiDiGraph`` keyed by edge id."""
        g = nx.MultiDiGraph()
        g.add_nodes_from(self.vertices)
        for e in self.edges:
            g.add_edge(self.src[e], self.rng[e], key=e)
        return g

    def ancestors(self, targets: Iterable[str]) -> frozenset[str]:
        """Return every vertex with a (possibly empty) path into *targets*."""
        found: set[str] = set()
        for t in targets:
            self.check_vertex(t)
            found.add(t)
            found |= nx.ancestors(self.nx_graph, t)
        return frozenset(found)

    def descendants(self, v: str) -> frozenset[str]:
        """Return every vertex reachable from *v*, including *v*."""
        self.check_vertex(v)
        return frozenset(nx.descendants(self.nx_graph, v) | {v})

    # ------------------------------------------------------------------
    # Path construction
    # ------------------------------------------------------------------

    def path(self, edges: Sequence[str] = (), base: str | None = None) -> FinPath:
        """Build a validated :class:`FinPath`.

        A length-0 path needs *base*; for longer paths *base* is checked
        against the source of the first edge when given.

        Raises:
            UnknownIdError: for undeclared ids.
            PathError: when consecutive edges do not compose.
        """
        edges = tuple(edges)
        for e in edges:
            self.check_edge(e)
        for a, b in zip(edges, edges[1:]):
            if self.rng[a] != self.src[b]:
                raise PathError(f"Edges '{a}' and '{b}' are not composable")
        if edges:
            start = self.src[edges[0]]
            if base is not None and base != start:
                raise PathError(f"Path {' '.join(edges)} does not start at '{base}'")
            base = start
        elif base is None:
            raise PathError("A length-0 path needs its vertex")
        else:
            self.check_vertex(base)
        return FinPath(edges, base, self)

    def vertex_path(self, v: str) -> FinPath:
        return self.path((), v)


@dataclass(frozen=True)
class FinPath:
    """A finite path ``e₁…eₙ``; a length-0 path carries its vertex in ``base``."""

    edges: tuple[str, ...]
    base: str
    graph: Graph = field(compare=False, repr=False, hash=False)

    @property
    def src(self) -> str:
        return self.base

    @property
    def rng(self) -> str:
        return self.graph.rng[self.edges[-1]] if self.edges else self.base

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return " ".join(self.edges) if self.edges else self.base

    @property
    def is_closed(self) -> bool:
        return bool(self.edges) and self.src == self.rng

    def sort_key(self) -> tuple:
        g = self.graph
        return len(self.edges), tuple(g.edge_rank(e) for e in self.edges), g.vertex_rank(self.base)

    def vertices(self) -> tuple[str, ...]:
        """Return ``s(e₁), r(e₁), …, r(eₙ)``."""
        return (self.base,) + tuple(self.graph.rng[e] for e in self.edges)

    def concat(self, other: FinPath) -> FinPath:
        if self.rng != other.src:
            raise PathError(f"Cannot compose '{self}' with '{other}'")
        return FinPath(self.edges + other.edges, self.base, self.graph)

    def prefix(self, n: int) -> FinPath:
        """Return ``τ≤n`` of this path (written ``αₙ`` in kernel formulas)."""
        if not 0 <= n <= len(self.edges):
            raise PathError(f"Prefix length {n} out of range for '{self}'")
        return FinPath(self.edges[:n], self.base, self.graph)

    def suffix(self, n: int) -> FinPath:
        """Return the path after its first *n* edges."""
        if not 0 <= n <= len(self.edges):
            raise PathError(f"Suffix offset {n} out of range for '{self}'")
        base = self.graph.rng[self.edges[n - 1]] if n else self.base
        return FinPath(self.edges[n:], base, self.graph)

    def starts_with(self, other: FinPath) -> bool:
        """True iff this path is ``other·γ`` for some path ``γ``."""
        if other.src != self.src:
            return False
        return self.edges[: len(other.edges)] == other.edges

    def power(self, m: int) -> FinPath:
        if m == 0:
            return FinPath((), self.base, self.graph)
        if not self.is_closed:
            raise PathError(f"Only closed paths have powers, got '{self}'")
        return FinPath(self.edges * m, self.base, self.graph)

    def rotate(self, k: int) -> FinPath:
        """Rotate a closed path left by *k* edges."""
        if not self.is_closed:
            raise PathError(f"Only closed paths rotate, got '{self}'")
        k %= len(self.edges)
        edges = self.edges[k:] + self.edges[:k]
        return FinPath(edges, self.graph.src[edges[0]], self.graph)

    def rotations(self) -> list[FinPath]:
        return [self.rotate(k) for k in range(len(self.edges))]

    def is_primitive(self) -> bool:
        return is_primitive(self.edges)

    def canonical_rotation(self) -> FinPath:
        """Return the rotation whose edge-rank sequence is least."""
        return min(self.rotations(), key=FinPath.sort_key)


def is_primitive(word: Sequence) -> bool:
    """True iff *word* is not ``u^m`` for a shorter ``u`` and ``m ≥ 2``."""
    n = len(word)
    for p in range(1, n // 2 + 1):
        if n % p == 0 and tuple(word) == tuple(word[:p]) * (n // p):
            return False
    return True


def primitive_root(word: Sequence) -> tuple:
    n = len(word)
    for p in range(1, n + 1):
        if n % p == 0 and tuple(word) == tuple(word[:p]) * (n // p):
            return tuple(word[:p])
    return tuple(word)


# ------------------------------------------------------------------
# Vertex classification and exits
# ------------------------------------------------------------------


class VertexKind(enum.Enum):
    SINK = "sink"
    REGULAR = "regular"


class VertexClass(NamedTuple):
    kind: VertexKind
    out_degree: int


def classify_vertex(g: Graph, v: str) -> VertexClass:
    """Classify *v* as a sink or a regular vertex with its out-degree."""
    degree = len(g.out_edges(v))
    return VertexClass(VertexKind.SINK if degree == 0 else VertexKind.REGULAR, degree)


def exits(g: Graph, beta: FinPath, i: int) -> tuple[str, ...]:
    """Return ``Xᵢ(β)``: the edges leaving ``s(e_{i+1})`` other than ``e_{i+1}``.

    Raises:
        PathError: unless ``0 ≤ i < |β|``.
    """
    if not 0 <= i < len(beta):
        raise PathError(f"Exit index {i} out of range for path '{beta}'")
    edge = beta.edges[i]
    return tuple(f for f in g.out_edges(g.src[edge]) if f != edge)


# ------------------------------------------------------------------
# Closed paths
# ------------------------------------------------------------------


class ClosedPath(NamedTuple):
    path: FinPath
    canonical: bool  # least rotation by edge order


def simple_closed_paths(g: Graph, max_len: int) -> list[ClosedPath]:
    """Enumerate simple closed paths of length at most *max_len*.

    Vertices may repeat; only proper powers are excluded.  Every rotation
    is reported from its own starting vertex and the least rotation of
    each cycle is flagged.
    """
    if max_len < 1:
        raise PathError("max_len must be at least 1")
    found: list[ClosedPath] = []
    for start in g.vertices:
        stack: list[tuple[str, tuple[str, ...]]] = [(start, ())]
        walks: list[tuple[str, ...]] = []
        while stack:
            at, walk = stack.pop()
            if walk and at == start:
                walks.append(walk)
            if len(walk) == max_len:
                continue
            for e in reversed(g.out_edges(at)):
                stack.append((g.rng[e], walk + (e,)))
        walks.sort(key=lambda w: (len(w), tuple(g.edge_rank(e) for e in w)))
        for walk in walks:
            if not is_primitive(walk):
                continue
            p = FinPath(walk, start, g)
            found.append(ClosedPath(p, p.canonical_rotation() == p))
    return found


# ------------------------------------------------------------------
# Reachability and line points
# ------------------------------------------------------------------


@dataclass(frozen=True)
class LinePointReport:
    vertex: str
    is_line_point: bool
    cycle: FinPath | None = None
    branching_vertex: str | None = None
    branching_degree: int = 0

    @property
    def certificate(self) -> str:
        if self.is_line_point:
            return "line point"
        parts = []
        if self.cycle is not None:
            parts.append(f"cycle {self.cycle}")
        if self.branching_vertex is not None:
            parts.append(f"out-degree {self.branching_degree} at {self.branching_vertex}")
        return "; ".join(parts)


def is_line_point(g: Graph, u: str) -> LinePointReport:
    """Decide whether *u* is a line point.

    The full subgraph reachable from *u* must be acyclic with every
    out-degree at most one.  Failing reports carry the first cycle found
    by depth-first search and the first branching vertex in declaration
    order (either may be absent).
    """
    reachable = g.descendants(u)
    branching = next(
        (v for v in g.vertices if v in reachable and len(g.out_edges(v)) >= 2), None
    )
    cycle = None
    try:
        cycle_edges = nx.find_cycle(g.nx_graph.subgraph(reachable), source=u)
    except nx.NetworkXNoCycle:
        pass
    else:
        keys = tuple(edge[2] for edge in cycle_edges)
        cycle = FinPath(keys, g.src[keys[0]], g)
    if cycle is None and branching is None:
        return LinePointReport(u, True)
    degree = len(g.out_edges(branching)) if branching is not None else 0
    return LinePointReport(u, False, cycle, branching, degree)


def line_points(g: Graph) -> list[str]:
    return [v for v in g.vertices if is_line_point(g, v).is_line_point]


def reaches(g: Graph, start: str, targets: Iterable[str]) -> bool:
    """True iff a (possibly length-0) path leads from *start* into *targets*."""
    targets = {g.check_vertex(t) for t in targets}
    return bool(g.descendants(start) & targets)

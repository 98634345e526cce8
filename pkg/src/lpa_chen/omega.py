"""Finite representations of infinite paths.

Three shapes cover every infinite path a Chen simple module can be built on:

* :class:`SinkAnchor`: ``α`` ending at a sink ``w``, read as ``α·w^∞``;
* :class:`Lasso`: ``α·c^∞`` for a primitive closed path ``c``;
* :class:`IrrationalSpec`: a prefix followed by a walk that uses every
  edge of a recurrent set infinitely often and is never periodic.

An irrational spec stands for one concrete walk:
``prefix · connector(r(prefix)) · ω_R``, where the connector follows a
fixed shortest-path tree towards the base vertex of ``R`` and ``ω_R`` is
the block sequence ``A B A B² A B³ …`` of two non-commuting closed walks
at the base.  Everything up to the start of ``ω_R`` is the determined
region of the spec.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Union

import networkx as nx

from lpa_chen.errors import MalformedSpecError, PathError, UndeterminedRegionError, UnknownIdError
from lpa_chen.graph import FinPath, Graph, primitive_root


@dataclass(frozen=True)
class SinkAnchor:
    prefix: FinPath
    sink: str

    @property
    def graph(self) -> Graph:
        return self.prefix.graph

    @property
    def src(self) -> str:
        return self.prefix.src

    def __str__(self) -> str:
        head = f"{self.prefix} " if self.prefix.edges else ""
        return f"sink: {head}-> {self.sink}"


@dataclass(frozen=True)
class Lasso:
    prefix: FinPath
    cycle: FinPath

    @property
    def graph(self) -> Graph:
        return self.prefix.graph

    @property
    def src(self) -> str:
        return self.prefix.src

    def __str__(self) -> str:
        head = f"{self.prefix} " if self.prefix.edges else ""
        return f"rat: {head}({self.cycle})^inf"


@dataclass(frozen=True)
class IrrationalSpec:
    prefix: FinPath
    recurrent: frozenset[str]

    @property
    def graph(self) -> Graph:
        return self.prefix.graph

    @property
    def src(self) -> str:
        return self.prefix.src

    def __str__(self) -> str:
        g = self.graph
        edges = ", ".join(sorted(self.recurrent, key=g.edge_rank))
        return f"irr: {self.prefix} | {{{edges}}}"


OmegaPathSpec = Union[SinkAnchor, Lasso, IrrationalSpec]


def spec_sort_key(p: OmegaPathSpec) -> tuple:
    g = p.graph
    if isinstance(p, SinkAnchor):
        tail: tuple = (g.vertex_rank(p.sink),)
    elif isinstance(p, Lasso):
        tail = p.cycle.sort_key()[1]
    else:
        tail = tuple(sorted(g.edge_rank(e) for e in p.recurrent))
    kind = {SinkAnchor: 0, Lasso: 1, IrrationalSpec: 2}[type(p)]
    return (kind,) + p.prefix.sort_key() + (tail,)


# ------------------------------------------------------------------
# Recurrent-set structure and the concretizer
# ------------------------------------------------------------------


class Validation(NamedTuple):
    ok: bool
    reason: str = ""
    message: str = ""


class RecurrentWalk:
    """Connector tree and the ``ω_R`` blocks for one recurrent edge set."""

    def __init__(self, graph: Graph, recurrent: frozenset[str]) -> None:
        self.graph = graph
        self.recurrent = recurrent
        g = graph
        edges = [e for e in g.edges if e in recurrent]
        self.vertices = frozenset(g.src[e] for e in edges) | frozenset(g.rng[e] for e in edges)
        self.base = next(v for v in g.vertices if v in self.vertices)

        # tree[x] is the first edge of the chosen shortest path x → base
        self.tree: dict[str, str] = {}
        seen = {self.base}
        queue = deque([self.base])
        while queue:
            y = queue.popleft()
            for e in edges:
                if g.rng[e] == y and g.src[e] not in seen:
                    seen.add(g.src[e])
                    self.tree[g.src[e]] = e
                    queue.append(g.src[e])

        # parent[x] is the last edge of the chosen shortest path base → x
        self._parent: dict[str, str] = {}
        seen = {self.base}
        queue = deque([self.base])
        while queue:
            y = queue.popleft()
            for e in edges:
                if g.src[e] == y and g.rng[e] not in seen:
                    seen.add(g.rng[e])
                    self._parent[g.rng[e]] = e
                    queue.append(g.rng[e])

        self.block_a = self._covering_walk(edges)
        branch = next(v for v in g.vertices if v in self.vertices and len(self._out(v)) >= 2)
        g1, g2 = self._out(branch)[:2]
        p1 = self.outbound(branch) + (g1,) + self.connector(g.rng[g1])
        p2 = self.outbound(branch) + (g2,) + self.connector(g.rng[g2])
        a = self.block_a
        self.block_b = p2 if a + p2 != p2 + a else p1

    def _out(self, v: str) -> tuple[str, ...]:
        return tuple(e for e in self.graph.out_edges(v) if e in self.recurrent)

    def connector(self, x: str) -> tuple[str, ...]:
        path = []
        while x != self.base:
            e = self.tree[x]
            path.append(e)
            x = self.graph.rng[e]
        return tuple(path)

    def outbound(self, x: str) -> tuple[str, ...]:
        path = []
        while x != self.base:
            e = self._parent[x]
            path.append(e)
            x = self.graph.src[e]
        return tuple(reversed(path))

    def _covering_walk(self, edges: list[str]) -> tuple[str, ...]:
        g = self.graph
        walk: tuple[str, ...] = ()
        for e in edges:
            if e in walk:
                continue
            walk += self.outbound(g.src[e]) + (e,) + self.connector(g.rng[e])
        return walk

    def omega(self) -> Iterator[str]:
        """Yield ``A B A B² A B³ …`` forever."""
        for k in itertools.count(1):
            yield from self.block_a
            for _ in range(k):
                yield from self.block_b


@lru_cache(maxsize=64)
def recurrent_walk(graph: Graph, recurrent: frozenset[str]) -> RecurrentWalk:
    return RecurrentWalk(graph, recurrent)


def validate_irrational(spec: IrrationalSpec) -> Validation:
    """Check that ``(prefix, recurrent)`` describes an irrational path.

    Conditions, reported in this order: every recurrent id is an edge, the
    recurrent subgraph is strongly connected, it has a branching vertex,
    and the prefix ends on it.
    """
    g = spec.graph
    if not spec.recurrent:
        return Validation(False, "empty", "recurrent edge set is empty")
    unknown = sorted(e for e in spec.recurrent if not g.is_edge(e))
    if unknown:
        return Validation(False, "unknown-edge", f"unknown recurrent edge '{unknown[0]}'")
    sub = nx.MultiDiGraph()
    for e in g.edges:
        if e in spec.recurrent:
            sub.add_edge(g.src[e], g.rng[e], key=e)
    if not nx.is_strongly_connected(sub):
        return Validation(False, "not-strongly-connected", "recurrent edges are not strongly connected")
    if not any(d >= 2 for _, d in sub.out_degree()):
        return Validation(
            False, "no-branching-vertex", "no recurrent vertex emits two recurrent edges"
        )
    if spec.prefix.rng not in sub:
        return Validation(
            False, "prefix-off-recurrent", f"prefix ends at '{spec.prefix.rng}', outside the recurrent set"
        )
    return Validation(True)


def concrete_edges(p: OmegaPathSpec) -> Iterator[str]:
    """Yield the edges of the concrete walk of *p* (finite for sink anchors)."""
    yield from p.prefix.edges
    if isinstance(p, Lasso):
        yield from itertools.cycle(p.cycle.edges)
    elif isinstance(p, IrrationalSpec):
        rw = recurrent_walk(p.graph, p.recurrent)
        yield from rw.connector(p.prefix.rng)
        yield from rw.omega()


def concretize(p: OmegaPathSpec, n: int) -> tuple[str, ...]:
    """Return the first *n* edges of the concrete walk (fewer for sink anchors)."""
    return tuple(itertools.islice(concrete_edges(p), n))


def determined_length(p: OmegaPathSpec) -> int | None:
    """Length of the determined region of an irrational spec; ``None`` otherwise."""
    if not isinstance(p, IrrationalSpec):
        return None
    return len(p.prefix) + len(recurrent_walk(p.graph, p.recurrent).connector(p.prefix.rng))


# ------------------------------------------------------------------
# Canonical forms
# ------------------------------------------------------------------


def canonicalize(p: OmegaPathSpec) -> OmegaPathSpec:
    """Return the unique representative of the infinite path *p*.

    Lassos get a primitive cycle and the shortest prefix; irrational specs
    drop trailing prefix edges that the connector would take anyway.

    Raises:
        MalformedSpecError: for an ill-formed spec.
    """
    g = p.graph
    if isinstance(p, SinkAnchor):
        if not g.is_vertex(p.sink):
            raise UnknownIdError(f"Unknown vertex '{p.sink}'")
        if g.out_edges(p.sink):
            raise MalformedSpecError(f"'{p.sink}' is not a sink", "not-a-sink")
        if p.prefix.rng != p.sink:
            raise MalformedSpecError(f"Prefix '{p.prefix}' does not end at '{p.sink}'", "not-composable")
        return p

    if isinstance(p, Lasso):
        cycle = p.cycle
        if not cycle.is_closed:
            raise MalformedSpecError(f"'{cycle}' is not a closed path", "not-closed")
        if p.prefix.rng != cycle.src:
            raise MalformedSpecError(
                f"Prefix '{p.prefix}' does not end where '{cycle}' starts", "not-composable"
            )
        root = primitive_root(cycle.edges)
        if len(root) != len(cycle):
            logging.info("Reducing cycle %s to its primitive root", cycle)
            cycle = FinPath(root, cycle.base, g)
        prefix = p.prefix
        while prefix.edges and prefix.edges[-1] == cycle.edges[-1]:
            prefix = prefix.prefix(len(prefix) - 1)
            cycle = cycle.rotate(-1)
        return Lasso(prefix, cycle)

    check = validate_irrational(p)
    if not check.ok:
        raise MalformedSpecError(check.message, check.reason)
    rw = recurrent_walk(g, p.recurrent)
    prefix = p.prefix
    while prefix.edges and rw.tree.get(g.src[prefix.edges[-1]]) == prefix.edges[-1]:
        prefix = prefix.prefix(len(prefix) - 1)
    return IrrationalSpec(prefix, frozenset(p.recurrent))


def class_key(p: OmegaPathSpec) -> tuple:
    """Hashable key shared exactly by tail-equivalent specs."""
    p = canonicalize(p)
    if isinstance(p, SinkAnchor):
        return ("sink", p.sink)
    if isinstance(p, Lasso):
        return ("rat", p.cycle.canonical_rotation().edges)
    return ("irr", tuple(sorted(p.recurrent, key=p.graph.edge_rank)))


def tail_equivalent(p: OmegaPathSpec, q: OmegaPathSpec) -> bool:
    if p.graph != q.graph:
        return False
    return class_key(p) == class_key(q)


def divisible_by(p: OmegaPathSpec, d: FinPath) -> bool:
    """True iff *p* starts with the closed path *d*.

    An irrational spec only counts as divisible when *d* fits in its
    determined region, so that ``truncate(p, len(d))`` is defined.
    """
    if not d.edges or p.src != d.src:
        return False
    limit = determined_length(canonicalize(p))
    if limit is not None and len(d) > limit:
        return False
    return concretize(p, len(d)) == d.edges


def prepend(alpha: FinPath, p: OmegaPathSpec) -> OmegaPathSpec:
    """Return the canonical form of ``α·p``."""
    if alpha.rng != p.src:
        raise PathError(f"Cannot prepend '{alpha}' to a path starting at '{p.src}'")
    prefix = alpha.concat(p.prefix)
    if isinstance(p, SinkAnchor):
        return canonicalize(SinkAnchor(prefix, p.sink))
    if isinstance(p, Lasso):
        return canonicalize(Lasso(prefix, p.cycle))
    return canonicalize(IrrationalSpec(prefix, p.recurrent))


def truncate(p: OmegaPathSpec, n: int) -> tuple[FinPath, OmegaPathSpec]:
    """Split *p* as ``τ≤n(p) · τ>n(p)``.

    Past a sink anchor the stationary path ``w^∞`` contributes no edges.

    Raises:
        UndeterminedRegionError: when *n* reaches past the determined
            region of an irrational spec.
    """
    p = canonicalize(p)
    g = p.graph
    if n < 0:
        raise PathError(f"Negative truncation length {n}")
    if isinstance(p, SinkAnchor):
        n = min(n, len(p.prefix))
        return p.prefix.prefix(n), SinkAnchor(p.prefix.suffix(n), p.sink)

    if isinstance(p, Lasso):
        if n <= len(p.prefix):
            return p.prefix.prefix(n), canonicalize(Lasso(p.prefix.suffix(n), p.cycle))
        k = n - len(p.prefix)
        edges = p.prefix.edges + concretize(Lasso(g.vertex_path(p.cycle.src), p.cycle), k)
        head = FinPath(edges, p.prefix.base, g)
        cycle = p.cycle.rotate(k)
        return head, Lasso(g.vertex_path(cycle.src), cycle)

    limit = determined_length(p)
    if n > limit:
        raise UndeterminedRegionError(
            f"Truncating '{p}' at {n} needs a prefix of length {n}; only {limit} edges are determined",
            needed=n,
        )
    rw = recurrent_walk(g, p.recurrent)
    full = FinPath(p.prefix.edges + rw.connector(p.prefix.rng), p.prefix.base, g)
    return full.prefix(n), canonicalize(IrrationalSpec(full.suffix(n), p.recurrent))


def tail_vertices(p: OmegaPathSpec) -> frozenset[str]:
    """Vertices the tail of *p* visits infinitely often."""
    p = canonicalize(p)
    if isinstance(p, SinkAnchor):
        return frozenset({p.sink})
    if isinstance(p, Lasso):
        return frozenset(p.cycle.vertices())
    return recurrent_walk(p.graph, p.recurrent).vertices


def u_set(T: OmegaPathSpec) -> frozenset[str]:
    """``U(T)``: every vertex with a path into the vertices visited by *T*."""
    p = canonicalize(T)
    return p.graph.ancestors(set(tail_vertices(p)) | set(p.prefix.vertices()))


def lasso(graph: Graph, cycle: Iterable[str], prefix: Iterable[str] = (), base: str | None = None) -> Lasso:
    """Convenience constructor returning a canonical lasso."""
    c = graph.path(tuple(cycle))
    pre = tuple(prefix)
    p = graph.path(pre, base if pre or base else c.src)
    result = canonicalize(Lasso(p, c))
    assert isinstance(result, Lasso)
    return result

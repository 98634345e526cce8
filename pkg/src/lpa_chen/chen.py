"""Chen simple modules ``V_[p]`` and computations inside them.

The module on the class ``[p]`` has the canonical infinite paths
tail-equivalent to ``p`` as a basis.  Vertices, edges and ghost edges act
on a basis path ``q`` by

* ``v·q = q`` if ``v = s(q)``, else 0;
* ``e·q = eq`` if ``r(e) = s(q)``, else 0;
* ``e*·q = τ>1(q)`` if ``q`` starts with ``e``, else 0.
"""

from __future__ import annotations

import enum
import logging
from collections import defaultdict, deque
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field

import networkx as nx

from lpa_chen.algebra import AlgebraElement, LeavittAlgebra, Monomial, Scalar, format_scalar
from lpa_chen.errors import GraphMismatchError, PathError, PreconditionError, UndeterminedRegionError
from lpa_chen.graph import FinPath, simple_closed_paths
from lpa_chen.omega import (
    IrrationalSpec,
    Lasso,
    OmegaPathSpec,
    SinkAnchor,
    canonicalize,
    class_key,
    concretize,
    determined_length,
    divisible_by,
    prepend,
    spec_sort_key,
    truncate,
    u_set,
)


class ChenModule:
    """The simple module ``V_[p]`` over a :class:`LeavittAlgebra`."""

    def __init__(self, algebra: LeavittAlgebra, representative: OmegaPathSpec) -> None:
        if representative.graph != algebra.graph:
            raise GraphMismatchError("Path and algebra are over different graphs")
        self.algebra = algebra
        self.representative = canonicalize(representative)
        self.key = class_key(self.representative)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChenModule):
            return NotImplemented
        return self.algebra == other.algebra and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.algebra, self.key))

    def __repr__(self) -> str:
        return f"ChenModule({self.representative})"

    def zero(self) -> ChenElement:
        return ChenElement(self, {})

    def basis(self, p: OmegaPathSpec, k: int | Scalar = 1) -> ChenElement:
        return self.element([(p, k)])

    def element(self, terms: Iterable[tuple[OmegaPathSpec, int | Scalar]]) -> ChenElement:
        """Build an element, canonicalizing keys and merging repeats.

        Raises:
            PreconditionError: if a key lies outside the module's class.
        """
        acc: dict[OmegaPathSpec, Scalar] = defaultdict(lambda: self.algebra.field.zero)
        for p, k in terms:
            q = canonicalize(p)
            if class_key(q) != self.key:
                raise PreconditionError(f"'{q}' is not tail-equivalent to '{self.representative}'")
            acc[q] = acc[q] + self.algebra.field.coerce(k)
        return ChenElement(self, acc)


class ChenElement:
    """A finite combination of basis paths of one Chen module."""

    __slots__ = ("module", "_terms")

    def __init__(self, module: ChenModule, terms: Mapping[OmegaPathSpec, Scalar]) -> None:
        self.module = module
        ordered = sorted(((p, k) for p, k in terms.items() if k), key=lambda t: spec_sort_key(t[0]))
        self._terms: dict[OmegaPathSpec, Scalar] = dict(ordered)

    @property
    def terms(self) -> dict[OmegaPathSpec, Scalar]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[OmegaPathSpec, Scalar]]:
        return iter(self._terms.items())

    def coefficient(self, p: OmegaPathSpec) -> Scalar:
        return self._terms.get(canonicalize(p), self.module.algebra.field.zero)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, ChenElement):
            return NotImplemented
        return self.module == other.module and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def _combine(self, other: ChenElement, sign: int) -> ChenElement:
        if self.module != other.module:
            raise GraphMismatchError("Elements belong to different Chen modules")
        acc = dict(self._terms)
        zero = self.module.algebra.field.zero
        for p, k in other.items():
            acc[p] = acc.get(p, zero) + k * sign
        return ChenElement(self.module, acc)

    def __add__(self, other: ChenElement) -> ChenElement:
        return self._combine(other, 1)

    def __sub__(self, other: ChenElement) -> ChenElement:
        return self._combine(other, -1)

    def __neg__(self) -> ChenElement:
        return self.scale(-1)

    def scale(self, k: int | Scalar) -> ChenElement:
        k = self.module.algebra.field.coerce(k)
        return ChenElement(self.module, {p: c * k for p, c in self._terms.items()})

    def __rmul__(self, k: int | Scalar) -> ChenElement:
        return self.scale(k)

    def __str__(self) -> str:
        return format_chen(self)

    def __repr__(self) -> str:
        return f"ChenElement({self})"


def format_chen(t: ChenElement) -> str:
    if not t:
        return "0"
    return " ; ".join(str(p) if k == 1 else f"{format_scalar(k)} @ {p}" for p, k in t.items())


# ------------------------------------------------------------------
# The action
# ------------------------------------------------------------------


def ghost_apply(beta: FinPath, q: OmegaPathSpec) -> OmegaPathSpec | None:
    """Return ``β*·q`` as a basis path, or ``None`` when it is zero.

    Raises:
        UndeterminedRegionError: if deciding the match needs edges of an
            irrational key beyond its determined region.
    """
    if q.src != beta.src:
        return None
    n = len(beta)
    limit = determined_length(q)
    if limit is not None and n > limit:
        if concretize(q, limit) != beta.edges[:limit]:
            return None
        raise UndeterminedRegionError(
            f"Ghost path '{beta}*' probes {n} edges of '{q}'; supply a prefix of length {n}",
            needed=n,
        )
    if isinstance(q, SinkAnchor) and n > len(q.prefix):
        return None
    head, rest = truncate(q, n)
    return rest if head.edges == beta.edges else None


def act_monomial(mu: Monomial, q: OmegaPathSpec) -> OmegaPathSpec | None:
    rest = ghost_apply(mu.beta, q)
    if rest is None:
        return None
    return prepend(mu.alpha, rest)


def act(a: AlgebraElement, t: ChenElement) -> ChenElement:
    """Apply an algebra element to a module element.

    Raises:
        GraphMismatchError: if *a* and *t* live over different algebras.
        UndeterminedRegionError: see :func:`ghost_apply`.
    """
    module = t.module
    if a.algebra != module.algebra:
        raise GraphMismatchError("Algebra element and module element are over different algebras")
    acc: dict[OmegaPathSpec, Scalar] = defaultdict(lambda: module.algebra.field.zero)
    for mu, k in a.items():
        for q, c in t.items():
            image = act_monomial(mu, q)
            if image is not None:
                acc[image] = acc[image] + k * c
    return ChenElement(module, acc)


def act_path(alpha: FinPath, t: ChenElement) -> ChenElement:
    return act(t.module.algebra.path(alpha), t)


# ------------------------------------------------------------------
# d-degree decomposition
# ------------------------------------------------------------------


def is_d_infinity(p: OmegaPathSpec, d: FinPath) -> bool:
    return isinstance(p, Lasso) and not p.prefix.edges and p.cycle.edges == d.edges and p.src == d.src


@dataclass(frozen=True)
class DDegreeDecomposition:
    d: FinPath
    k_dinf: Scalar
    layers: list[ChenElement] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return max(len(self.layers) - 1, 0)

    def reassemble(self, module: ChenModule) -> ChenElement:
        total = module.zero()
        if self.k_dinf:
            total = total + module.basis(Lasso(self.d.graph.vertex_path(self.d.src), self.d), self.k_dinf)
        for i, layer in enumerate(self.layers):
            total = total + act_path(self.d.power(i), layer)
        return total


def d_decompose(t: ChenElement, d: FinPath) -> DDegreeDecomposition:
    """Write ``t = k·d^∞ + t₀ + d t₁ + … + d^s t_s`` with layers on ``L(d, q)``.

    Raises:
        PreconditionError: if *t* is not supported at ``s(d)`` or *d* is
            not a simple closed path.
    """
    module = t.module
    alg = module.algebra
    _check_closed(d)
    if act(alg.vertex(d.src), t) != t:
        raise PreconditionError(f"Element is not supported at s(d) = '{d.src}'")
    zero = alg.field.zero
    k = zero
    layers: dict[int, dict[OmegaPathSpec, Scalar]] = defaultdict(dict)
    for p, c in t.items():
        if is_d_infinity(p, d):
            k = k + c
            continue
        j = 0
        while divisible_by(p, d):
            _, p = truncate(p, len(d))
            j += 1
        layers[j][p] = layers[j].get(p, zero) + c
    top = max(layers) if layers else -1
    return DDegreeDecomposition(
        d, k, [ChenElement(module, layers.get(i, {})) for i in range(top + 1)]
    )


def _check_closed(d: FinPath) -> None:
    if not d.is_closed or not d.is_primitive():
        raise PathError(f"'{d}' is not a simple closed path")


# ------------------------------------------------------------------
# The shift equation (d − 1)X = t
# ------------------------------------------------------------------


@dataclass(frozen=True)
class Solution:
    x: ChenElement


@dataclass(frozen=True)
class NoSolution:
    obstruction: str
    witness: OmegaPathSpec
    coefficient: Scalar


def solve_shift_equation(d: FinPath, t: ChenElement) -> Solution | NoSolution:
    """Solve ``(d − 1)X = t`` in the module of *t*.

    The part of *t* away from ``s(d)`` is solved by its negative.  The
    rest is solvable exactly when it has no ``d^∞`` coefficient and its
    layers sum to zero on every path of ``L(d, q)``; the solution then
    telescopes as ``X = −Σ_j d^j (t₀ + … + t_j)``.
    """
    module = t.module
    alg = module.algebra
    t_v = act(alg.vertex(d.src), t)
    t_o = t - t_v
    dec = d_decompose(t_v, d)
    if dec.k_dinf:
        dinf = canonicalize(Lasso(alg.graph.vertex_path(d.src), d))
        logging.info("Shift equation for d=%s has a d^inf obstruction", d)
        return NoSolution(f"coefficient {dec.k_dinf} on {dinf}", dinf, dec.k_dinf)

    sums: dict[OmegaPathSpec, Scalar] = defaultdict(lambda: alg.field.zero)
    for layer in dec.layers:
        for u, c in layer.items():
            sums[u] = sums[u] + c
    for u in sorted(sums, key=spec_sort_key):
        if sums[u]:
            logging.info("Shift equation for d=%s obstructed at %s", d, u)
            return NoSolution(f"layer coefficients on {u} sum to {sums[u]}", u, sums[u])

    x = -t_o
    partial = module.zero()
    for j, layer in enumerate(dec.layers[:-1]):
        partial = partial + layer
        x = x - act_path(d.power(j), partial)
    return Solution(x)


# ------------------------------------------------------------------
# The index set L(d, q)
# ------------------------------------------------------------------


class Cardinality(enum.Enum):
    EMPTY = "empty"
    FINITE = "finite"
    COUNTABLY_INFINITE = "countably_infinite"


@dataclass(frozen=True)
class LCardinality:
    kind: Cardinality
    count: int = 0
    horizon: int = 0  # longest canonical prefix among members when finite


def _tail_rotations(T: OmegaPathSpec) -> list[FinPath]:
    assert isinstance(T, Lasso)
    return T.cycle.rotations()


def l_set_enumerate(d: FinPath, T: OmegaPathSpec, max_len: int) -> list[OmegaPathSpec]:
    """List ``L(d, T)`` members whose canonical prefix has length ≤ *max_len*.

    Raises:
        PreconditionError: for an irrational *T*.
    """
    _check_closed(d)
    T = canonicalize(T)
    if isinstance(T, IrrationalSpec):
        raise PreconditionError("L(d, T) is only enumerated for rational or sink classes")
    g = d.graph
    found: set[OmegaPathSpec] = set()
    stack = [g.vertex_path(d.src)]
    while stack:
        alpha = stack.pop()
        for candidate in _tails_after(alpha, T):
            if not divisible_by(candidate, d):
                found.add(candidate)
        if len(alpha) < max_len:
            stack.extend(alpha.concat(g.path((e,))) for e in g.out_edges(alpha.rng))
    return sorted(found, key=spec_sort_key)


def _tails_after(alpha: FinPath, T: OmegaPathSpec) -> list[OmegaPathSpec]:
    """Canonical members of ``[T]`` whose prefix is exactly *alpha*."""
    if isinstance(T, SinkAnchor):
        return [SinkAnchor(alpha, T.sink)] if alpha.rng == T.sink else []
    out = []
    for c in _tail_rotations(T):
        if c.src != alpha.rng:
            continue
        if alpha.edges and alpha.edges[-1] == c.edges[-1]:
            continue
        out.append(Lasso(alpha, c))
    return out


def _l_automaton(d: FinPath, T: OmegaPathSpec) -> tuple[nx.DiGraph, tuple, dict[tuple, int]]:
    """Automaton whose weighted walks from the start are the members of ``L(d, T)``.

    States are ``("p", k)`` while the path still agrees with the first
    ``k`` edges of ``d`` and ``("f", e)`` once it has left ``d``, with ``e``
    the last edge read; each transition carries the edge it reads.  A walk
    ending in a state accounts for one member per admissible tail rotation
    there, which is the state's weight.
    """
    g = d.graph
    aut = nx.DiGraph()
    start = ("p", 0)
    aut.add_node(start)
    weights: dict[tuple, int] = {}
    pending = [start]
    while pending:
        state = pending.pop()
        if state[0] == "p":
            k = state[1]
            alpha = d.prefix(k)
            weights[state] = sum(
                1 for p in _tails_after(alpha, T) if not divisible_by(p, d)
            )
            moves = []
            for h in g.out_edges(alpha.rng):
                if h == d.edges[k]:
                    if k + 1 < len(d):
                        moves.append((("p", k + 1), h))
                else:
                    moves.append((("f", h), h))
        else:
            h_last = state[1]
            x = g.rng[h_last]
            weights[state] = len(_tails_after(g.path((h_last,)), T))
            moves = [(("f", h), h) for h in g.out_edges(x)]
        for nxt, h in moves:
            if nxt not in aut:
                pending.append(nxt)
            aut.add_edge(state, nxt, edge=h)
    return aut, start, weights


def _useful_states(aut: nx.DiGraph, start: tuple, weights: dict[tuple, int]) -> set[tuple]:
    """States on some walk from the start to a state of positive weight."""
    useful: set[tuple] = set()
    for s, w in weights.items():
        if w:
            useful |= nx.ancestors(aut, s) | {s}
    return useful & (nx.descendants(aut, start) | {start})


def l_set_sample(d: FinPath, T: OmegaPathSpec, limit: int) -> list[OmegaPathSpec]:
    """Return up to *limit* members of ``L(d, T)``, shortest prefixes first.

    Prefixes are only extended along useful automaton states, so every
    expanded prefix still leads to a member and the search does not blow
    up on graphs with many loops.

    Raises:
        PreconditionError: for an irrational *T*.
    """
    _check_closed(d)
    T = canonicalize(T)
    if isinstance(T, IrrationalSpec):
        raise PreconditionError("L(d, T) is only enumerated for rational or sink classes")
    g = d.graph
    aut, start, weights = _l_automaton(d, T)
    useful = _useful_states(aut, start, weights)
    found: list[OmegaPathSpec] = []
    queue = deque([(start, g.vertex_path(d.src))] if start in useful else [])
    while queue and len(found) < limit:
        state, alpha = queue.popleft()
        if weights[state]:
            found.extend(p for p in _tails_after(alpha, T) if not divisible_by(p, d))
        for nxt, data in aut[state].items():
            if nxt in useful:
                queue.append((nxt, alpha.concat(g.path((data["edge"],)))))
    return sorted(found[:limit], key=spec_sort_key)


def l_cardinality(d: FinPath, T: OmegaPathSpec) -> LCardinality:
    """Count ``L(d, T)`` exactly, or report it countably infinite."""
    _check_closed(d)
    T = canonicalize(T)
    if isinstance(T, IrrationalSpec):
        if d.src not in u_set(T):
            return LCardinality(Cardinality.EMPTY)
        return LCardinality(Cardinality.COUNTABLY_INFINITE)

    aut, start, weights = _l_automaton(d, T)
    useful = _useful_states(aut, start, weights)
    core = aut.subgraph(useful)
    logging.debug("L-automaton for d=%s: %d states, %d useful", d, aut.number_of_nodes(), len(useful))
    if not useful:
        return LCardinality(Cardinality.EMPTY)
    if not nx.is_directed_acyclic_graph(core):
        return LCardinality(Cardinality.COUNTABLY_INFINITE)

    walks = {start: 1}
    depth = {start: 0}
    total = 0
    horizon = 0
    for s in nx.topological_sort(core):
        n = walks.get(s, 0)
        if not n:
            continue
        if weights[s]:
            total += n * weights[s]
            horizon = max(horizon, depth[s])
        for nxt in core.successors(s):
            walks[nxt] = walks.get(nxt, 0) + n
            depth[nxt] = max(depth.get(nxt, 0), depth[s] + 1)
    if total == 0:
        return LCardinality(Cardinality.EMPTY)
    return LCardinality(Cardinality.FINITE, total, horizon)


# ------------------------------------------------------------------
# Faithfulness probe
# ------------------------------------------------------------------


def probe_paths(algebra: LeavittAlgebra, depth: int) -> Iterator[OmegaPathSpec]:
    """Yield canonical lassos and sink anchors with short descriptions."""
    g = algebra.graph
    seen: set[OmegaPathSpec] = set()
    cycles = [c.path for c in simple_closed_paths(g, depth)] if g.edges else []
    stack = [g.vertex_path(v) for v in reversed(g.vertices)]
    while stack:
        alpha = stack.pop()
        if not g.out_edges(alpha.rng):
            candidates: list[OmegaPathSpec] = [SinkAnchor(alpha, alpha.rng)]
        else:
            candidates = [canonicalize(Lasso(alpha, c)) for c in cycles if c.src == alpha.rng]
        for p in candidates:
            if p not in seen:
                seen.add(p)
                yield p
        if len(alpha) < depth:
            stack.extend(alpha.concat(g.path((e,))) for e in reversed(g.out_edges(alpha.rng)))


def separating_path(a: AlgebraElement, b: AlgebraElement, depth: int) -> OmegaPathSpec | None:
    """Find a basis path on which *a* and *b* act differently.

    ``None`` means the two were not separated at this depth, which does
    not prove ``a = b``.
    """
    alg = a.algebra
    for p in probe_paths(alg, depth):
        module = ChenModule(alg, p)
        t = module.basis(p)
        if act(a, t) != act(b, t):
            return p
    return None

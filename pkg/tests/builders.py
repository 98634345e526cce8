"""Graph families and random elements shared by the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from lpa_chen.algebra import LeavittAlgebra, Monomial
from lpa_chen.graph import FinPath, Graph


def e_graph(n: int) -> Graph:
    """Loop ``d`` at ``v``, parallel edges ``e1 … en`` from ``v`` to ``w``, loop ``f`` at ``w``."""
    edges = [("d", "v", "v")]
    edges += [(f"e{i}", "v", "w") for i in range(1, n + 1)]
    edges.append(("f", "w", "w"))
    return Graph(["v", "w"], edges)


def chain_graph(n: int) -> Graph:
    """Chain ``v1 → … → vn → v`` with exits ``xi: vi → w``, loops ``e, f`` at ``v`` and ``g, h`` at ``w``."""
    chain = [f"v{i}" for i in range(1, n + 1)]
    vertices = chain + ["v", "w"]
    edges = []
    for i, vi in enumerate(chain, start=1):
        nxt = chain[i] if i < n else "v"
        edges.append((f"e{i}", vi, nxt))
    edges += [(f"x{i}", vi, "w") for i, vi in enumerate(chain, start=1)]
    edges += [("e", "v", "v"), ("f", "v", "v"), ("g", "w", "w"), ("h", "w", "w")]
    return Graph(vertices, edges)


# ------------------------------------------------------------------
# Random elements
# ------------------------------------------------------------------

def random_path_from(g: Graph, rng: random.Random, start: str, length: int) -> FinPath:
    edges = []
    at = start
    for _ in range(length):
        out = g.out_edges(at)
        if not out:
            break
        e = rng.choice(out)
        edges.append(e)
        at = g.rng[e]
    return g.path(edges, start)


def random_path_to(g: Graph, rng: random.Random, end: str, length: int) -> FinPath:
    edges: list[str] = []
    at = end
    for _ in range(length):
        into = [e for e in g.edges if g.rng[e] == at]
        if not into:
            break
        e = rng.choice(into)
        edges.insert(0, e)
        at = g.src[e]
    return g.path(edges, at)


def random_monomial(g: Graph, rng: random.Random, max_len: int = 2) -> Monomial:
    alpha = random_path_from(g, rng, rng.choice(g.vertices), rng.randint(0, max_len))
    beta = random_path_to(g, rng, alpha.rng, rng.randint(0, max_len))
    return Monomial(alpha, beta)


def random_element(alg: LeavittAlgebra, rng: random.Random, terms: int = 3):
    return alg.combination(
        (random_monomial(alg.graph, rng), rng.choice([-2, -1, 1, 2, Fraction(1, 2)]))
        for _ in range(rng.randint(1, terms))
    )


# ------------------------------------------------------------------
# Random graphs
# ------------------------------------------------------------------

def random_graph(rng: random.Random, max_vertices: int = 6, max_out: int = 2) -> Graph:
    """Graph on at most *max_vertices* vertices, each emitting at most *max_out* edges."""
    vertices = [f"u{i}" for i in range(rng.randint(1, max_vertices))]
    edges = []
    for v in vertices:
        for _ in range(rng.randint(0, max_out)):
            edges.append((f"a{len(edges)}", v, rng.choice(vertices)))
    return Graph(vertices, edges)

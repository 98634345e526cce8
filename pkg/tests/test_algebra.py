"""Tests for lpa_chen.algebra."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from lpa_chen.algebra import (
    LeavittAlgebra,
    Monomial,
    PrimeField,
    Residue,
    annihilator_decomposition,
    classify_monomial,
    f_sum,
    solve_for_q_expansion,
    telescoping_factor,
)
from lpa_chen.errors import GraphMismatchError, PathError, PreconditionError
from lpa_chen.graph import Graph

from tests.builders import chain_graph, e_graph, random_element, random_monomial


GRAPHS = [
    Graph(["v"], [("d", "v", "v")]),
    Graph(["v"], [("e", "v", "v"), ("f", "v", "v")]),
    e_graph(2),
    chain_graph(2),
    Graph(["u", "v", "w"], [("a", "u", "v"), ("b", "v", "w"), ("c", "u", "w")]),
]


# ------------------------------------------------------------------
# Scalars
# ------------------------------------------------------------------

class TestScalars:
    def test_prime_coerce_fraction(self):
        assert PrimeField(5).coerce(Fraction(1, 2)) == Residue(3, 5)

    def test_prime_coerce_rejects_zero_denominator(self):
        with pytest.raises(PreconditionError):
            PrimeField(5).coerce(Fraction(1, 5))

    def test_residue_arithmetic(self):
        a = Residue(3, 7)
        assert a + 5 == Residue(1, 7)
        assert a * a == Residue(2, 7)
        assert -a == Residue(4, 7)
        assert a / a == 1
        assert not Residue(0, 7)

    def test_mixed_moduli(self):
        with pytest.raises(GraphMismatchError):
            Residue(1, 5) + Residue(1, 7)

    def test_invalid_modulus(self):
        with pytest.raises(ValueError):
            PrimeField(1)


# ------------------------------------------------------------------
# Monomials and elements
# ------------------------------------------------------------------

class TestMonomial:
    def test_needs_common_range(self, sink_chain):
        with pytest.raises(PathError):
            Monomial(sink_chain.path(("a",)), sink_chain.vertex_path("u"))

    def test_str(self, r2):
        mu = Monomial(r2.path(("e",)), r2.path(("f", "e")))
        assert str(mu) == "e e* f*"
        assert mu.r == "v"
        assert str(mu.star()) == "f e e*"


class TestElement:
    def test_format_orders_by_length(self, alg_r2):
        e, f, v = alg_r2.edge("e"), alg_r2.ghost("f"), alg_r2.vertex("v")
        a = e * f * Fraction(1, 2) + v
        assert str(a) == "v + 1/2 e f*"

    def test_negative_leading_term(self, alg_r2):
        assert str(-alg_r2.edge("f")) == "-f"

    def test_zero(self, alg_r2):
        assert str(alg_r2.zero()) == "0"
        assert alg_r2.zero() == 0
        assert not alg_r2.zero()

    def test_mismatched_algebras(self, alg_r1, alg_r2):
        with pytest.raises(GraphMismatchError):
            alg_r1.multiply(alg_r1.vertex("v"), alg_r2.vertex("v"))

    def test_prime_field_scalars(self, r2):
        alg = LeavittAlgebra(r2, PrimeField(3))
        assert alg.scalar(3) == 0
        assert alg.vertex("v").scale(Fraction(1, 2)) == alg.vertex("v").scale(2)


# ------------------------------------------------------------------
# Normal form
# ------------------------------------------------------------------

class TestRelations:
    def test_ck1(self, alg_r2):
        assert alg_r2.multiply(alg_r2.ghost("e"), alg_r2.edge("e")) == alg_r2.vertex("v")
        assert alg_r2.multiply(alg_r2.ghost("e"), alg_r2.edge("f")) == 0

    def test_special_edge_rewrite(self, alg_r2):
        ee = alg_r2.multiply(alg_r2.edge("e"), alg_r2.ghost("e"))
        assert str(ee) == "v - f f*"

    def test_non_special_is_basic(self, alg_r2):
        ff = alg_r2.multiply(alg_r2.edge("f"), alg_r2.ghost("f"))
        assert str(ff) == "f f*"

    @pytest.mark.parametrize("g", GRAPHS)
    def test_ck2_at_every_regular_vertex(self, g):
        alg = LeavittAlgebra(g)
        for v in g.vertices:
            out = g.out_edges(v)
            if not out:
                continue
            total = alg.zero()
            for e in out:
                total = total + alg.multiply(alg.edge(e), alg.ghost(e))
            assert total == alg.vertex(v)

    @pytest.mark.parametrize("g", GRAPHS)
    def test_vertices_are_orthogonal_idempotents(self, g):
        alg = LeavittAlgebra(g)
        for v in g.vertices:
            for w in g.vertices:
                prod = alg.multiply(alg.vertex(v), alg.vertex(w))
                assert prod == (alg.vertex(v) if v == w else alg.zero())
        total = alg.zero()
        for v in g.vertices:
            total = total + alg.vertex(v)
        assert total == alg.one()

    def test_edge_relations(self, sink_chain):
        alg = LeavittAlgebra(sink_chain)
        a = alg.edge("a")
        assert alg.product(alg.vertex("u"), a, alg.vertex("v")) == a
        assert alg.multiply(alg.vertex("v"), a) == 0

    def test_sink_has_no_ck2(self, sink_chain):
        alg = LeavittAlgebra(sink_chain)
        bb = alg.multiply(alg.edge("b"), alg.ghost("b"))
        assert str(bb) == "b b*"

    def test_is_basic(self, r2):
        alg = LeavittAlgebra(r2)
        assert not alg.is_basic(Monomial(r2.path(("e",)), r2.path(("e",))))
        assert not alg.is_basic(Monomial(r2.path(("e",)), r2.path(("f", "e"))))
        assert alg.is_basic(Monomial(r2.path(("f",)), r2.path(("f",))))


class TestNormalFormProperties:
    @pytest.mark.parametrize("g", GRAPHS)
    def test_associativity(self, g):
        alg = LeavittAlgebra(g)
        rng = random.Random(11)
        for _ in range(60):
            a, b, c = (random_element(alg, rng) for _ in range(3))
            assert alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c))

    @pytest.mark.parametrize("g", GRAPHS)
    def test_confluence_under_random_order(self, g):
        alg = LeavittAlgebra(g)
        rng = random.Random(5)
        for _ in range(60):
            raw = {random_monomial(g, rng, 3): Fraction(rng.randint(-3, 3)) for _ in range(4)}
            expected = alg.normalize(raw)
            for seed in range(3):
                assert alg.normalize(raw, random.Random(seed)) == expected
            assert all(alg.is_basic(mu) for mu, _ in expected.items())

    @pytest.mark.parametrize("g", GRAPHS)
    def test_star_reverses_products(self, g):
        alg = LeavittAlgebra(g)
        rng = random.Random(3)
        for _ in range(40):
            a, b = random_element(alg, rng), random_element(alg, rng)
            assert alg.multiply(a, b).star() == alg.multiply(b.star(), a.star())

    @pytest.mark.slow
    def test_associativity_large_sample(self):
        rng = random.Random(2024)
        algebras = [LeavittAlgebra(g) for g in GRAPHS]
        for _ in range(10_000):
            alg = rng.choice(algebras)
            a, b, c = (random_element(alg, rng, 2) for _ in range(3))
            assert alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c))


# ------------------------------------------------------------------
# Kernel identities
# ------------------------------------------------------------------

class TestSolveForQ:
    def test_components_sum_to_q(self):
        g = e_graph(2)
        alg = LeavittAlgebra(g)
        alpha = g.path(("d", "e1"))
        rng = random.Random(9)
        for _ in range(30):
            q = alg.multiply(random_element(alg, rng), alg.vertex("v"))
            x = alg.multiply(q, alg.path(alpha))
            parts = solve_for_q_expansion(q, alpha, x)
            assert len(parts) == len(alpha) + 1
            total = alg.zero()
            for part in parts:
                total = total + part
            assert total == q

    def test_wrong_x(self, alg_r2):
        g = alg_r2.graph
        with pytest.raises(PreconditionError):
            solve_for_q_expansion(alg_r2.vertex("v"), g.path(("e",)), alg_r2.zero())

    def test_q_not_at_source(self, sink_chain):
        alg = LeavittAlgebra(sink_chain)
        alpha = sink_chain.path(("b",))
        q = alg.one()
        with pytest.raises(PreconditionError, match="not supported"):
            solve_for_q_expansion(q, alpha, alg.multiply(q, alg.path(alpha)))

    def test_f_sum(self, alg_r2):
        beta = alg_r2.graph.path(("e", "f"))
        assert str(f_sum(alg_r2, beta, 0)) == "f f*"


class TestAnnihilatorDecomposition:
    def test_parts_sum_to_x_and_lie_in_j(self, alg_r2):
        g = alg_r2.graph
        beta = g.path(("e", "f"))
        x = alg_r2.ghost("f") + alg_r2.multiply(alg_r2.edge("e"), alg_r2.ghost_path(g.path(("e", "e"))))
        assert alg_r2.multiply(x, alg_r2.path(beta)) == 0
        parts = annihilator_decomposition(x, beta)
        total = alg_r2.zero()
        for i, t in enumerate(parts):
            total = total + t
            # t_i is a left multiple of f* beta_i*, so it kills beta_i e_{i+1}
            assert alg_r2.multiply(t, alg_r2.path(beta.prefix(i + 1))) == 0
        assert total == x

    def test_requires_annihilation(self, alg_r2):
        with pytest.raises(PreconditionError):
            annihilator_decomposition(alg_r2.vertex("v"), alg_r2.graph.path(("e",)))


class TestClassifyMonomial:
    def test_ghost_power_is_s2(self, r1):
        mu = Monomial(r1.vertex_path("v"), r1.path(("d", "d", "d")))
        cls = classify_monomial(mu, r1.path(("d",)))
        assert cls.in_s2
        assert (cls.form.i, cls.form.n) == (0, 3)

    def test_partial_cycle(self, r2):
        c = r2.path(("e", "f"))
        mu = Monomial(r2.path(("f",)), r2.path(("e", "f", "e")))
        cls = classify_monomial(mu, c)
        assert cls.in_s2
        assert (str(cls.form.alpha), cls.form.i, cls.form.n) == ("f", 1, 1)

    def test_exit_is_s1(self, r2):
        cls = classify_monomial(Monomial(r2.vertex_path("v"), r2.path(("f",))), r2.path(("e",)))
        assert not cls.in_s2
        assert "exit" in cls.reason

    def test_wrong_vertex_is_s1(self, e_n):
        g = e_n(1)
        mu = Monomial(g.path(("f",)), g.path(("f",)))
        cls = classify_monomial(mu, g.path(("d",)))
        assert not cls.in_s2
        assert cls.reason == "r(μ) differs from s(c)"

    def test_open_path_rejected(self, sink_chain):
        mu = Monomial(sink_chain.vertex_path("u"), sink_chain.vertex_path("u"))
        with pytest.raises(PathError):
            classify_monomial(mu, sink_chain.path(("a",)))


class TestTelescopingFactor:
    @pytest.mark.parametrize("z", [-3, -1, 0, 1, 2, 4])
    def test_identity(self, alg_r2, z):
        c = alg_r2.graph.path(("e", "f"))
        v = alg_r2.vertex("v")
        lhs = alg_r2.power(c, z) - v
        rhs = alg_r2.multiply(telescoping_factor(alg_r2, c, z), alg_r2.path(c) - v)
        assert lhs == rhs

    def test_c_squared(self, alg_r1):
        d = alg_r1.graph.path(("d",))
        assert str(telescoping_factor(alg_r1, d, 2)) == "v + d"


class TestRightMultiplicationByCycleMinusVertex:
    @pytest.mark.parametrize("g, cycle", [
        (Graph(["v"], [("e", "v", "v"), ("f", "v", "v")]), ("e", "f")),
        (e_graph(2), ("d",)),
    ])
    def test_no_nonzero_element_is_killed(self, g, cycle):
        alg = LeavittAlgebra(g)
        c = g.path(cycle)
        v = alg.vertex(c.src)
        rng = random.Random(31)
        checked = 0
        for _ in range(200):
            r = alg.multiply(random_element(alg, rng), v)
            if not r:
                continue
            checked += 1
            assert alg.multiply(r, alg.path(c) - v)
        assert checked > 0

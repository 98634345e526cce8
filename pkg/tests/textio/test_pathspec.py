"""Tests for lpa_chen.textio.pathspec."""

from __future__ import annotations

from fractions import Fraction

import pytest

from lpa_chen.algebra import LeavittAlgebra
from lpa_chen.errors import ParseError, PathError, PreconditionError
from lpa_chen.graph import Graph
from lpa_chen.omega import IrrationalSpec, Lasso, SinkAnchor, canonicalize
from lpa_chen.textio.pathspec import format_path_spec, parse_chen, parse_path, parse_path_spec


class TestParsePath:
    def test_edge_run(self, r2):
        assert parse_path(r2, "e f").edges == ("e", "f")

    def test_run_together(self, r2):
        assert parse_path(r2, "eff").edges == ("e", "f", "f")

    def test_lone_vertex(self, r2):
        p = parse_path(r2, " v ")
        assert p.edges == () and p.src == "v"

    def test_blank_is_none(self, r2):
        assert parse_path(r2, "   ") is None

    def test_vertex_inside_edges(self, r2):
        with pytest.raises(ParseError, match="Vertex 'v' inside") as exc:
            parse_path(r2, "v e")
        assert exc.value.column == 1

    def test_non_composable(self, sink_chain):
        with pytest.raises(PathError):
            parse_path(sink_chain, "b a")


class TestParseSink:
    def test_with_prefix(self, sink_chain):
        p = parse_path_spec(sink_chain, "sink: a b -> w")
        assert isinstance(p, SinkAnchor)
        assert p.prefix.edges == ("a", "b") and p.sink == "w"

    def test_without_prefix(self, sink_chain):
        p = parse_path_spec(sink_chain, "sink: -> w")
        assert p.prefix.edges == () and p.src == "w"
        assert str(p) == "sink: -> w"

    def test_unknown_sink_column(self, sink_chain):
        with pytest.raises(ParseError, match="Unknown vertex 'q'") as exc:
            parse_path_spec(sink_chain, "sink: -> q")
        assert exc.value.column == 10

    def test_missing_arrow(self, sink_chain):
        with pytest.raises(ParseError, match="Expected '-> <vertex>'"):
            parse_path_spec(sink_chain, "sink: a b")


class TestParseRational:
    def test_lasso_is_not_canonicalized(self, r2):
        p = parse_path_spec(r2, "rat: f (e)^inf")
        assert isinstance(p, Lasso)
        assert p.prefix.edges == ("f",) and p.cycle.edges == ("e",)

    def test_prefix_defaults_to_cycle_start(self, r2):
        p = parse_path_spec(r2, "rat: (e f)^inf")
        assert p.prefix.edges == () and p.src == "v"

    def test_empty_cycle(self, r2):
        with pytest.raises(ParseError, match="Empty cycle"):
            parse_path_spec(r2, "rat: ()^inf")

    def test_missing_cycle(self, r2):
        with pytest.raises(ParseError, match=r"\(<cycle>\)\^inf"):
            parse_path_spec(r2, "rat: e")

    def test_canonical_text_reads_back(self, r2):
        p = canonicalize(parse_path_spec(r2, "rat: e f (e f)^inf"))
        assert canonicalize(parse_path_spec(r2, format_path_spec(p))) == p


class TestParseIrrational:
    def test_empty_prefix_starts_at_first_touched_vertex(self, r2):
        p = parse_path_spec(r2, "irr: | {e, f}")
        assert isinstance(p, IrrationalSpec)
        assert p.recurrent == frozenset({"e", "f"})
        assert str(p) == "irr: v | {e, f}"

    def test_first_touched_vertex_in_declaration_order(self, chain):
        p = parse_path_spec(chain(2), "irr: | {h, g}")
        assert p.src == "w"

    def test_unknown_edge_column(self, r2):
        with pytest.raises(ParseError, match="Unknown edge 'z'") as exc:
            parse_path_spec(r2, "irr: e | {e, z}")
        assert exc.value.column == 14

    def test_empty_edge_set(self, r2):
        with pytest.raises(ParseError, match="Empty recurrent edge set"):
            parse_path_spec(r2, "irr: e | { }")


class TestParseKind:
    def test_unknown_kind(self, r2):
        with pytest.raises(ParseError, match="Expected 'sink:'") as exc:
            parse_path_spec(r2, "foo: e")
        assert exc.value.column == 1


class TestParseChen:
    def test_scalars_and_default_coefficient(self, alg_r2):
        t = parse_chen(alg_r2, "2 @ rat: (e)^inf ; -1/2 @ rat: f (e)^inf ; rat: e f (e)^inf")
        assert len(t) == 3
        assert t.coefficient(parse_path_spec(alg_r2.graph, "rat: (e)^inf")) == 2
        assert t.coefficient(parse_path_spec(alg_r2.graph, "rat: f (e)^inf")) == Fraction(-1, 2)
        assert t.coefficient(parse_path_spec(alg_r2.graph, "rat: e f (e)^inf")) == 1

    def test_repeated_keys_merge(self, alg_r2):
        t = parse_chen(alg_r2, "rat: e (e)^inf ; rat: (e)^inf")
        assert str(t) == "2 @ rat: (e)^inf"

    def test_error_column_is_absolute(self, alg_r2):
        with pytest.raises(ParseError, match="Unknown identifier 'q'") as exc:
            parse_chen(alg_r2, "rat: (e)^inf ; 2 @ rat: (q)^inf")
        assert exc.value.column == 26

    def test_zero_denominator(self, alg_r2):
        with pytest.raises(ParseError, match="Zero denominator in '1/0'") as exc:
            parse_chen(alg_r2, "rat: (e)^inf ; 1/0 @ rat: (e)^inf")
        assert exc.value.column == 16

    def test_mixed_classes_rejected(self, alg_r2):
        with pytest.raises(PreconditionError):
            parse_chen(alg_r2, "rat: (e)^inf ; rat: (f)^inf")

    def test_empty_element(self, alg_r2):
        with pytest.raises(ParseError, match="Empty module element"):
            parse_chen(alg_r2, "  ; ")

    def test_single_vertex_graph_sink(self):
        g = Graph(["w"], [])
        t = parse_chen(LeavittAlgebra(g), "3 @ sink: -> w")
        assert str(t) == "3 @ sink: -> w"

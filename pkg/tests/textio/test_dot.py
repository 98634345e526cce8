"""Tests for lpa_chen.textio.dot."""

from __future__ import annotations

import pytest

from lpa_chen.errors import ParseError
from lpa_chen.textio.dot import dot_to_document
from lpa_chen.textio.graph_format import parse_graph


def test_labelled_and_unlabelled_edges():
    text = "digraph G {\n  a -> b [label=x];\n  b -> a;\n}\n"
    assert dot_to_document(text) == "lpa-graph v1\na\nb\nx: a -> b\ne1: b -> a\n"


def test_generated_names_skip_taken_ids():
    text = "digraph {\n  e1 -> b;\n  b -> e1;\n}\n"
    doc = dot_to_document(text)
    assert "e2: e1 -> b" in doc
    assert "e3: b -> e1" in doc


def test_quoted_ids_and_node_statements():
    text = 'digraph {\n  "lone" [shape=box];\n  "x" -> "y" [label="k", color=red];\n}\n'
    doc = dot_to_document(text)
    assert doc == "lpa-graph v1\nlone\nx\ny\nk: x -> y\n"


def test_graph_attributes_are_skipped():
    text = "digraph {\n  rankdir = LR;\n  node [shape=circle];\n  // comment\n  a -> a;\n}\n"
    assert dot_to_document(text) == "lpa-graph v1\na\ne1: a -> a\n"


def test_output_is_a_graph_document():
    text = "digraph {\n v -> v [label=d];\n v -> w;\n w -> w [label=f];\n}\n"
    g = parse_graph(dot_to_document(text))
    assert list(g.edges) == ["d", "e1", "f"]
    assert g.rng["e1"] == "w"


def test_undirected_edge_rejected():
    with pytest.raises(ParseError, match="Undirected") as exc:
        dot_to_document("graph {\n  a -- b;\n}\n")
    assert (exc.value.line, exc.value.column) == (2, 3)


def test_edge_chain_rejected():
    with pytest.raises(ParseError, match="Edge chains") as exc:
        dot_to_document("digraph {\n  a -> b -> c;\n}\n")
    assert exc.value.line == 2

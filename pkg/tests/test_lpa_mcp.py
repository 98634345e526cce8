"""Tests for the MCP tool wrappers in lpa_chen.lpa_mcp."""

from __future__ import annotations

import json

import pytest

R1 = "lpa-graph v1\nv\nd: v -> v\n"
R2 = "lpa-graph v1\nv\ne: v -> v\nf: v -> v\n"
E2 = "lpa-graph v1\nv, w\nd: v -> v\ne1: v -> w\ne2: v -> w\nf: w -> w\n"


class TestLpaMcpTools:
    @pytest.fixture(autouse=True)
    def _setup_env(self, monkeypatch):
        monkeypatch.setenv("LPA_CHEN_WITNESS_LIMIT", "2")

        import lpa_chen.lpa_mcp as lm

        monkeypatch.setattr(lm, "_WITNESS_LIMIT", 2)
        self.lm = lm

    def test_normalize_expression(self):
        assert self.lm.normalize_expression(R1, "d* d") == "v"

    def test_normalize_reports_warnings(self):
        result = self.lm.normalize_expression(R2, "e* f")
        assert result.splitlines()[0] == "0"
        assert result.splitlines()[1].startswith("warning:")

    def test_normalize_bad_graph(self):
        result = self.lm.normalize_expression("not a graph", "v")
        assert "line 1" in result

    def test_normalize_unknown_identifier(self):
        result = self.lm.normalize_expression(R1, "q")
        assert "Unknown" in result

    def test_ext_dimension(self):
        report = json.loads(self.lm.ext_dimension(E2, "rat: (d)^inf", "rat: (f)^inf"))
        assert report["dim"] == {"finite": 2}
        assert report["rule"] == "rational-l-count"
        assert len(report["witnesses"]) == 2

    def test_ext_dimension_respects_witness_limit(self):
        report = json.loads(self.lm.ext_dimension(R2, "rat: (e)^inf", "rat: (f)^inf"))
        assert report["dim"] == "countably_infinite"
        assert len(report["witnesses"]) <= 2

    def test_ext_dimension_malformed_spec(self):
        result = self.lm.ext_dimension(R1, "irr: | {d}", "rat: (d)^inf")
        assert "recurrent" in result

    def test_resolve_module(self):
        result = self.lm.resolve_module(R1, "rat: (d)^inf")
        assert "kernel generator: -v + d" in result
        assert "verified: True" in result

    def test_resolve_module_with_generator(self):
        result = self.lm.resolve_module(E2, "rat: (f)^inf", "e1")
        assert "generated at v by rat: e1 (f)^inf" in result

    def test_resolve_module_bad_generator(self):
        result = self.lm.resolve_module(E2, "rat: (f)^inf", "d")
        assert "does not end on the cycle" in result

    def test_finite_presentation(self):
        assert self.lm.finite_presentation(R2, "irr: | {e, f}").startswith("not finitely presented")
        assert self.lm.finite_presentation(R1, "rat: (d)^inf").startswith("finitely presented")

"""Local MCP server exposing lpa-chen computations as tools.

Every tool takes the graph as an ``lpa-graph v1`` document string, so a
client can work on graphs it builds itself.

Run standalone for testing::

    python -m lpa_chen.lpa_mcp
"""

from __future__ import annotations

import os

from mcp.server.fastmcp import FastMCP

from lpa_chen.algebra import LeavittAlgebra
from lpa_chen.errors import LpaError, ParseError
from lpa_chen.homology import ext_dim, is_finitely_presented, resolution, verify_resolution
from lpa_chen.omega import canonicalize
from lpa_chen.textio import reports
from lpa_chen.textio.expr import parse_expr
from lpa_chen.textio.graph_format import parse_graph
from lpa_chen.textio.pathspec import parse_path, parse_path_spec

# Configuration passed via environment variables from the parent process.
_WITNESS_LIMIT = int(os.environ.get("LPA_CHEN_WITNESS_LIMIT", "5"))

mcp_server = FastMCP("lpa-chen")


# ------------------------------------------------------------------
# Tools
# ------------------------------------------------------------------


@mcp_server.tool()
def normalize_expression(graph: str, expr: str) -> str:
    """Reduce an element of the Leavitt path algebra to normal form.

    Args:
        graph: The graph document, starting with the line "lpa-graph v1".
        expr: The element, e.g. "1/2 e f* + v" (juxtaposition is the
              product, a trailing "*" is the ghost edge).
    """
    try:
        alg = _algebra(graph)
        warnings: list[str] = []
        a = parse_expr(alg, expr, warnings)
    except (LpaError, ParseError) as exc:
        return str(exc)
    lines = [str(a)]
    lines.extend(f"warning: {w}" for w in warnings)
    return "\n".join(lines)


@mcp_server.tool()
def ext_dimension(graph: str, source: str, target: str) -> str:
    """Classify dim Ext^1(V_S, V_T) for two Chen simple modules.

    Args:
        graph: The graph document.
        source: Spec of S, e.g. "rat: (d)^inf", "sink: -> w" or "irr: | {e, f}".
        target: Spec of T in the same syntax.

    Returns the JSON report with the dimension, the rule that decided it
    and basis witnesses.
    """
    try:
        g = parse_graph(graph)
        S = canonicalize(parse_path_spec(g, source))
        T = canonicalize(parse_path_spec(g, target))
        dim = ext_dim(S, T, _WITNESS_LIMIT)
    except (LpaError, ParseError) as exc:
        return str(exc)
    return reports.dumps(reports.ext_report(S, T, dim))


@mcp_server.tool()
def resolve_module(graph: str, spec: str, generator: str = "") -> str:
    """Build the projective resolution of a Chen simple module.

    Args:
        graph: The graph document.
        spec: Spec of the module.
        generator: Optional path alpha; the module is then presented from
                   L(E)s(alpha) through alpha.
    """
    try:
        alg = _algebra(graph)
        S = canonicalize(parse_path_spec(alg.graph, spec))
        alpha = parse_path(alg.graph, generator) if generator.strip() else None
        res = resolution(alg, S, alpha)
    except (LpaError, ParseError) as exc:
        return str(exc)
    return reports.render_text(reports.resolution_report(res, verify_resolution(alg, res)))


@mcp_server.tool()
def finite_presentation(graph: str, spec: str) -> str:
    """Decide whether a Chen simple module is finitely presented.

    Rational and sink modules are; irrational ones never are on a finite
    graph, and the answer names the branching vertex responsible.
    """
    try:
        g = parse_graph(graph)
        S = canonicalize(parse_path_spec(g, spec))
    except (LpaError, ParseError) as exc:
        return str(exc)
    return reports.render_text(reports.presentation_report(S, is_finitely_presented(S)))


# ------------------------------------------------------------------
# Helpers
# ------------------------------------------------------------------


def _algebra(document: str) -> LeavittAlgebra:
    return LeavittAlgebra(parse_graph(document))


# ------------------------------------------------------------------
# Entry point
# ------------------------------------------------------------------

if __name__ == "__main__":
    mcp_server.run()

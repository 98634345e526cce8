"""Command-line dispatch for ``lpa-chen``.

Exit codes: 0 on success, 1 when the request is rejected by the algebra
(:class:`LpaError`), 2 for unreadable input (parse errors, bad
configuration, missing files, usage errors).
"""

from __future__ import annotations

import argparse
import logging
import os
import random
import sys
from typing import TextIO

from lpa_chen import __version__
from lpa_chen.algebra import RATIONALS, Field, LeavittAlgebra, PrimeField
from lpa_chen.chen import act, l_cardinality, l_set_enumerate, separating_path, solve_shift_equation
from lpa_chen.config import Config, load_config, validate_config
from lpa_chen.errors import ConfigError, LpaError, ParseError
from lpa_chen.graph import FinPath, Graph, is_line_point, simple_closed_paths
from lpa_chen.homology import (
    ext_dim,
    ext_table,
    is_finitely_presented,
    resolution,
    uniserial_report,
    verify_resolution,
)
from lpa_chen.logging_conf import configure_logging
from lpa_chen.omega import IrrationalSpec, OmegaPathSpec, canonicalize
from lpa_chen.paths import graphs_dir
from lpa_chen.textio import reports
from lpa_chen.textio.dot import dot_to_document
from lpa_chen.textio.expr import parse_expr
from lpa_chen.textio.graph_format import load_graph
from lpa_chen.textio.pathspec import parse_chen, parse_path, parse_path_spec


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", metavar="FILE", help="graph document (.lpa); bundled names are looked up in config/graphs")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--max-len", type=int, metavar="N", help="path length bound for enumerations")
    common.add_argument("--seed", type=int, metavar="N", help="seed for the rewrite order")
    common.add_argument("--config", metavar="FILE", help="YAML configuration file")
    common.add_argument("--prime", type=int, metavar="P", help="compute over GF(P) instead of the rationals")
    common.add_argument("--log-level", metavar="LEVEL", help="override app.log_level")

    parser = argparse.ArgumentParser(
        prog="lpa-chen",
        description="Leavitt path algebras, Chen simple modules and their Ext groups",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="reduce an element to normal form")
    p.add_argument("expr")
    p = sub.add_parser("mul", parents=[common], help="multiply two elements")
    p.add_argument("left")
    p.add_argument("right")
    p = sub.add_parser("act", parents=[common], help="apply an element to a Chen module element")
    p.add_argument("expr")
    p.add_argument("vector", help="'k @ spec ; k @ spec ...'")
    p = sub.add_parser("ext", parents=[common], help="classify dim Ext^1(V_S, V_T)")
    p.add_argument("source")
    p.add_argument("target")
    p = sub.add_parser("ext-table", parents=[common], help="Ext^1 dimensions for every pair of specs")
    p.add_argument("specs", nargs="+")
    p = sub.add_parser("resolve", parents=[common], help="projective resolution of V_S")
    p.add_argument("spec")
    p.add_argument("--generator", metavar="PATH", help="present from L(E)s(alpha) via alpha")
    p.add_argument("--horizon", type=int, metavar="N", help="steps of the irrational kernel to list")
    p = sub.add_parser("solve-shift", parents=[common], help="solve (d - 1)X = t")
    p.add_argument("d", help="simple closed path")
    p.add_argument("vector")
    p = sub.add_parser("lset", parents=[common], help="count and list L(d, T)")
    p.add_argument("d")
    p.add_argument("target")
    sub.add_parser("line-points", parents=[common], help="decide the line points of the graph")
    sub.add_parser("cycles", parents=[common], help="list simple closed paths")
    p = sub.add_parser("fp-check", parents=[common], help="decide finite presentation of V_S")
    p.add_argument("spec")
    p = sub.add_parser("uniserial", parents=[common], help="uniserial modules with factors V_S")
    p.add_argument("spec")
    p.add_argument("--length", type=int, default=2, metavar="N")
    p = sub.add_parser("separate", parents=[common], help="find a path on which two elements act differently")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--depth", type=int, metavar="D", help="probe depth (default paths.probe_depth)")
    p = sub.add_parser("from-dot", parents=[common], help="convert a DOT digraph to a graph document")
    p.add_argument("file")
    return parser


class CommandRunner:
    """Runs one parsed command and renders its report."""

    def __init__(self, args: argparse.Namespace, config: Config, out: TextIO) -> None:
        self.args = args
        self.config = config
        self.out = out
        self.rng = random.Random(args.seed) if args.seed is not None else None
        self._algebra: LeavittAlgebra | None = None

    def run(self) -> int:
        handler = getattr(self, "_cmd_" + self.args.command.replace("-", "_"))
        report = handler()
        if report is None:
            return 0
        if self.args.json:
            print(reports.dumps(report, self.config.reports.json_indent), file=self.out)
        else:
            print(reports.render_text(report), file=self.out)
        return 0

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------

    @property
    def algebra(self) -> LeavittAlgebra:
        if self._algebra is None:
            self._algebra = LeavittAlgebra(self._graph(), self._field())
        return self._algebra

    def _graph(self) -> Graph:
        name = self.args.graph
        if not name:
            raise ParseError("This command needs --graph FILE")
        if not os.path.exists(name) and os.path.exists(os.path.join(graphs_dir(), name)):
            name = os.path.join(graphs_dir(), name)
        logging.debug("Loading graph from %s", name)
        return load_graph(name)

    def _field(self) -> Field:
        if self.args.prime is not None:
            return PrimeField(self.args.prime)
        if self.config.algebra.field == "prime":
            return PrimeField(self.config.algebra.modulus)
        return RATIONALS

    def _max_len(self) -> int:
        return self.args.max_len if self.args.max_len is not None else self.config.paths.max_len

    def _spec(self, text: str) -> OmegaPathSpec:
        return canonicalize(parse_path_spec(self.algebra.graph, text))

    def _closed_path(self, text: str) -> FinPath:
        d = parse_path(self.algebra.graph, text)
        if d is None:
            raise ParseError("Expected a closed path")
        return d

    # ------------------------------------------------------------------
    # Individual commands
    # ------------------------------------------------------------------

    def _cmd_normalize(self) -> reports.Report:
        warnings: list[str] = []
        a = parse_expr(self.algebra, self.args.expr, warnings)
        a = self.algebra.normalize(a.terms, self.rng)
        return reports.element_report("normalize", {"input": self.args.expr}, a, warnings)

    def _cmd_mul(self) -> reports.Report:
        warnings: list[str] = []
        left = parse_expr(self.algebra, self.args.left, warnings)
        right = parse_expr(self.algebra, self.args.right, warnings)
        product = self.algebra.multiply(left, right, self.rng)
        inputs = {"left": self.args.left, "right": self.args.right}
        return reports.element_report("mul", inputs, product, warnings)

    def _cmd_act(self) -> reports.Report:
        a = parse_expr(self.algebra, self.args.expr)
        t = parse_chen(self.algebra, self.args.vector)
        return reports.act_report(a, t, act(a, t))

    def _cmd_ext(self) -> reports.Report:
        S, T = self._spec(self.args.source), self._spec(self.args.target)
        dim = ext_dim(S, T, self.config.reports.witness_limit)
        return reports.ext_report(S, T, dim)

    def _cmd_ext_table(self) -> reports.Report:
        specs = [self._spec(text) for text in self.args.specs]
        return reports.ext_table_report(specs, ext_table(specs, self.config.reports.witness_limit))

    def _cmd_resolve(self) -> reports.Report:
        S = self._spec(self.args.spec)
        generator = None
        if self.args.generator:
            generator = parse_path(self.algebra.graph, self.args.generator)
        horizon = self.args.horizon
        if horizon is None:
            horizon = self.config.paths.kernel_horizon
        res = resolution(self.algebra, S, generator, horizon)
        return reports.resolution_report(res, verify_resolution(self.algebra, res))

    def _cmd_solve_shift(self) -> reports.Report:
        d = self._closed_path(self.args.d)
        t = parse_chen(self.algebra, self.args.vector)
        return reports.shift_report(str(d), t, solve_shift_equation(d, t))

    def _cmd_lset(self) -> reports.Report:
        d = self._closed_path(self.args.d)
        T = self._spec(self.args.target)
        card = l_cardinality(d, T)
        members = [] if isinstance(T, IrrationalSpec) else l_set_enumerate(d, T, self._max_len())
        return reports.lset_report(str(d), T, card, members)

    def _cmd_line_points(self) -> reports.Report:
        g = self.algebra.graph
        return reports.line_points_report([is_line_point(g, v) for v in g.vertices])

    def _cmd_cycles(self) -> reports.Report:
        max_len = self._max_len()
        return reports.cycles_report(max_len, simple_closed_paths(self.algebra.graph, max_len))

    def _cmd_fp_check(self) -> reports.Report:
        S = self._spec(self.args.spec)
        return reports.presentation_report(S, is_finitely_presented(S))

    def _cmd_uniserial(self) -> reports.Report:
        S = self._spec(self.args.spec)
        return reports.uniserial_json(S, uniserial_report(S, self.args.length))

    def _cmd_separate(self) -> reports.Report:
        left = parse_expr(self.algebra, self.args.left)
        right = parse_expr(self.algebra, self.args.right)
        depth = self.args.depth if self.args.depth is not None else self.config.paths.probe_depth
        return reports.separation_report(left, right, depth, separating_path(left, right, depth))

    def _cmd_from_dot(self) -> None:
        with open(self.args.file, encoding="utf-8") as fh:
            self.out.write(dot_to_document(fh.read()))
        return None


def _load_config(args: argparse.Namespace) -> Config:
    cfg = load_config(args.config)
    if args.log_level:
        cfg.app.log_level = args.log_level
    if args.prime is not None:
        cfg.algebra.field = "prime"
        cfg.algebra.modulus = args.prime
    validate_config(cfg)
    return cfg


def run_command(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    """Parse *argv*, run the command and return its exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        config = _load_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=err)
        return 2
    configure_logging(config.app.log_level)

    try:
        return CommandRunner(args, config, out).run()
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except LpaError as exc:
        logging.info("Rejected %s: %s", args.command, exc)
        print(f"error: {exc}", file=err)
        return 1

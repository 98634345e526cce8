"""Deterministic report dictionaries and their JSON / text renderings.

Every report is a plain ``dict`` built in a fixed key order, starting with
``"version"`` and ``"command"``.  Scalars are written as strings
(``"-1/2"``) so no float ever appears.  The layout is documented in
``docs/report_schema.md``.
"""

from __future__ import annotations

import json
from typing import Any

from lpa_chen.algebra import AlgebraElement
from lpa_chen.chen import Cardinality, ChenElement, LCardinality, NoSolution, Solution
from lpa_chen.graph import ClosedPath, LinePointReport
from lpa_chen.homology import ExtDim, ExtValue, Presentation, ResolutionReport, UniserialReport
from lpa_chen.omega import OmegaPathSpec

SCHEMA_VERSION = 1

Report = dict[str, Any]


def _base(command: str) -> Report:
    return {"version": SCHEMA_VERSION, "command": command}


def element_json(a: AlgebraElement) -> list[dict[str, str]]:
    return [{"monomial": str(mu), "coefficient": str(k)} for mu, k in a.items()]


def dim_json(value: ExtValue | Cardinality, n: int | None) -> str | dict[str, int]:
    if value.value == "finite":
        return {"finite": n or 0}
    return value.value


# ------------------------------------------------------------------
# Builders
# ------------------------------------------------------------------


def element_report(command: str, inputs: dict[str, str], a: AlgebraElement, warnings: list[str]) -> Report:
    report = _base(command)
    report.update(inputs)
    report["result"] = str(a)
    report["terms"] = element_json(a)
    report["warnings"] = list(warnings)
    return report


def act_report(a: AlgebraElement, t: ChenElement, result: ChenElement) -> Report:
    report = _base("act")
    report["element"] = str(a)
    report["vector"] = str(t)
    report["result"] = str(result)
    return report


def ext_report(S: OmegaPathSpec, T: OmegaPathSpec, dim: ExtDim) -> Report:
    report = _base("ext")
    report["source"] = str(S)
    report["target"] = str(T)
    report["dim"] = dim_json(dim.value, dim.n)
    report["rule"] = dim.rule
    report["criterion"] = dim.criterion
    report["witnesses"] = list(dim.witnesses)
    return report


def ext_table_report(specs: list[OmegaPathSpec], rows: list[list[ExtDim]]) -> Report:
    report = _base("ext-table")
    report["specs"] = [str(p) for p in specs]
    report["rows"] = [[dim_json(d.value, d.n) for d in row] for row in rows]
    return report


def resolution_report(res: ResolutionReport, verified: bool) -> Report:
    report = _base("resolve")
    report["module_type"] = res.module_type.value
    report["presentation_vertex"] = res.presentation_vertex
    report["generator_path"] = str(res.generator_path)
    report["kernel_generators"] = [str(k) for k in res.kernel_generators]
    report["kernel_family"] = [
        {"i": j.i, "exit": j.exit, "generator": str(j.element)} for j in res.kernel_family
    ]
    report["kernel_finitely_generated"] = res.kernel_finitely_generated
    report["finitely_presented"] = res.finitely_presented
    report["projective"] = res.projective
    report["projective_dimension"] = res.projective_dimension
    report["global_kernel_generator"] = (
        str(res.global_kernel_generator) if res.global_kernel_generator is not None else None
    )
    report["horizon"] = res.horizon
    report["eventual_pattern"] = res.eventual_pattern
    report["verified"] = verified
    return report


def shift_report(d: str, t: ChenElement, outcome: Solution | NoSolution) -> Report:
    report = _base("solve-shift")
    report["d"] = d
    report["t"] = str(t)
    if isinstance(outcome, Solution):
        report["solvable"] = True
        report["x"] = str(outcome.x)
    else:
        report["solvable"] = False
        report["obstruction"] = outcome.obstruction
        report["witness"] = str(outcome.witness)
        report["coefficient"] = str(outcome.coefficient)
    return report


def lset_report(d: str, T: OmegaPathSpec, card: LCardinality, members: list[OmegaPathSpec]) -> Report:
    report = _base("lset")
    report["d"] = d
    report["target"] = str(T)
    report["cardinality"] = dim_json(card.kind, card.count)
    report["members"] = [str(p) for p in members]
    return report


def line_points_report(reports: list[LinePointReport]) -> Report:
    report = _base("line-points")
    report["line_points"] = [r.vertex for r in reports if r.is_line_point]
    report["vertices"] = [
        {"vertex": r.vertex, "is_line_point": r.is_line_point, "certificate": r.certificate}
        for r in reports
    ]
    return report


def cycles_report(max_len: int, cycles: list[ClosedPath]) -> Report:
    report = _base("cycles")
    report["max_len"] = max_len
    report["cycles"] = [
        {"path": str(c.path), "start": c.path.src, "canonical": c.canonical} for c in cycles
    ]
    return report


def presentation_report(S: OmegaPathSpec, pres: Presentation) -> Report:
    report = _base("fp-check")
    report["spec"] = str(S)
    report["finitely_presented"] = pres.finitely_presented
    report["reason"] = pres.reason
    report["witness"] = pres.witness
    return report


def uniserial_json(S: OmegaPathSpec, uni: UniserialReport) -> Report:
    report = _base("uniserial")
    report["spec"] = str(S)
    report["length"] = uni.length
    report["exists"] = uni.exists
    report["reason"] = uni.reason
    report["rule"] = uni.rule
    return report


def separation_report(
    a: AlgebraElement, b: AlgebraElement, depth: int, path: OmegaPathSpec | None
) -> Report:
    report = _base("separate")
    report["left"] = str(a)
    report["right"] = str(b)
    report["depth"] = depth
    report["separated"] = path is not None
    report["path"] = str(path) if path is not None else None
    return report


# ------------------------------------------------------------------
# Rendering
# ------------------------------------------------------------------


def dumps(report: Report, indent: int = 2) -> str:
    return json.dumps(report, indent=indent, ensure_ascii=False)


def _dim_text(dim: str | dict[str, int]) -> str:
    if isinstance(dim, dict):
        return str(dim["finite"])
    return {"zero": "0", "countably_infinite": "countably infinite", "empty": "empty"}[dim]


def render_text(report: Report) -> str:
    """Human-readable summary of a report."""
    command = report["command"]
    if command in ("normalize", "mul"):
        lines = [report["result"]]
        lines.extend(f"warning: {w}" for w in report["warnings"])
        return "\n".join(lines)
    if command == "act":
        return report["result"]
    if command == "ext":
        lines = [f"dim Ext^1 = {_dim_text(report['dim'])}  [{report['rule']}]"]
        lines.extend(f"  {w}" for w in report["witnesses"])
        return "\n".join(lines)
    if command == "ext-table":
        lines = [f"{i}: {s}" for i, s in enumerate(report["specs"])]
        for i, row in enumerate(report["rows"]):
            lines.append(f"{i} | " + "  ".join(_dim_text(d) for d in row))
        return "\n".join(lines)
    if command == "resolve":
        lines = [
            f"{report['module_type']} module generated at {report['presentation_vertex']}"
            f" by {report['generator_path']}",
            f"projective: {report['projective']}  projective dimension: {report['projective_dimension']}",
            f"finitely presented: {report['finitely_presented']}",
            f"verified: {report['verified']}",
        ]
        lines.extend(f"kernel generator: {k}" for k in report["kernel_generators"])
        lines.extend(
            f"J_{j['i']}: {j['generator']}  (exit {j['exit']})" for j in report["kernel_family"]
        )
        if report["global_kernel_generator"] is not None:
            lines.append(f"kernel of L(E) -> V: {report['global_kernel_generator']}")
        if report["eventual_pattern"]:
            lines.append(report["eventual_pattern"])
        return "\n".join(lines)
    if command == "solve-shift":
        if report["solvable"]:
            return f"X = {report['x']}"
        return f"no solution: {report['obstruction']}"
    if command == "lset":
        lines = [f"|L(d, T)| = {_dim_text(report['cardinality'])}"]
        lines.extend(f"  {p}" for p in report["members"])
        return "\n".join(lines)
    if command == "line-points":
        return "\n".join(
            f"{v['vertex']}: {v['certificate']}" for v in report["vertices"]
        )
    if command == "cycles":
        return "\n".join(
            f"{c['path']}{'  (canonical)' if c['canonical'] else ''}" for c in report["cycles"]
        )
    if command == "fp-check":
        verdict = "finitely presented" if report["finitely_presented"] else "not finitely presented"
        return f"{verdict}: {report['reason']}"
    if command == "separate":
        if report["separated"]:
            return f"separated by {report['path']}"
        return f"not separated at depth {report['depth']}"
    if command == "uniserial":
        verdict = "exists" if report["exists"] else "does not follow"
        return f"uniserial of length {report['length']}: {verdict} ({report['reason']})"
    return dumps(report)

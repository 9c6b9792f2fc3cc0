"""Scenario verification rules and the model-editing loop.

For each scenario the rules check, in order: that a realization exists at
all (a missing one is a UI design flaw), node repetition on non-simple
walks, walk length, and total effort — including the infeasible-for-context
case where a realization exists structurally but the user cannot perform a
required action. Findings are advisory records, never exceptions, and all
threshold comparisons are strict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from enum import Enum
from typing import IO, Sequence, Union

from .effort import Context, is_infeasible
from .model import (
    ACTIONS,
    Edge,
    InteractionModel,
    Node,
    Scenario,
    Violation,
    validate,
)
from .paths import PathNotFound, ResolvedPath, ScenarioError, resolve_path


class Rule(str, Enum):
    DESIGN_FLAW_NO_PATH = "DESIGN_FLAW_NO_PATH"
    NODE_REPETITION_EXCEEDED = "NODE_REPETITION_EXCEEDED"
    PATH_LENGTH_EXCEEDED = "PATH_LENGTH_EXCEEDED"
    EFFORT_EXCEEDED = "EFFORT_EXCEEDED"
    INFEASIBLE_FOR_CONTEXT = "INFEASIBLE_FOR_CONTEXT"


class ThresholdError(ValueError):
    pass


@dataclass(frozen=True)
class Thresholds:
    """Verification thresholds; the adjusted set is the shipped default."""

    nr_threshold: float = 1.5
    path_len_threshold: int = 100
    effort_threshold: float = 100000.0

    def __post_init__(self):
        if not (self.nr_threshold > 0 and self.path_len_threshold > 0 and self.effort_threshold > 0):
            raise ThresholdError("all thresholds must be strictly positive")


BUILTIN_THRESHOLD_NAMES = ("initial", "adjusted")


def builtin_thresholds(name: str) -> Thresholds:
    if name == "initial":
        return Thresholds(nr_threshold=1.5, path_len_threshold=20, effort_threshold=25000.0)
    if name == "adjusted":
        return Thresholds(nr_threshold=1.5, path_len_threshold=100, effort_threshold=100000.0)
    raise ThresholdError(f"unknown builtin thresholds {name!r} (expected one of {', '.join(BUILTIN_THRESHOLD_NAMES)})")


@dataclass(frozen=True)
class Finding:
    """One rule outcome: the measured value strictly exceeded its threshold.

    measured/threshold are None for the rules that carry no number
    (DESIGN_FLAW_NO_PATH, INFEASIBLE_FOR_CONTEXT).
    """

    rule: Rule
    measured: float | None = None
    threshold: float | None = None


@dataclass(frozen=True)
class VerificationReport:
    scenario_id: str
    context_name: str
    path_exists: bool
    resolved: ResolvedPath | None = None
    not_found: PathNotFound | None = None
    findings: tuple[Finding, ...] = ()

    @property
    def has_findings(self) -> bool:
        return bool(self.findings)


def verify(
    model: InteractionModel, scenario: Scenario, ctx: Context, thresholds: Thresholds = Thresholds()
) -> VerificationReport:
    """Apply the verification rule set to one scenario.

    When no realization exists under the context but one exists structurally
    (ignoring capabilities and factors), the scenario is infeasible for this
    context; that finding is reported alone since length, repetition and
    effort are undefined without a context-valid walk.
    """
    outcome = resolve_path(model, scenario, ctx)
    if isinstance(outcome, PathNotFound):
        if _exists_structurally(model, scenario):
            return VerificationReport(
                scenario_id=scenario.id,
                context_name=ctx.name,
                path_exists=True,
                not_found=outcome,
                findings=(Finding(Rule.INFEASIBLE_FOR_CONTEXT),),
            )
        return VerificationReport(
            scenario_id=scenario.id,
            context_name=ctx.name,
            path_exists=False,
            not_found=outcome,
            findings=(Finding(Rule.DESIGN_FLAW_NO_PATH),),
        )

    findings: list[Finding] = []
    if not outcome.is_simple and outcome.node_repetition > thresholds.nr_threshold:
        findings.append(Finding(Rule.NODE_REPETITION_EXCEEDED, outcome.node_repetition, thresholds.nr_threshold))
    if outcome.length > thresholds.path_len_threshold:
        findings.append(Finding(Rule.PATH_LENGTH_EXCEEDED, float(outcome.length), float(thresholds.path_len_threshold)))
    if is_infeasible(outcome.effort):
        # unreachable by construction (infeasible edges are excluded from search)
        findings.append(Finding(Rule.INFEASIBLE_FOR_CONTEXT))
    elif outcome.effort > thresholds.effort_threshold:
        findings.append(Finding(Rule.EFFORT_EXCEEDED, outcome.effort, thresholds.effort_threshold))

    return VerificationReport(
        scenario_id=scenario.id,
        context_name=ctx.name,
        path_exists=True,
        resolved=outcome,
        findings=tuple(findings),
    )


def _exists_structurally(model: InteractionModel, scenario: Scenario) -> bool:
    """Whether a realization exists when every edge is treated as feasible."""
    neutral = Context(name="structural", delta={a: 1.0 for a in ACTIONS})
    return isinstance(resolve_path(model, scenario, neutral), ResolvedPath)


@dataclass(frozen=True)
class SuiteEntry:
    """Per-scenario outcome of a suite run; a bad scenario yields an error, not an abort."""

    scenario_id: str
    report: VerificationReport | None = None
    error: str | None = None


@dataclass(frozen=True)
class SuiteResult:
    entries: tuple[SuiteEntry, ...]
    context_name: str
    thresholds: Thresholds

    @property
    def reports(self) -> tuple[VerificationReport, ...]:
        return tuple(e.report for e in self.entries if e.report is not None)

    @property
    def finding_counts(self) -> dict[Rule, int]:
        counts = {rule: 0 for rule in Rule}
        for report in self.reports:
            for finding in report.findings:
                counts[finding.rule] += 1
        return counts

    @property
    def error_count(self) -> int:
        return sum(1 for e in self.entries if e.error is not None)

    @property
    def has_findings(self) -> bool:
        return any(r.has_findings for r in self.reports)


def verify_suite(
    model: InteractionModel,
    scenarios: Sequence[Scenario],
    ctx: Context,
    thresholds: Thresholds = Thresholds(),
) -> SuiteResult:
    """Verify each scenario in order; data errors are isolated per scenario."""
    entries = []
    for scenario in scenarios:
        try:
            entries.append(SuiteEntry(scenario.id, report=verify(model, scenario, ctx, thresholds)))
        except ScenarioError as exc:
            entries.append(SuiteEntry(scenario.id, error=str(exc)))
    return SuiteResult(entries=tuple(entries), context_name=ctx.name, thresholds=thresholds)


# --- model edits ------------------------------------------------------------

@dataclass(frozen=True)
class AddNode:
    node: Node


@dataclass(frozen=True)
class RemoveNode:
    node_id: str


@dataclass(frozen=True)
class AddEdge:
    edge: Edge


@dataclass(frozen=True)
class RemoveEdge:
    edge_id: str


@dataclass(frozen=True)
class SetStart:
    node_id: str


Edit = Union[AddNode, RemoveNode, AddEdge, RemoveEdge, SetStart]


class EditError(ValueError):
    """The edit was rejected atomically; the original model is unchanged."""

    def __init__(self, message: str, violations: list[Violation] | None = None):
        super().__init__(message)
        self.violations = violations or []


def apply_edit(model: InteractionModel, edit: Edit) -> InteractionModel:
    """Produce a new model version with the edit applied; the original is untouched.

    Removing a node also removes its incident edges. Any resulting invariant
    violation (duplicate (source, action), dangling reference, removed start)
    rejects the edit as a whole.
    """
    if isinstance(edit, AddNode):
        if edit.node.id in model.node_by_id:
            raise EditError(f"node {edit.node.id!r} already exists")
        candidate = replace(model, nodes=model.nodes + (edit.node,))
    elif isinstance(edit, RemoveNode):
        if edit.node_id not in model.node_by_id:
            raise EditError(f"node {edit.node_id!r} does not exist")
        candidate = replace(
            model,
            nodes=tuple(n for n in model.nodes if n.id != edit.node_id),
            edges=tuple(e for e in model.edges if edit.node_id not in (e.source, e.target)),
        )
    elif isinstance(edit, AddEdge):
        if edit.edge.id in model.edge_by_id:
            raise EditError(f"edge {edit.edge.id!r} already exists")
        candidate = replace(model, edges=model.edges + (edit.edge,))
    elif isinstance(edit, RemoveEdge):
        if edit.edge_id not in model.edge_by_id:
            raise EditError(f"edge {edit.edge_id!r} does not exist")
        candidate = replace(model, edges=tuple(e for e in model.edges if e.id != edit.edge_id))
    elif isinstance(edit, SetStart):
        candidate = replace(model, start=edit.node_id)
    else:
        raise EditError(f"unknown edit {edit!r}")

    fatal = [v for v in validate(candidate) if v.fatal]
    if fatal:
        raise EditError("edit rejected: " + "; ".join(v.message for v in fatal), fatal)
    return candidate


# --- report serialization ---------------------------------------------------

def _effort_json(effort: float) -> float | str:
    if is_infeasible(effort):
        return "INFEASIBLE"
    return int(effort) if float(effort).is_integer() else effort


def finding_to_doc(finding: Finding) -> dict:
    doc: dict = {"rule": finding.rule.value}
    if finding.measured is not None:
        doc["measured"] = _effort_json(finding.measured)
    if finding.threshold is not None:
        doc["threshold"] = _effort_json(finding.threshold)
    return doc


def report_to_doc(report: VerificationReport) -> dict:
    doc: dict = {
        "scenario": report.scenario_id,
        "context": report.context_name,
        "path_exists": report.path_exists,
        "findings": [finding_to_doc(f) for f in report.findings],
    }
    if report.resolved is not None:
        path = report.resolved
        doc["resolved"] = {
            "edges": [e.id for e in path.edges],
            "length": path.length,
            "unique_nodes": path.unique_nodes,
            "node_repetition": round(path.node_repetition, 6),
            "effort_ms": _effort_json(path.effort),
            "simple": path.is_simple,
            "degenerate": path.is_degenerate,
        }
    if report.not_found is not None:
        doc["not_found"] = {
            "waypoint_index": report.not_found.waypoint_index,
            "waypoint": {report.not_found.waypoint.kind: report.not_found.waypoint.ref},
            "reason": report.not_found.reason,
        }
    return doc


def suite_to_doc(result: SuiteResult, generated_at: str | None = None) -> dict:
    doc: dict = {
        "context": result.context_name,
        "thresholds": {
            "nr_threshold": result.thresholds.nr_threshold,
            "path_len_threshold": result.thresholds.path_len_threshold,
            "effort_threshold": result.thresholds.effort_threshold,
        },
        "reports": [
            report_to_doc(e.report) if e.report is not None else {"scenario": e.scenario_id, "error": e.error}
            for e in result.entries
        ],
        "summary": {
            "findings_by_rule": {rule.value: n for rule, n in result.finding_counts.items() if n},
            "scenarios": len(result.entries),
            "errors": result.error_count,
        },
    }
    if generated_at is not None:
        doc["generated_at"] = generated_at
    return doc


def suite_to_json(result: SuiteResult, generated_at: str | None = None) -> bytes:
    return (json.dumps(suite_to_doc(result, generated_at), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def suite_table(result: SuiteResult) -> str:
    """Plain-text table mirroring the published result tables' method columns."""
    headers = ("ID of t", "E(p(t),C) [ms]", "|p(t)|", "nr", "findings")
    rows = []
    for entry in result.entries:
        if entry.error is not None:
            rows.append((entry.scenario_id, "error", "-", "-", entry.error))
            continue
        report = entry.report
        assert report is not None
        if report.resolved is not None:
            path = report.resolved
            effort = "INFEASIBLE" if is_infeasible(path.effort) else f"{path.effort:g}"
            nr = f"{path.node_repetition:.4g}"
            rows.append((entry.scenario_id, effort, str(path.length), nr, _findings_cell(report)))
        else:
            rows.append((entry.scenario_id, "-", "-", "-", _findings_cell(report)))
    widths = [max(len(headers[i]), *(len(r[i]) for r in rows)) if rows else len(headers[i]) for i in range(5)]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)),
        "  ".join("-" * w for w in widths),
    ]
    for r in rows:
        lines.append("  ".join(r[i].ljust(widths[i]) for i in range(5)))
    return "\n".join(lines)


def _findings_cell(report: VerificationReport) -> str:
    if not report.findings:
        return "none"
    parts = []
    for f in report.findings:
        if f.measured is not None and f.threshold is not None:
            parts.append(f"{f.rule.value} ({f.measured:g} > {f.threshold:g})")
        else:
            parts.append(f.rule.value)
    return ", ".join(parts)


def load_thresholds(source: bytes | str | IO) -> Thresholds:
    """Parse a thresholds document: {"nr_threshold", "path_len_threshold", "effort_threshold"}."""
    if isinstance(source, bytes):
        text = source.decode("utf-8")
    elif isinstance(source, str):
        text = source
    else:
        data = source.read()
        text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ThresholdError(f"thresholds document is not valid JSON: {exc.msg}") from exc
    try:
        return Thresholds(
            nr_threshold=float(doc["nr_threshold"]),
            path_len_threshold=int(doc["path_len_threshold"]),
            effort_threshold=float(doc["effort_threshold"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ThresholdError(f"invalid thresholds document: {exc}") from exc

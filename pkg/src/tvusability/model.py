"""User interaction model: a directed multigraph of screens and screen elements.

Nodes stand for screens or nested containers the remote-control focus can
rest on; edges are transitions triggered by one of the six input actions.
Models are immutable value objects: every mutation produces a new model.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import IO, Iterable


class Action(str, Enum):
    """The six remote-control input actions. No others exist."""

    LEFT = "LEFT"
    RIGHT = "RIGHT"
    UP = "UP"
    DOWN = "DOWN"
    OK = "OK"
    BACK = "BACK"


ACTIONS: tuple[Action, ...] = tuple(Action)
DIRECTIONAL: tuple[Action, ...] = (Action.LEFT, Action.RIGHT, Action.UP, Action.DOWN)


class NodeKind(str, Enum):
    SCREEN = "screen"
    CONTAINER = "nested-container"


class ModelError(ValueError):
    """Raised when a model document cannot be parsed or violates a hard invariant."""

    def __init__(self, message: str, violations: list["Violation"] | None = None):
        super().__init__(message)
        self.violations = violations or []


@dataclass(frozen=True)
class Violation:
    """A named invariant violation. `fatal=False` marks advisory warnings."""

    code: str
    subject: str
    message: str
    fatal: bool = True


@dataclass(frozen=True)
class Node:
    id: str
    kind: NodeKind = NodeKind.CONTAINER
    label: str = ""

    def __post_init__(self):
        if not self.label:
            object.__setattr__(self, "label", self.id)


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    action: Action


@dataclass(frozen=True)
class InteractionModel:
    """Directed multigraph with a start node and derived end nodes.

    End nodes (nodes without outgoing edges) are never stored; they are
    recomputed from the edge set so they cannot drift out of sync.
    """

    nodes: tuple[Node, ...]
    edges: tuple[Edge, ...]
    start: str

    @cached_property
    def node_by_id(self) -> dict[str, Node]:
        return {n.id: n for n in self.nodes}

    @cached_property
    def edge_by_id(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def outgoing(self) -> dict[str, tuple[Edge, ...]]:
        out: dict[str, list[Edge]] = {n.id: [] for n in self.nodes}
        for e in self.edges:
            if e.source in out:
                out[e.source].append(e)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def end_nodes(self) -> frozenset[str]:
        """Node ids with no outgoing edge (a nonempty set flags UI dead ends)."""
        return frozenset(nid for nid, out in self.outgoing.items() if not out)

    def reachable_from_start(self) -> frozenset[str]:
        seen = {self.start}
        stack = [self.start]
        while stack:
            for e in self.outgoing.get(stack.pop(), ()):
                if e.target not in seen:
                    seen.add(e.target)
                    stack.append(e.target)
        return frozenset(seen)


@dataclass(frozen=True)
class Waypoint:
    """A scenario waypoint: a node id or an edge id that must be visited."""

    kind: str  # "node" | "edge"
    ref: str

    def __post_init__(self):
        if self.kind not in ("node", "edge"):
            raise ValueError(f"waypoint kind must be 'node' or 'edge', got {self.kind!r}")

    @staticmethod
    def node(ref: str) -> "Waypoint":
        return Waypoint("node", ref)

    @staticmethod
    def edge(ref: str) -> "Waypoint":
        return Waypoint("edge", ref)


@dataclass(frozen=True)
class Scenario:
    """Ordered waypoint sequence a user task must visit, in order.

    The first and last waypoint must resolve to nodes; waypoints may repeat.
    """

    id: str
    waypoints: tuple[Waypoint, ...] = field(default_factory=tuple)


def validate(model: InteractionModel) -> list[Violation]:
    """Check all model invariants; returns violations (empty list means valid).

    Unreachability from the start node is reported as a non-fatal warning:
    budget-truncated crawls and hand edits legitimately leave islands.
    """
    violations: list[Violation] = []
    if not model.nodes:
        violations.append(Violation("empty-model", "", "model has no nodes"))
        return violations

    seen_nodes: set[str] = set()
    for n in model.nodes:
        if n.id in seen_nodes:
            violations.append(Violation("duplicate-node-id", n.id, f"node id {n.id!r} appears more than once"))
        seen_nodes.add(n.id)

    if model.start not in seen_nodes:
        violations.append(Violation("missing-start", model.start, f"start node {model.start!r} is not in the model"))

    seen_edges: set[str] = set()
    seen_pairs: dict[tuple[str, Action], str] = {}
    for e in model.edges:
        if e.id in seen_edges:
            violations.append(Violation("duplicate-edge-id", e.id, f"edge id {e.id!r} appears more than once"))
        seen_edges.add(e.id)
        if e.source not in seen_nodes:
            violations.append(Violation("dangling-source", e.id, f"edge {e.id!r} source {e.source!r} is unknown"))
        if e.target not in seen_nodes:
            violations.append(Violation("dangling-target", e.id, f"edge {e.id!r} target {e.target!r} is unknown"))
        pair = (e.source, e.action)
        if pair in seen_pairs:
            violations.append(
                Violation(
                    "duplicate-action",
                    e.id,
                    f"edges {seen_pairs[pair]!r} and {e.id!r} both leave {e.source!r} on {e.action.value}",
                )
            )
        else:
            seen_pairs[pair] = e.id

    if not any(v.fatal for v in violations):
        unreachable = sorted(set(model.node_by_id) - model.reachable_from_start())
        for nid in unreachable:
            violations.append(
                Violation("unreachable", nid, f"node {nid!r} is not reachable from start", fatal=False)
            )
    return violations


def _check(model: InteractionModel) -> InteractionModel:
    fatal = [v for v in validate(model) if v.fatal]
    if fatal:
        raise ModelError("; ".join(v.message for v in fatal), fatal)
    return model


def scenario_violations(model: InteractionModel, scenario: Scenario) -> list[Violation]:
    """Check a scenario against a model: waypoint ids must exist, ends must be nodes."""
    violations: list[Violation] = []
    for i, wp in enumerate(scenario.waypoints):
        known = model.node_by_id if wp.kind == "node" else model.edge_by_id
        if wp.ref not in known:
            violations.append(
                Violation("unknown-waypoint", wp.ref, f"scenario {scenario.id!r} waypoint {i} ({wp.kind} {wp.ref!r}) is unknown")
            )
    if scenario.waypoints:
        if scenario.waypoints[0].kind != "node":
            violations.append(
                Violation("waypoint-end-kind", scenario.id, f"scenario {scenario.id!r} must start with a node waypoint")
            )
        if scenario.waypoints[-1].kind != "node":
            violations.append(
                Violation("waypoint-end-kind", scenario.id, f"scenario {scenario.id!r} must end with a node waypoint")
            )
    else:
        violations.append(Violation("empty-scenario", scenario.id, f"scenario {scenario.id!r} has no waypoints"))
    return violations


# --- document format ------------------------------------------------------

def _read_source(source: bytes | str | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ModelError(f"{where}: missing required field {key!r}")
    return obj[key]


def _parse_action(raw, where: str) -> Action:
    try:
        return Action(raw)
    except ValueError:
        raise ModelError(f"{where}: unknown action {raw!r}") from None


def load_model(source: bytes | str | IO) -> InteractionModel:
    """Parse and validate a model document (JSON).

    Raises ModelError naming the offending field or violated invariant.
    """
    text = _read_source(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"model document is not valid JSON: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ModelError("model document must be a JSON object")

    nodes = []
    for i, raw in enumerate(_require(doc, "nodes", "model")):
        where = f"nodes[{i}]"
        if not isinstance(raw, dict):
            raise ModelError(f"{where}: expected an object")
        kind_raw = raw.get("kind", NodeKind.CONTAINER.value)
        try:
            kind = NodeKind(kind_raw)
        except ValueError:
            raise ModelError(f"{where}: unknown node kind {kind_raw!r}") from None
        nodes.append(Node(id=str(_require(raw, "id", where)), kind=kind, label=str(raw.get("label", ""))))

    edges = []
    for i, raw in enumerate(_require(doc, "edges", "model")):
        where = f"edges[{i}]"
        if not isinstance(raw, dict):
            raise ModelError(f"{where}: expected an object")
        edges.append(
            Edge(
                id=str(_require(raw, "id", where)),
                source=str(_require(raw, "source", where)),
                target=str(_require(raw, "target", where)),
                action=_parse_action(_require(raw, "action", where), where),
            )
        )

    start = _require(doc, "start", "model")
    return _check(InteractionModel(nodes=tuple(nodes), edges=tuple(edges), start=str(start)))


def model_to_doc(model: InteractionModel) -> dict:
    return {
        "nodes": [{"id": n.id, "kind": n.kind.value, "label": n.label} for n in model.nodes],
        "edges": [
            {"id": e.id, "source": e.source, "target": e.target, "action": e.action.value} for e in model.edges
        ],
        "start": model.start,
    }


def save_model(model: InteractionModel) -> bytes:
    """Serialize to the model document format; load(save(m)) is structurally m."""
    return (json.dumps(model_to_doc(model), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def scenario_to_doc(scenario: Scenario) -> dict:
    return {
        "id": scenario.id,
        "waypoints": [{wp.kind: wp.ref} for wp in scenario.waypoints],
    }


def scenario_from_doc(doc: dict, where: str = "scenario") -> Scenario:
    waypoints = []
    for i, raw in enumerate(_require(doc, "waypoints", where)):
        if not isinstance(raw, dict) or len(raw) != 1:
            raise ModelError(f"{where}.waypoints[{i}]: expected a single-key object {{'node': id}} or {{'edge': id}}")
        kind, ref = next(iter(raw.items()))
        if kind not in ("node", "edge"):
            raise ModelError(f"{where}.waypoints[{i}]: unknown waypoint kind {kind!r}")
        waypoints.append(Waypoint(kind, str(ref)))
    return Scenario(id=str(_require(doc, "id", where)), waypoints=tuple(waypoints))


def load_scenarios(source: bytes | str | IO) -> list[Scenario]:
    """Parse a scenario document: a single scenario object or a JSON array of them."""
    text = _read_source(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"scenario document is not valid JSON: line {exc.lineno}: {exc.msg}") from exc
    if isinstance(doc, dict):
        doc = [doc]
    if not isinstance(doc, list):
        raise ModelError("scenario document must be an object or an array of objects")
    return [scenario_from_doc(raw, f"scenarios[{i}]") for i, raw in enumerate(doc)]


def save_scenarios(scenarios: Iterable[Scenario]) -> bytes:
    return (json.dumps([scenario_to_doc(s) for s in scenarios], indent=2, ensure_ascii=False) + "\n").encode("utf-8")


# --- equality -------------------------------------------------------------

def models_equal(a: InteractionModel, b: InteractionModel) -> bool:
    """Full structural equality: node set, edge set (including ids), start."""
    return set(a.nodes) == set(b.nodes) and set(a.edges) == set(b.edges) and a.start == b.start


def structurally_equal(a: InteractionModel, b: InteractionModel) -> bool:
    """Label-preserving structural equality that ignores opaque edge ids.

    Edges compare as (source, action, target) triples; determinism guarantees
    at most one edge per (source, action), so a set comparison is exact.
    """
    if set(a.nodes) != set(b.nodes) or a.start != b.start:
        return False
    triples_a = {(e.source, e.action, e.target) for e in a.edges}
    triples_b = {(e.source, e.action, e.target) for e in b.edges}
    return len(triples_a) == len(a.edges) == len(b.edges) and triples_a == triples_b

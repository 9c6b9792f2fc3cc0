"""Request/response models for the HTTP API, plus converters to core types."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .. import model as core
from ..verify import AddEdge, AddNode, Edit, RemoveEdge, RemoveNode, SetStart, Thresholds


class NodeDoc(BaseModel):
    id: str
    kind: Literal["screen", "nested-container"] = "nested-container"
    label: str = ""


class EdgeDoc(BaseModel):
    id: str
    source: str
    target: str
    action: Literal["LEFT", "RIGHT", "UP", "DOWN", "OK", "BACK"]


class ModelDoc(BaseModel):
    nodes: list[NodeDoc]
    edges: list[EdgeDoc]
    start: str


class WaypointDoc(BaseModel):
    model_config = ConfigDict(extra="forbid")

    node: Optional[str] = None
    edge: Optional[str] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.node is None) == (self.edge is None):
            raise ValueError("waypoint must have exactly one of 'node' or 'edge'")
        return self


class ScenarioDoc(BaseModel):
    id: str
    waypoints: list[WaypointDoc]


class SessionCreate(BaseModel):
    """Create a session from a ready model document or by crawling an app spec."""

    model: Optional[ModelDoc] = None
    app: Optional[dict] = None
    budget: Optional[int] = Field(default=None, ge=1)
    scenarios: list[ScenarioDoc] = Field(default_factory=list)
    context: str = "adjusted"

    @model_validator(mode="after")
    def _one_source(self):
        if (self.model is None) == (self.app is None):
            raise ValueError("provide exactly one of 'model' or 'app'")
        return self


class SessionCreated(BaseModel):
    session_id: str
    model_version: str


class SessionInfo(BaseModel):
    session_id: str
    model_version: str
    versions: list[str]
    scenario_ids: list[str]
    context_name: str
    thresholds: "ThresholdsDoc"
    run_ids: list[str]


class ContextUpdate(BaseModel):
    """Either a builtin name or the two CSV configuration files as text."""

    name: Optional[str] = None
    delta_csv: Optional[str] = None
    factors_csv: Optional[str] = None

    @model_validator(mode="after")
    def _one_mode(self):
        csv_mode = self.delta_csv is not None or self.factors_csv is not None
        if csv_mode and (self.delta_csv is None or self.factors_csv is None):
            raise ValueError("CSV contexts need both 'delta_csv' and 'factors_csv'")
        if (self.name is not None) == csv_mode:
            raise ValueError("provide either 'name' or the two CSV fields")
        return self


class ContextDoc(BaseModel):
    name: str
    delta: dict[str, float]
    uc: dict[str, float]
    device_factor: float
    env_factor: float


class ThresholdsUpdate(BaseModel):
    name: Optional[str] = None
    nr_threshold: Optional[float] = None
    path_len_threshold: Optional[int] = None
    effort_threshold: Optional[float] = None

    @model_validator(mode="after")
    def _one_mode(self):
        values = (self.nr_threshold, self.path_len_threshold, self.effort_threshold)
        if self.name is not None and any(v is not None for v in values):
            raise ValueError("provide either 'name' or the three threshold values, not both")
        if self.name is None and any(v is None for v in values):
            raise ValueError("all three threshold values are required")
        return self


class ThresholdsDoc(BaseModel):
    nr_threshold: float
    path_len_threshold: int
    effort_threshold: float


class EditRequest(BaseModel):
    op: Literal["add_node", "remove_node", "add_edge", "remove_edge", "set_start"]
    node: Optional[NodeDoc] = None
    edge: Optional[EdgeDoc] = None
    node_id: Optional[str] = None
    edge_id: Optional[str] = None
    start: Optional[str] = None


class EditResponse(BaseModel):
    session_id: str
    model_version: str


# --- converters --------------------------------------------------------------

def to_core_node(doc: NodeDoc) -> core.Node:
    return core.Node(id=doc.id, kind=core.NodeKind(doc.kind), label=doc.label)


def to_core_edge(doc: EdgeDoc) -> core.Edge:
    return core.Edge(id=doc.id, source=doc.source, target=doc.target, action=core.Action(doc.action))


def to_core_model(doc: ModelDoc) -> core.InteractionModel:
    built = core.InteractionModel(
        nodes=tuple(to_core_node(n) for n in doc.nodes),
        edges=tuple(to_core_edge(e) for e in doc.edges),
        start=doc.start,
    )
    fatal = [v for v in core.validate(built) if v.fatal]
    if fatal:
        raise core.ModelError("; ".join(v.message for v in fatal), fatal)
    return built


def to_core_scenario(doc: ScenarioDoc) -> core.Scenario:
    waypoints = tuple(
        core.Waypoint.node(wp.node) if wp.node is not None else core.Waypoint.edge(wp.edge or "")
        for wp in doc.waypoints
    )
    return core.Scenario(id=doc.id, waypoints=waypoints)


def to_edit(req: EditRequest) -> Edit:
    def required(value, name: str):
        if value is None:
            raise ValueError(f"edit op {req.op!r} requires field {name!r}")
        return value

    if req.op == "add_node":
        return AddNode(to_core_node(required(req.node, "node")))
    if req.op == "remove_node":
        return RemoveNode(required(req.node_id, "node_id"))
    if req.op == "add_edge":
        return AddEdge(to_core_edge(required(req.edge, "edge")))
    if req.op == "remove_edge":
        return RemoveEdge(required(req.edge_id, "edge_id"))
    return SetStart(required(req.start, "start"))


def thresholds_doc(t: Thresholds) -> ThresholdsDoc:
    return ThresholdsDoc(
        nr_threshold=t.nr_threshold,
        path_len_threshold=t.path_len_threshold,
        effort_threshold=t.effort_threshold,
    )

"""Resolve a tested scenario into its minimal-effort realization.

Because waypoint order is fixed, the global minimum over all
waypoint-respecting walks decomposes into per-segment minima: the cheapest
walk from each waypoint to the next, concatenated. Each segment is a
nonnegative-weight shortest-path search over the context-feasible subgraph.

Ties are broken deterministically: least effort, then fewest edges, then
lexicographically smallest edge-id sequence. The search orders its frontier
by that full (effort, length, edge ids) triple, which is a total order on
paths preserved by appending an edge, so the settled minimum is unique and
independent of heap insertion order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property

from .effort import Context, edge_effort, is_infeasible
from .model import Edge, InteractionModel, Scenario, Waypoint, scenario_violations


class ScenarioError(ValueError):
    """A scenario references unknown ids or is malformed — a data error, not a finding."""


@dataclass(frozen=True)
class ResolvedPath:
    """A walk realizing a scenario, with the metrics the verification rules use.

    An empty walk (scenario starts and ends on the same node with nothing in
    between) is degenerate: length 0, effort 0, one visited node, repetition
    reported as 1.0.
    """

    start_node: str
    edges: tuple[Edge, ...]
    effort: float

    @property
    def length(self) -> int:
        return len(self.edges)

    @cached_property
    def visited_nodes(self) -> tuple[str, ...]:
        """Node sequence of the walk, starting at the first edge's source."""
        return (self.start_node,) + tuple(e.target for e in self.edges)

    @property
    def unique_nodes(self) -> int:
        return len(set(self.visited_nodes))

    @property
    def node_repetition(self) -> float:
        return (self.length + 1) / self.unique_nodes

    @property
    def is_simple(self) -> bool:
        return self.unique_nodes == self.length + 1

    @property
    def is_degenerate(self) -> bool:
        return self.length == 0

    def action_counts(self) -> dict:
        counts: dict = {}
        for e in self.edges:
            counts[e.action] = counts.get(e.action, 0) + 1
        return counts


@dataclass(frozen=True)
class PathNotFound:
    """No realization exists; identifies the first waypoint that could not be reached."""

    scenario_id: str
    waypoint_index: int
    waypoint: Waypoint
    reason: str  # "unreachable" | "edge-infeasible"


def path_metrics(path: ResolvedPath) -> tuple[int, int, float, float]:
    """(length, unique nodes, node repetition, effort) of a resolved path."""
    return (path.length, path.unique_nodes, path.node_repetition, path.effort)


def resolve_path(model: InteractionModel, scenario: Scenario, ctx: Context) -> ResolvedPath | PathNotFound:
    """Find the minimal-effort walk visiting the scenario's waypoints in order.

    Context-infeasible edges are excluded from the search entirely. A node
    waypoint equal to the current position is satisfied in place (no move);
    an edge waypoint is reached via its source and then traversed, so an
    infeasible required edge means no realization exists for this context.
    """
    bad = scenario_violations(model, scenario)
    if bad:
        raise ScenarioError("; ".join(v.message for v in bad))

    weighted: dict[str, tuple[tuple[float, Edge], ...]] = {}
    for nid, out in model.outgoing.items():
        kept = []
        for e in sorted(out, key=lambda e: e.id):
            w = edge_effort(e, ctx)
            if not is_infeasible(w):
                kept.append((w, e))
        weighted[nid] = tuple(kept)

    current = scenario.waypoints[0].ref
    walk: list[Edge] = []
    total = 0.0
    for index, wp in enumerate(scenario.waypoints[1:], start=1):
        if wp.kind == "node":
            segment = _shortest(weighted, current, wp.ref)
            if segment is None:
                return PathNotFound(scenario.id, index, wp, "unreachable")
            cost, edges = segment
            walk.extend(edges)
            total += cost
            current = wp.ref
        else:
            edge = model.edge_by_id[wp.ref]
            w = edge_effort(edge, ctx)
            if is_infeasible(w):
                return PathNotFound(scenario.id, index, wp, "edge-infeasible")
            segment = _shortest(weighted, current, edge.source)
            if segment is None:
                return PathNotFound(scenario.id, index, wp, "unreachable")
            cost, edges = segment
            walk.extend(edges)
            walk.append(edge)
            total += cost + w
            current = edge.target

    return ResolvedPath(start_node=scenario.waypoints[0].ref, edges=tuple(walk), effort=total)


def _shortest(
    weighted: dict[str, tuple[tuple[float, Edge], ...]], source: str, target: str
) -> tuple[float, tuple[Edge, ...]] | None:
    """Dijkstra with (effort, length, edge-id sequence) priorities.

    Weights are strictly positive for feasible edges, so the first time a
    node is popped its priority is final.
    """
    if source == target:
        return 0.0, ()
    # heap entries: (effort, length, edge_ids, node, edges)
    frontier: list[tuple[float, int, tuple[str, ...], str, tuple[Edge, ...]]] = [(0.0, 0, (), source, ())]
    settled: set[str] = set()
    while frontier:
        cost, length, ids, node, edges = heapq.heappop(frontier)
        if node in settled:
            continue
        if node == target:
            return cost, edges
        settled.add(node)
        for w, e in weighted.get(node, ()):
            if e.target not in settled:
                heapq.heappush(frontier, (cost + w, length + 1, ids + (e.id,), e.target, edges + (e,)))
    return None

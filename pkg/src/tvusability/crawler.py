"""Automatic interaction-model construction by exploring a simulated app.

The crawler starts at the app's initial state and explores breadth-first.
Every distinct (screen, focus) pair becomes one node; internal flags are
deliberately not part of node identity, since a flag flip is exactly the
self-loop case (an action that changes app state without a transition
between nodes). Each discovered node is probed once with all six actions
from the state that first reached it.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field

from .model import ACTIONS, Action, Edge, InteractionModel, Node, NodeKind
from .simulator import AppSpec, Effect, SimState, initial_state, step


class CrawlConfigError(ValueError):
    pass


@dataclass(frozen=True)
class CrawlConfig:
    """node_budget=None means unlimited; action_order is the fixed probe order."""

    node_budget: int | None = None
    action_order: tuple[Action, ...] = ACTIONS

    def __post_init__(self):
        if self.node_budget is not None and self.node_budget < 1:
            raise CrawlConfigError(f"node budget must be >= 1, got {self.node_budget}")
        if tuple(sorted(self.action_order, key=lambda a: a.value)) != tuple(
            sorted(ACTIONS, key=lambda a: a.value)
        ):
            raise CrawlConfigError("action_order must be a permutation of the six actions")


@dataclass
class CrawlRun:
    """A completed crawl: the emitted model plus replay states and counters.

    `states` maps each node id to the simulator state that first reached it,
    which is the state every outgoing edge of that node was probed from.
    """

    model: InteractionModel
    states: dict[str, SimState] = field(default_factory=dict)
    actions_simulated: int = 0
    duration_s: float = 0.0
    truncated: bool = False


@dataclass(frozen=True)
class CrawlStats:
    nodes: int
    edges: int
    end_nodes: int
    actions_simulated: int
    duration_s: float


def _node_id(state: SimState) -> str:
    return f"{state.screen}/{state.focus}"


def _make_node(spec: AppSpec, state: SimState) -> Node:
    screen = spec.screen_by_id[state.screen]
    element = screen.element_by_id[state.focus]
    # a single-element screen is indistinguishable from the screen itself
    kind = NodeKind.SCREEN if len(screen.elements) == 1 else NodeKind.CONTAINER
    return Node(id=_node_id(state), kind=kind, label=element.label or _node_id(state))


def crawl_run(spec: AppSpec, config: CrawlConfig = CrawlConfig()) -> CrawlRun:
    """Breadth-first exploration of the app; see `crawl` for the model-only form.

    Effects map to the model as: MOVED/OPENED/BACKED add an edge to the
    (possibly new) target node, INTERNAL adds a self-loop, NOOP adds
    nothing. When adding the target node would exceed the node budget, the
    edge is skipped too (the model never references unexplored nodes).
    """
    started = time.perf_counter()
    budget = config.node_budget

    start_state = initial_state(spec)
    nodes: list[Node] = [_make_node(spec, start_state)]
    edges: list[Edge] = []
    states: dict[str, SimState] = {_node_id(start_state): start_state}
    queue: deque[SimState] = deque([start_state])
    actions_simulated = 0
    truncated = False

    while queue:
        state = queue.popleft()
        source = _node_id(state)
        for action in config.action_order:
            next_state, effect = step(spec, state, action)
            actions_simulated += 1
            if effect is Effect.NOOP:
                continue
            if effect is Effect.INTERNAL:
                edges.append(Edge(id=f"{source}:{action.value}", source=source, target=source, action=action))
                continue
            target = _node_id(next_state)
            if target not in states:
                if budget is not None and len(states) >= budget:
                    truncated = True
                    continue
                states[target] = next_state
                nodes.append(_make_node(spec, next_state))
                queue.append(next_state)
            edges.append(Edge(id=f"{source}:{action.value}", source=source, target=target, action=action))

    model = InteractionModel(nodes=tuple(nodes), edges=tuple(edges), start=_node_id(start_state))
    return CrawlRun(
        model=model,
        states=states,
        actions_simulated=actions_simulated,
        duration_s=time.perf_counter() - started,
        truncated=truncated,
    )


def crawl(spec: AppSpec, config: CrawlConfig = CrawlConfig()) -> InteractionModel:
    """Explore the app and return the constructed interaction model."""
    return crawl_run(spec, config).model


def crawl_stats(run: CrawlRun) -> CrawlStats:
    return CrawlStats(
        nodes=len(run.model.nodes),
        edges=len(run.model.edges),
        end_nodes=len(run.model.end_nodes),
        actions_simulated=run.actions_simulated,
        duration_s=run.duration_s,
    )

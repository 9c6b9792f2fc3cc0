"""Context-weighted user effort for edges and paths.

The effort of one transition is the action's default effort divided by the
user capability and the device and environment factors. A capability or
factor of zero makes the transition infeasible; infeasibility is the
absorbing value INFEASIBLE (math.inf) rather than an exception, so path
search can skip such edges instead of aborting.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping

from .model import ACTIONS, Action, Edge

INFEASIBLE: float = math.inf


def is_infeasible(effort: float) -> bool:
    return math.isinf(effort)


class ContextError(ValueError):
    pass


@dataclass(frozen=True)
class Context:
    """Per-action default effort (ms) and capability, plus device/environment factors.

    delta values must be strictly positive; capabilities lie in [0, 1]
    (0 means the user cannot perform the action); factors are >= 0.
    """

    name: str
    delta: Mapping[Action, float]
    uc: Mapping[Action, float] = field(default_factory=dict)
    device_factor: float = 1.0
    env_factor: float = 1.0

    def __post_init__(self):
        delta = {a: float(self.delta[a]) for a in ACTIONS if a in self.delta}
        uc = {a: float(self.uc.get(a, 1.0)) for a in ACTIONS}
        missing = [a.value for a in ACTIONS if a not in delta]
        if missing:
            raise ContextError(f"context {self.name!r} is missing delta for: {', '.join(missing)}")
        for a, v in delta.items():
            if not v > 0:
                raise ContextError(f"context {self.name!r}: delta({a.value}) must be > 0, got {v}")
        for a, v in uc.items():
            if not 0.0 <= v <= 1.0:
                raise ContextError(f"context {self.name!r}: UC({a.value}) must be in [0, 1], got {v}")
        if self.device_factor < 0 or self.env_factor < 0:
            raise ContextError(f"context {self.name!r}: device/environment factors must be >= 0")
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "uc", uc)
        object.__setattr__(self, "device_factor", float(self.device_factor))
        object.__setattr__(self, "env_factor", float(self.env_factor))


def action_effort(action: Action, ctx: Context) -> float:
    """Effort in ms to perform one action in a context, or INFEASIBLE."""
    uc = ctx.uc[action]
    if uc == 0.0 or ctx.device_factor == 0.0 or ctx.env_factor == 0.0:
        return INFEASIBLE
    return ctx.delta[action] / (uc * ctx.device_factor * ctx.env_factor)


def edge_effort(edge: Edge, ctx: Context) -> float:
    return action_effort(edge.action, ctx)


def path_effort(edges: Iterable[Edge], ctx: Context) -> float:
    """Total effort of an edge sequence; empty sequences cost 0.

    INFEASIBLE absorbs: one infeasible edge makes the whole path infeasible.
    """
    total = 0.0
    for e in edges:
        total += edge_effort(e, ctx)
    return total


_UNIT_UC = {a: 1.0 for a in ACTIONS}

_INITIAL_DELTA = {
    Action.LEFT: 800.0,
    Action.RIGHT: 800.0,
    Action.UP: 800.0,
    Action.DOWN: 800.0,
    Action.OK: 2500.0,
    Action.BACK: 1500.0,
}

_ADJUSTED_DELTA = {
    Action.LEFT: 1000.0,
    Action.RIGHT: 1000.0,
    Action.UP: 1000.0,
    Action.DOWN: 1250.0,
    Action.OK: 2000.0,
    Action.BACK: 1225.0,
}

BUILTIN_CONTEXT_NAMES = ("initial", "adjusted", "baseline-Cs")


def builtin_context(name: str) -> Context:
    """Named parametrizations: "initial", "adjusted", and the alias "baseline-Cs"."""
    if name in ("initial", "baseline-Cs"):
        return Context(name=name, delta=_INITIAL_DELTA, uc=_UNIT_UC)
    if name == "adjusted":
        return Context(name=name, delta=_ADJUSTED_DELTA, uc=_UNIT_UC)
    raise ContextError(f"unknown builtin context {name!r} (expected one of {', '.join(BUILTIN_CONTEXT_NAMES)})")


def load_context(delta_csv: bytes | str | IO, factors_csv: bytes | str | IO, name: str = "custom") -> Context:
    """Build a Context from the two CSV configuration files.

    delta CSV: header ``action,delta_ms,uc`` with one row per action (all six
    required). factors CSV: header ``factor,value`` with rows ``device`` and
    ``environment``.
    """
    delta: dict[Action, float] = {}
    uc: dict[Action, float] = {}
    for rownum, row in _csv_rows(delta_csv, ("action", "delta_ms", "uc"), "delta CSV"):
        try:
            action = Action(row["action"])
        except ValueError:
            raise ContextError(f"delta CSV row {rownum}: unknown action {row['action']!r}") from None
        if action in delta:
            raise ContextError(f"delta CSV row {rownum}: duplicate action {action.value}")
        delta[action] = _parse_number(row["delta_ms"], f"delta CSV row {rownum}: delta_ms")
        uc[action] = _parse_number(row["uc"], f"delta CSV row {rownum}: uc")

    factors: dict[str, float] = {}
    for rownum, row in _csv_rows(factors_csv, ("factor", "value"), "factors CSV"):
        key = row["factor"]
        if key not in ("device", "environment"):
            raise ContextError(f"factors CSV row {rownum}: unknown factor {key!r}")
        factors[key] = _parse_number(row["value"], f"factors CSV row {rownum}: value")
    for key in ("device", "environment"):
        if key not in factors:
            raise ContextError(f"factors CSV: missing {key!r} row")

    return Context(name=name, delta=delta, uc=uc, device_factor=factors["device"], env_factor=factors["environment"])


def _parse_number(raw: str, where: str) -> float:
    try:
        return float(raw)
    except (TypeError, ValueError):
        raise ContextError(f"{where}: expected a number, got {raw!r}") from None


def _csv_rows(source: bytes | str | IO, columns: tuple[str, ...], what: str):
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if not isinstance(source, str):
        data = source.read()
        source = data.decode("utf-8") if isinstance(data, bytes) else data
    reader = csv.DictReader(io.StringIO(source))
    header = tuple(reader.fieldnames or ())
    if header != columns:
        raise ContextError(f"{what}: expected header {','.join(columns)!r}, got {','.join(header)!r}")
    for rownum, row in enumerate(reader, start=2):
        if any(row[c] is None for c in columns):
            raise ContextError(f"{what} row {rownum}: wrong number of fields")
        yield rownum, row

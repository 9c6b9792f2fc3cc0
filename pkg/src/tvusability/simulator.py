"""Deterministic simulated TV app: the crawl target.

An app is a declarative set of screens with focusable elements. Directional
navigation is explicit per element (topological, no geometry inference).
OK either opens another screen, toggles an internal flag without moving
focus (the self-loop case), or does nothing. BACK pops a history stack of
(screen, focus) pairs, falling back to the screen's static back target.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import IO, Mapping, Sequence

from .model import DIRECTIONAL, Action


class AppSpecError(ValueError):
    pass


@dataclass(frozen=True)
class OpenScreen:
    """OK opens another screen with focus on a given element."""

    screen: str
    focus: str


@dataclass(frozen=True)
class InternalToggle:
    """OK flips an internal flag; screen and focus stay put."""

    key: str


OkBehavior = OpenScreen | InternalToggle | None

_DIRECTIONAL = frozenset(DIRECTIONAL)


@dataclass(frozen=True, slots=True)
class FocusableElement:
    id: str
    nav: Mapping[Action, str] = field(default_factory=dict)
    ok: OkBehavior = None
    label: str = ""

    def __post_init__(self):
        # plain dicts are adopted as-is; generated specs create elements in bulk
        if type(self.nav) is not dict:
            object.__setattr__(self, "nav", dict(self.nav))
        for action in self.nav:
            if action not in _DIRECTIONAL:
                raise AppSpecError(f"element {self.id!r}: nav key {action!r} is not a directional action")


@dataclass(frozen=True)
class Screen:
    id: str
    elements: tuple[FocusableElement, ...]
    back_target: str | None = None

    @cached_property
    def element_by_id(self) -> dict[str, FocusableElement]:
        return {e.id: e for e in self.elements}


@dataclass(frozen=True)
class AppSpec:
    screens: tuple[Screen, ...]
    start_screen: str
    start_focus: str

    @cached_property
    def screen_by_id(self) -> dict[str, Screen]:
        return {s.id: s for s in self.screens}


@dataclass(frozen=True)
class SimState:
    """Current screen and focus, internal flags, and the BACK history stack."""

    screen: str
    focus: str
    flags: frozenset[str] = frozenset()
    history: tuple[tuple[str, str], ...] = ()


class Effect(str, Enum):
    MOVED = "MOVED"
    OPENED = "OPENED"
    INTERNAL = "INTERNAL"
    BACKED = "BACKED"
    NOOP = "NOOP"


def validate_app(spec: AppSpec) -> list[str]:
    """All referenced screens/elements must exist; element ids unique per spec."""
    problems: list[str] = []
    seen_screens: set[str] = set()
    for screen in spec.screens:
        if screen.id in seen_screens:
            problems.append(f"screen {screen.id!r} appears more than once")
        seen_screens.add(screen.id)

    seen_elements: set[str] = set()
    for screen in spec.screens:
        local = set()
        for element in screen.elements:
            if element.id in seen_elements:
                problems.append(f"element id {element.id!r} is not unique within the spec")
            seen_elements.add(element.id)
            local.add(element.id)
        for element in screen.elements:
            for action, target in element.nav.items():
                if target not in local:
                    problems.append(
                        f"element {element.id!r} nav {action.value} targets {target!r}, not on screen {screen.id!r}"
                    )
            if isinstance(element.ok, OpenScreen):
                target = element.ok
                if target.screen not in spec.screen_by_id:
                    problems.append(f"element {element.id!r} OK opens unknown screen {target.screen!r}")
                elif target.focus not in spec.screen_by_id[target.screen].element_by_id:
                    problems.append(
                        f"element {element.id!r} OK opens {target.screen!r} at unknown element {target.focus!r}"
                    )
        if screen.back_target is not None and screen.back_target not in spec.screen_by_id:
            problems.append(f"screen {screen.id!r} back target {screen.back_target!r} is unknown")

    if spec.start_screen not in spec.screen_by_id:
        problems.append(f"start screen {spec.start_screen!r} is unknown")
    elif spec.start_focus not in spec.screen_by_id[spec.start_screen].element_by_id:
        problems.append(f"start focus {spec.start_focus!r} is not on screen {spec.start_screen!r}")
    return problems


def initial_state(spec: AppSpec) -> SimState:
    return SimState(screen=spec.start_screen, focus=spec.start_focus)


def step(spec: AppSpec, state: SimState, action: Action) -> tuple[SimState, Effect]:
    """Advance the simulation by one button press. Total and deterministic."""
    screen = spec.screen_by_id[state.screen]
    element = screen.element_by_id[state.focus]

    if action in DIRECTIONAL:
        target = element.nav.get(action)
        if target is None:
            return state, Effect.NOOP
        return replace(state, focus=target), Effect.MOVED

    if action is Action.OK:
        if isinstance(element.ok, OpenScreen):
            return (
                SimState(
                    screen=element.ok.screen,
                    focus=element.ok.focus,
                    flags=state.flags,
                    history=state.history + ((state.screen, state.focus),),
                ),
                Effect.OPENED,
            )
        if isinstance(element.ok, InternalToggle):
            key = element.ok.key
            flags = state.flags - {key} if key in state.flags else state.flags | {key}
            return replace(state, flags=flags), Effect.INTERNAL
        return state, Effect.NOOP

    # BACK: pop history, else fall back to the static back target
    if state.history:
        prev_screen, prev_focus = state.history[-1]
        return (
            SimState(screen=prev_screen, focus=prev_focus, flags=state.flags, history=state.history[:-1]),
            Effect.BACKED,
        )
    if screen.back_target is not None:
        target = spec.screen_by_id[screen.back_target]
        return (
            SimState(screen=target.id, focus=target.elements[0].id, flags=state.flags, history=()),
            Effect.BACKED,
        )
    return state, Effect.NOOP


def auto_wire_list(screen: Screen, order: Sequence[str] | None = None) -> Screen:
    """Chain LEFT/RIGHT between consecutive siblings; the ends stay unwired.

    `order` defaults to the screen's element order. Existing UP/DOWN entries
    are preserved; LEFT/RIGHT of listed elements are overwritten.
    """
    ids = list(order) if order is not None else [e.id for e in screen.elements]
    if not ids:
        raise AppSpecError("auto_wire_list needs at least one element")
    position = {eid: i for i, eid in enumerate(ids)}
    wired = []
    for element in screen.elements:
        if element.id not in position:
            wired.append(element)
            continue
        i = position[element.id]
        nav = {a: t for a, t in element.nav.items() if a not in (Action.LEFT, Action.RIGHT)}
        if i > 0:
            nav[Action.LEFT] = ids[i - 1]
        if i < len(ids) - 1:
            nav[Action.RIGHT] = ids[i + 1]
        wired.append(replace(element, nav=nav))
    return replace(screen, elements=tuple(wired))


def generated_list(n: int, screen_id: str = "list") -> AppSpec:
    """A single screen holding an n-item LEFT/RIGHT chain.

    Large n approximates the effectively infinite UIs of online-content
    apps; construction avoids per-element helpers so n in the millions
    stays fast.
    """
    if n < 1:
        raise AppSpecError("generated_list needs n >= 1")
    left, right = Action.LEFT, Action.RIGHT
    ids = [f"item-{i}" for i in range(1, n + 1)]
    if n == 1:
        elements = (FocusableElement(id=ids[0]),)
    else:
        interior = [
            FocusableElement(id=ids[i], nav={left: ids[i - 1], right: ids[i + 1]})
            for i in range(1, n - 1)
        ]
        elements = (
            FocusableElement(id=ids[0], nav={right: ids[1]}),
            *interior,
            FocusableElement(id=ids[-1], nav={left: ids[-2]}),
        )
    screen = Screen(id=screen_id, elements=elements)
    return AppSpec(screens=(screen,), start_screen=screen_id, start_focus=ids[0])


# --- document format --------------------------------------------------------

def _read_source(source: bytes | str | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def load_app(source: bytes | str | IO) -> AppSpec:
    """Parse and validate an app spec document (JSON)."""
    text = _read_source(source)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise AppSpecError(f"app document is not valid JSON: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise AppSpecError("app document must be a JSON object")

    try:
        screens = []
        for i, raw_screen in enumerate(doc["screens"]):
            where = f"screens[{i}]"
            elements = []
            for j, raw in enumerate(raw_screen["elements"]):
                ewhere = f"{where}.elements[{j}]"
                nav = {}
                for key, target in (raw.get("nav") or {}).items():
                    try:
                        nav[Action(key)] = str(target)
                    except ValueError:
                        raise AppSpecError(f"{ewhere}: unknown nav action {key!r}") from None
                ok = _parse_ok(raw.get("ok"), ewhere)
                elements.append(
                    FocusableElement(id=str(raw["id"]), nav=nav, ok=ok, label=str(raw.get("label", "")))
                )
            screens.append(
                Screen(
                    id=str(raw_screen["id"]),
                    elements=tuple(elements),
                    back_target=raw_screen.get("back_target"),
                )
            )
        spec = AppSpec(
            screens=tuple(screens),
            start_screen=str(doc["start_screen"]),
            start_focus=str(doc["start_focus"]),
        )
    except KeyError as exc:
        raise AppSpecError(f"app document: missing required field {exc.args[0]!r}") from None

    problems = validate_app(spec)
    if problems:
        raise AppSpecError("; ".join(problems))
    return spec


def _parse_ok(raw, where: str) -> OkBehavior:
    if raw is None:
        return None
    if not isinstance(raw, dict) or len(raw) != 1:
        raise AppSpecError(f"{where}: ok must be null, {{'open': ...}} or {{'toggle': key}}")
    if "open" in raw:
        target = raw["open"]
        try:
            return OpenScreen(screen=str(target["screen"]), focus=str(target["focus"]))
        except (TypeError, KeyError):
            raise AppSpecError(f"{where}: ok.open needs 'screen' and 'focus'") from None
    if "toggle" in raw:
        return InternalToggle(key=str(raw["toggle"]))
    raise AppSpecError(f"{where}: unknown ok behavior {next(iter(raw))!r}")


def app_to_doc(spec: AppSpec) -> dict:
    screens = []
    for screen in spec.screens:
        elements = []
        for element in screen.elements:
            raw: dict = {"id": element.id}
            if element.label:
                raw["label"] = element.label
            if element.nav:
                raw["nav"] = {a.value: t for a, t in element.nav.items()}
            if isinstance(element.ok, OpenScreen):
                raw["ok"] = {"open": {"screen": element.ok.screen, "focus": element.ok.focus}}
            elif isinstance(element.ok, InternalToggle):
                raw["ok"] = {"toggle": element.ok.key}
            elements.append(raw)
        raw_screen: dict = {"id": screen.id, "elements": elements}
        if screen.back_target is not None:
            raw_screen["back_target"] = screen.back_target
        screens.append(raw_screen)
    return {"screens": screens, "start_screen": spec.start_screen, "start_focus": spec.start_focus}


def save_app(spec: AppSpec) -> bytes:
    return (json.dumps(app_to_doc(spec), indent=2, ensure_ascii=False) + "\n").encode("utf-8")

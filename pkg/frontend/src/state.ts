/** Client-side view state. Every number shown in the UI comes from a server
 * response stored here; nothing is recomputed locally.
 */

import type { Point } from "./layout.js";
import type { ContextDoc, ModelDoc, RunDoc, ScenarioDoc, ThresholdsDoc, WaypointDoc } from "./types.js";

export type Mode = "select" | "scenario" | "edit";

export interface ViewState {
  sessionId: string | null;
  modelVersion: string | null;
  model: ModelDoc | null;
  positions: Map<string, Point>;
  scenarios: ScenarioDoc[];
  selectedScenario: string | null;
  draftWaypoints: WaypointDoc[];
  highlightedPath: string[];
  lastRuns: RunDoc[]; // at most two, oldest first
  context: ContextDoc | null;
  thresholds: ThresholdsDoc | null;
  mode: Mode;
}

export function emptyState(): ViewState {
  return {
    sessionId: null,
    modelVersion: null,
    model: null,
    positions: new Map(),
    scenarios: [],
    selectedScenario: null,
    draftWaypoints: [],
    highlightedPath: [],
    lastRuns: [],
    context: null,
    thresholds: null,
    mode: "select",
  };
}

/** Keep only edges that exist in the displayed model version. */
export function setHighlightedPath(state: ViewState, edgeIds: readonly string[]): void {
  const known = new Set((state.model?.edges ?? []).map((e) => e.id));
  state.highlightedPath = edgeIds.filter((id) => known.has(id));
}

/** Remember the last two verification runs for diffing. */
export function pushRun(state: ViewState, run: RunDoc): void {
  state.lastRuns = [...state.lastRuns.slice(-1), run];
}

export function previousRun(state: ViewState): RunDoc | null {
  return state.lastRuns.length === 2 ? state.lastRuns[0]! : null;
}

export function latestRun(state: ViewState): RunDoc | null {
  return state.lastRuns.length > 0 ? state.lastRuns[state.lastRuns.length - 1]! : null;
}

const LAYOUT_KEY_PREFIX = "tvusability-layout-";

export function loadPositions(storage: Storage | null, sessionId: string): Map<string, Point> {
  if (!storage) {
    return new Map();
  }
  try {
    const raw = storage.getItem(LAYOUT_KEY_PREFIX + sessionId);
    if (!raw) {
      return new Map();
    }
    const parsed = JSON.parse(raw) as Record<string, Point>;
    return new Map(Object.entries(parsed));
  } catch {
    return new Map();
  }
}

export function savePositions(storage: Storage | null, sessionId: string, positions: Map<string, Point>): void {
  if (!storage) {
    return;
  }
  try {
    storage.setItem(LAYOUT_KEY_PREFIX + sessionId, JSON.stringify(Object.fromEntries(positions)));
  } catch {
    // storage may be full or unavailable; layout is a convenience only
  }
}

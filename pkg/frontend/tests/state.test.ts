import { describe, expect, it } from "vitest";

import { emptyState, latestRun, previousRun, pushRun, setHighlightedPath } from "../src/state.js";
import type { RunDoc } from "../src/types.js";
import { MOCK_MODEL } from "./mock_server.js";

function run(id: string): RunDoc {
  return {
    run_id: id,
    model_version: "v1",
    context: "adjusted",
    thresholds: { nr_threshold: 1.5, path_len_threshold: 100, effort_threshold: 100000 },
    reports: [],
    summary: { findings_by_rule: {}, scenarios: 0, errors: 0 },
  };
}

describe("view state", () => {
  it("filters highlighted edges to those in the displayed model", () => {
    const state = emptyState();
    state.model = MOCK_MODEL;
    setHighlightedPath(state, ["e1", "ghost", "e3"]);
    expect(state.highlightedPath).toEqual(["e1", "e3"]);
  });

  it("clears the highlight when no model is loaded", () => {
    const state = emptyState();
    setHighlightedPath(state, ["e1"]);
    expect(state.highlightedPath).toEqual([]);
  });

  it("keeps exactly the last two runs for diffing", () => {
    const state = emptyState();
    pushRun(state, run("r1"));
    expect(previousRun(state)).toBeNull();
    pushRun(state, run("r2"));
    pushRun(state, run("r3"));
    expect(state.lastRuns.map((r) => r.run_id)).toEqual(["r2", "r3"]);
    expect(previousRun(state)!.run_id).toBe("r2");
    expect(latestRun(state)!.run_id).toBe("r3");
  });
});

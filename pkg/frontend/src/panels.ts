/** Sidebar panels: scenarios, context editor, thresholds, findings, run delta.
 * Pure DOM construction from server-provided documents.
 */

import { ACTIONS, type Action, type ContextDoc, type DiffDoc, type RunDoc, type ScenarioDoc, type ThresholdsDoc, type WaypointDoc } from "./types.js";

function h<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Array<Node | string>
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  node.append(...children);
  return node;
}

function formatEffort(value: number | string | undefined): string {
  if (value === undefined) {
    return "-";
  }
  if (typeof value === "string") {
    return value;
  }
  return `${value} ms`;
}

export function renderFindings(container: HTMLElement, run: RunDoc | null): void {
  container.textContent = "";
  if (!run) {
    container.append(h("p", { class: "hint" }, "No verification run yet."));
    return;
  }
  container.append(
    h("p", { class: "run-meta" }, `run ${run.run_id} · model ${run.model_version} · context ${run.context}`),
  );
  for (const report of run.reports) {
    const card = h("div", { class: "report-card", "data-scenario": report.scenario });
    card.append(h("h4", {}, `Scenario ${report.scenario}`));
    if (report.error) {
      card.append(h("p", { class: "error-text" }, report.error));
      container.append(card);
      continue;
    }
    if (report.resolved) {
      const r = report.resolved;
      card.append(
        h(
          "p",
          { class: "measures" },
          `effort ${formatEffort(r.effort_ms)} · ${r.length} steps · nr ${r.node_repetition}`,
        ),
      );
    } else if (report.not_found) {
      const wp = report.not_found.waypoint;
      const ref = "node" in wp ? `node ${wp.node}` : `edge ${wp.edge}`;
      card.append(h("p", { class: "measures" }, `no realization: ${report.not_found.reason} at ${ref}`));
    }
    const findings = report.findings ?? [];
    if (findings.length === 0) {
      card.append(h("p", { class: "ok-text", "data-findings": "none" }, "no findings"));
    } else {
      const list = h("ul", { class: "findings", "data-findings": String(findings.length) });
      for (const finding of findings) {
        const detail =
          finding.measured !== undefined && finding.threshold !== undefined
            ? ` (${finding.measured} > ${finding.threshold})`
            : "";
        list.append(h("li", { class: "finding", "data-rule": finding.rule }, `${finding.rule}${detail}`));
      }
      card.append(list);
    }
    container.append(card);
  }
}

export function renderDelta(container: HTMLElement, diff: DiffDoc | null): void {
  container.textContent = "";
  if (!diff) {
    container.append(h("p", { class: "hint" }, "Run verification twice (for example after an edit) to see deltas."));
    return;
  }
  container.append(h("p", { class: "run-meta" }, `${diff.base} → ${diff.other}`));
  const table = h("table", { class: "delta-table" });
  table.append(
    h("tr", {}, h("th", {}, "scenario"), h("th", {}, "Δ effort"), h("th", {}, "Δ steps"), h("th", {}, "findings")),
  );
  for (const row of diff.scenarios) {
    const effort = row.effort_delta === undefined ? "-" : `${row.effort_delta > 0 ? "+" : ""}${row.effort_delta} ms`;
    const steps = row.length_delta === undefined ? "-" : `${row.length_delta > 0 ? "+" : ""}${row.length_delta}`;
    const findings = [
      ...(row.findings_added ?? []).map((rule) => `+${rule}`),
      ...(row.findings_removed ?? []).map((rule) => `−${rule}`),
    ];
    table.append(
      h(
        "tr",
        { "data-delta-scenario": row.scenario },
        h("td", {}, row.scenario),
        h("td", { class: "delta-effort" }, effort),
        h("td", {}, steps),
        h("td", {}, row.note ?? (findings.join(", ") || "unchanged")),
      ),
    );
  }
  container.append(table);
}

export interface ContextEditorCallbacks {
  onApply: (deltaCsv: string, factorsCsv: string) => void;
  onBuiltin: (name: string) => void;
}

/** Per-action sliders for default effort and capability (with an "unable" toggle). */
export function renderContextEditor(container: HTMLElement, context: ContextDoc | null, callbacks: ContextEditorCallbacks): void {
  container.textContent = "";
  if (!context) {
    container.append(h("p", { class: "hint" }, "Create a session first."));
    return;
  }
  container.append(h("p", { class: "run-meta" }, `context: ${context.name}`));

  const rows = new Map<Action, { delta: HTMLInputElement; uc: HTMLInputElement; unable: HTMLInputElement }>();
  const grid = h("div", { class: "context-grid" });
  for (const action of ACTIONS) {
    const delta = h("input", {
      type: "range",
      min: "100",
      max: "5000",
      step: "25",
      value: String(context.delta[action]),
      "data-delta": action,
    });
    const deltaValue = h("span", { class: "value" }, `${context.delta[action]} ms`);
    delta.addEventListener("input", () => {
      deltaValue.textContent = `${delta.value} ms`;
    });

    const uc = h("input", {
      type: "range",
      min: "0",
      max: "1",
      step: "0.05",
      value: String(context.uc[action]),
      "data-uc": action,
    });
    const ucValue = h("span", { class: "value" }, String(context.uc[action]));
    const unable = h("input", { type: "checkbox", "data-unable": action });
    unable.checked = context.uc[action] === 0;
    uc.addEventListener("input", () => {
      ucValue.textContent = uc.value;
      unable.checked = uc.value === "0";
    });
    unable.addEventListener("change", () => {
      uc.value = unable.checked ? "0" : "1";
      ucValue.textContent = uc.value;
    });

    rows.set(action, { delta, uc, unable });
    grid.append(
      h("div", { class: "context-row" },
        h("span", { class: "action-name" }, action),
        h("label", {}, "δ ", delta, deltaValue),
        h("label", {}, "UC ", uc, ucValue),
        h("label", { class: "unable" }, unable, " unable"),
      ),
    );
  }
  container.append(grid);

  const apply = h("button", { "data-role": "apply-context" }, "Apply context");
  apply.addEventListener("click", () => {
    const deltaLines = ["action,delta_ms,uc"];
    for (const action of ACTIONS) {
      const row = rows.get(action)!;
      const uc = row.unable.checked ? "0" : row.uc.value;
      deltaLines.push(`${action},${row.delta.value},${uc}`);
    }
    const factors = `factor,value\ndevice,${context.device_factor}\nenvironment,${context.env_factor}\n`;
    callbacks.onApply(deltaLines.join("\n") + "\n", factors);
  });
  const initial = h("button", { "data-role": "context-initial" }, "initial");
  initial.addEventListener("click", () => callbacks.onBuiltin("initial"));
  const adjusted = h("button", { "data-role": "context-adjusted" }, "adjusted");
  adjusted.addEventListener("click", () => callbacks.onBuiltin("adjusted"));
  container.append(h("div", { class: "button-row" }, apply, initial, adjusted));
}

export function renderThresholdsEditor(
  container: HTMLElement,
  thresholds: ThresholdsDoc,
  onApply: (values: ThresholdsDoc) => void,
): void {
  container.textContent = "";
  const nr = h("input", { type: "number", step: "0.1", value: String(thresholds.nr_threshold), "data-threshold": "nr" });
  const len = h("input", { type: "number", step: "1", value: String(thresholds.path_len_threshold), "data-threshold": "len" });
  const effort = h("input", {
    type: "number",
    step: "1000",
    value: String(thresholds.effort_threshold),
    "data-threshold": "effort",
  });
  const apply = h("button", { "data-role": "apply-thresholds" }, "Apply thresholds");
  apply.addEventListener("click", () =>
    onApply({
      nr_threshold: Number(nr.value),
      path_len_threshold: Number(len.value),
      effort_threshold: Number(effort.value),
    }),
  );
  container.append(
    h("label", {}, "node repetition ", nr),
    h("label", {}, "path length ", len),
    h("label", {}, "effort [ms] ", effort),
    apply,
  );
}

export interface ScenarioPanelCallbacks {
  onSelect: (scenarioId: string) => void;
  onStartDraft: () => void;
  onSaveDraft: (id: string) => void;
  onDiscardDraft: () => void;
}

function waypointLabel(wp: WaypointDoc): string {
  return "node" in wp ? wp.node : `edge ${wp.edge}`;
}

export function renderScenarioPanel(
  container: HTMLElement,
  scenarios: readonly ScenarioDoc[],
  selected: string | null,
  draft: readonly WaypointDoc[] | null,
  callbacks: ScenarioPanelCallbacks,
): void {
  container.textContent = "";
  const list = h("ul", { class: "scenario-list" });
  for (const scenario of scenarios) {
    const item = h(
      "li",
      { class: scenario.id === selected ? "selected" : "", "data-scenario-item": scenario.id },
      `${scenario.id} (${scenario.waypoints.length} waypoints)`,
    );
    item.addEventListener("click", () => callbacks.onSelect(scenario.id));
    list.append(item);
  }
  container.append(list);

  if (draft === null) {
    const start = h("button", { "data-role": "start-draft" }, "New scenario (click nodes/edges in order)");
    start.addEventListener("click", () => callbacks.onStartDraft());
    container.append(start);
    return;
  }

  const waypoints = h("ol", { class: "draft-waypoints" });
  for (const wp of draft) {
    waypoints.append(h("li", {}, waypointLabel(wp)));
  }
  const idInput = h("input", { type: "text", placeholder: "scenario id", "data-role": "draft-id" });
  const save = h("button", { "data-role": "save-draft" }, "Save scenario");
  save.addEventListener("click", () => {
    if (idInput.value.trim()) {
      callbacks.onSaveDraft(idInput.value.trim());
    }
  });
  const discard = h("button", { "data-role": "discard-draft" }, "Discard");
  discard.addEventListener("click", () => callbacks.onDiscardDraft());
  container.append(h("p", { class: "hint" }, "Building scenario: click nodes/edges on the graph."), waypoints, idInput, save, discard);
}

/** The workbench controller: wires the graph view and panels to the service.
 *
 * Invariants kept here: at most one verification request in flight, model
 * edits serialized and applied to the view only after the server confirms
 * the new version id, and the highlighted path always filtered against the
 * displayed model version. The client never computes efforts or paths.
 */

import { ApiClient, ApiError } from "./api.js";
import { renderGraph } from "./graph.js";
import { forceLayout, type Point } from "./layout.js";
import {
  renderContextEditor,
  renderDelta,
  renderFindings,
  renderScenarioPanel,
  renderThresholdsEditor,
} from "./panels.js";
import {
  emptyState,
  latestRun,
  loadPositions,
  previousRun,
  pushRun,
  savePositions,
  setHighlightedPath,
  type Mode,
  type ViewState,
} from "./state.js";
import type { Action, DiffDoc, EditRequest, ModelDoc, ScenarioDoc, SessionCreated } from "./types.js";

const SKELETON = `
<div class="toolbar">
  <label class="file-button">Load model<input type="file" data-role="model-file" accept=".json"></label>
  <label class="file-button">Crawl app<input type="file" data-role="app-file" accept=".json"></label>
  <input type="number" data-role="budget" placeholder="node budget" min="1">
  <span class="spacer"></span>
  <button data-role="mode-select" class="mode active">Select</button>
  <button data-role="mode-scenario" class="mode">Scenario builder</button>
  <button data-role="mode-edit" class="mode">Edit model</button>
  <span class="spacer"></span>
  <button data-role="verify" class="primary">Run verification</button>
</div>
<div class="edit-toolbar" data-role="edit-toolbar" hidden>
  <label>action <select data-role="edge-action">
    <option>LEFT</option><option>RIGHT</option><option>UP</option>
    <option>DOWN</option><option>OK</option><option>BACK</option>
  </select></label>
  <span data-role="connect-hint">click a source node, then a target node</span>
  <button data-role="remove-edge" disabled>Remove selected edge</button>
  <input type="text" data-role="new-node-id" placeholder="new node id">
  <button data-role="add-node">Add node</button>
  <input type="text" data-role="remove-node-id" placeholder="node id to remove">
  <button data-role="remove-node">Remove node</button>
</div>
<div class="main">
  <svg data-role="graph" class="graph"></svg>
  <aside class="sidebar">
    <section><h3>Session</h3><div data-role="session-info" class="panel"></div></section>
    <section><h3>Scenarios</h3><div data-role="scenarios" class="panel"></div></section>
    <section><h3>Context</h3><div data-role="context" class="panel"></div></section>
    <section><h3>Thresholds</h3><div data-role="thresholds" class="panel"></div></section>
    <section><h3>Findings</h3><div data-role="findings" class="panel"></div></section>
    <section><h3>Delta vs previous run</h3><div data-role="delta" class="panel"></div></section>
  </aside>
</div>
<div data-role="status" class="status"></div>
`;

export class App {
  readonly state: ViewState = emptyState();
  private verifyInFlight = false;
  private editQueue: Promise<unknown> = Promise.resolve();
  private draftActive = false;
  private pendingEdgeSource: string | null = null;
  private selectedEdge: string | null = null;
  private lastDiff: DiffDoc | null = null;
  private edgeCounter = 0;

  constructor(
    private readonly root: HTMLElement,
    private readonly client: ApiClient,
    private readonly storage: Storage | null = null,
  ) {
    root.innerHTML = SKELETON;
    this.bindToolbar();
    this.render();
  }

  private ref<T extends HTMLElement>(role: string): T {
    const node = this.root.querySelector(`[data-role="${role}"]`);
    if (!node) {
      throw new Error(`missing UI element ${role}`);
    }
    return node as T;
  }

  private bindToolbar(): void {
    this.ref<HTMLInputElement>("model-file").addEventListener("change", (event) => {
      void this.loadFile(event, (doc) => this.createSessionFromModel(doc as ModelDoc));
    });
    this.ref<HTMLInputElement>("app-file").addEventListener("change", (event) => {
      const budgetRaw = this.ref<HTMLInputElement>("budget").value;
      const budget = budgetRaw ? Number(budgetRaw) : undefined;
      void this.loadFile(event, (doc) => this.createSessionFromApp(doc, budget));
    });
    for (const mode of ["select", "scenario", "edit"] as const) {
      this.ref<HTMLButtonElement>(`mode-${mode}`).addEventListener("click", () => this.setMode(mode));
    }
    this.ref<HTMLButtonElement>("verify").addEventListener("click", () => void this.runVerify());
    this.ref<HTMLButtonElement>("remove-edge").addEventListener("click", () => {
      if (this.selectedEdge) {
        void this.applyEdit({ op: "remove_edge", edge_id: this.selectedEdge });
        this.selectedEdge = null;
      }
    });
    this.ref<HTMLButtonElement>("add-node").addEventListener("click", () => {
      const id = this.ref<HTMLInputElement>("new-node-id").value.trim();
      if (id) {
        void this.applyEdit({ op: "add_node", node: { id, kind: "nested-container", label: id } });
      }
    });
    this.ref<HTMLButtonElement>("remove-node").addEventListener("click", () => {
      const id = this.ref<HTMLInputElement>("remove-node-id").value.trim();
      if (id) {
        void this.applyEdit({ op: "remove_node", node_id: id });
      }
    });
  }

  private async loadFile(event: Event, handler: (doc: unknown) => Promise<void>): Promise<void> {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) {
      return;
    }
    try {
      await handler(JSON.parse(await file.text()));
    } catch (error) {
      this.showError(error);
    } finally {
      input.value = "";
    }
  }

  async createSessionFromModel(model: ModelDoc, scenarios: ScenarioDoc[] = []): Promise<void> {
    const created = await this.client.createSession({ model, scenarios });
    await this.adoptSession(created);
  }

  async createSessionFromApp(app: unknown, budget?: number, scenarios: ScenarioDoc[] = []): Promise<void> {
    const created = await this.client.createSession(
      budget === undefined ? { app, scenarios } : { app, budget, scenarios },
    );
    await this.adoptSession(created);
  }

  private async adoptSession(created: SessionCreated): Promise<void> {
    const state = this.state;
    state.sessionId = created.session_id;
    const exported = await this.client.getModel(created.session_id);
    state.modelVersion = exported.model_version;
    state.model = exported.model;
    state.scenarios = (await this.client.getScenarios(created.session_id)).scenarios;
    state.context = (await this.client.getContext(created.session_id)).context;
    state.thresholds = (await this.client.getSession(created.session_id)).thresholds;
    state.lastRuns = [];
    state.highlightedPath = [];
    state.selectedScenario = state.scenarios[0]?.id ?? null;
    this.lastDiff = null;

    const stored = loadPositions(this.storage, created.session_id);
    state.positions = this.positionsFor(exported.model, stored);
    this.setStatus(`session ${created.session_id} · model ${state.modelVersion}`);
    this.render();
  }

  private positionsFor(model: ModelDoc, seed: Map<string, Point>): Map<string, Point> {
    const missing = model.nodes.filter((n) => !seed.has(n.id)).map((n) => n.id);
    if (missing.length === 0) {
      return new Map(seed);
    }
    const computed = forceLayout(
      model.nodes.map((n) => n.id),
      model.edges.map((e) => ({ source: e.source, target: e.target })),
    );
    const merged = new Map(computed);
    for (const [id, point] of seed) {
      merged.set(id, point);
    }
    return merged;
  }

  setMode(mode: Mode): void {
    this.state.mode = mode;
    this.pendingEdgeSource = null;
    this.selectedEdge = null;
    if (mode !== "scenario") {
      this.draftActive = false;
      this.state.draftWaypoints = [];
    }
    this.render();
  }

  /** Run verification; at most one request in flight. */
  async runVerify(): Promise<void> {
    const sessionId = this.state.sessionId;
    if (!sessionId || this.verifyInFlight) {
      return;
    }
    this.verifyInFlight = true;
    try {
      const run = await this.client.runVerification(sessionId);
      pushRun(this.state, run);
      this.highlightSelectedScenario();
      const previous = previousRun(this.state);
      this.lastDiff = previous ? await this.client.diff(sessionId, previous.run_id, run.run_id) : null;
      this.setStatus(`run ${run.run_id} on model ${run.model_version}`);
    } catch (error) {
      this.showError(error);
    } finally {
      this.verifyInFlight = false;
    }
    this.render();
  }

  /** Apply a model edit; edits are serialized and the view updates only
   * after the server has confirmed the new version id. */
  applyEdit(edit: EditRequest): Promise<void> {
    const queued = this.editQueue.then(async () => {
      const sessionId = this.state.sessionId;
      if (!sessionId) {
        return;
      }
      try {
        const confirmed = await this.client.applyEdit(sessionId, edit);
        const exported = await this.client.getModel(sessionId, confirmed.model_version);
        this.state.modelVersion = exported.model_version;
        this.state.model = exported.model;
        this.state.positions = this.positionsFor(exported.model, this.state.positions);
        setHighlightedPath(this.state, this.state.highlightedPath); // drop edges gone from this version
        this.setStatus(`edit applied · model ${exported.model_version}`);
      } catch (error) {
        this.showError(error);
      }
      this.render();
    });
    this.editQueue = queued;
    return queued;
  }

  async applyContextCsv(deltaCsv: string, factorsCsv: string): Promise<void> {
    await this.updateContext({ delta_csv: deltaCsv, factors_csv: factorsCsv });
  }

  async applyBuiltinContext(name: string): Promise<void> {
    await this.updateContext({ name });
  }

  private async updateContext(update: { name?: string; delta_csv?: string; factors_csv?: string }): Promise<void> {
    if (!this.state.sessionId) {
      return;
    }
    try {
      const response = await this.client.putContext(this.state.sessionId, update);
      this.state.context = response.context;
      this.setStatus(`context set to ${response.context.name}`);
    } catch (error) {
      this.showError(error);
    }
    this.render();
  }

  private highlightSelectedScenario(): void {
    const run = latestRun(this.state);
    if (!run) {
      return;
    }
    const report =
      run.reports.find((r) => r.scenario === this.state.selectedScenario && r.resolved) ??
      run.reports.find((r) => r.resolved);
    setHighlightedPath(this.state, report?.resolved?.edges ?? []);
  }

  private handleNodeClick(nodeId: string): void {
    const state = this.state;
    if (state.mode === "scenario" && this.draftActive) {
      state.draftWaypoints = [...state.draftWaypoints, { node: nodeId }];
      this.render();
      return;
    }
    if (state.mode === "edit") {
      if (this.pendingEdgeSource === null) {
        this.pendingEdgeSource = nodeId;
        this.setStatus(`source ${nodeId}: now click the target node`);
        this.render();
        return;
      }
      const source = this.pendingEdgeSource;
      this.pendingEdgeSource = null;
      const action = this.ref<HTMLSelectElement>("edge-action").value as Action;
      this.edgeCounter += 1;
      void this.applyEdit({
        op: "add_edge",
        edge: { id: `ui-${source}-${action}-${this.edgeCounter}`, source, target: nodeId, action },
      });
    }
  }

  private handleEdgeClick(edgeId: string): void {
    const state = this.state;
    if (state.mode === "scenario" && this.draftActive) {
      state.draftWaypoints = [...state.draftWaypoints, { edge: edgeId }];
      this.render();
      return;
    }
    if (state.mode === "edit") {
      this.selectedEdge = edgeId;
      this.setStatus(`selected edge ${edgeId}`);
      this.render();
    }
  }

  private async saveDraft(id: string): Promise<void> {
    const state = this.state;
    if (!state.sessionId || state.draftWaypoints.length === 0) {
      return;
    }
    const scenarios = [...state.scenarios.filter((s) => s.id !== id), { id, waypoints: state.draftWaypoints }];
    try {
      await this.client.putScenarios(state.sessionId, scenarios);
      state.scenarios = scenarios;
      state.selectedScenario = id;
      this.draftActive = false;
      state.draftWaypoints = [];
      this.setStatus(`scenario ${id} saved`);
    } catch (error) {
      this.showError(error);
    }
    this.render();
  }

  private setStatus(message: string, isError = false): void {
    const status = this.ref<HTMLElement>("status");
    status.textContent = message;
    status.classList.toggle("error", isError);
  }

  private showError(error: unknown): void {
    if (error instanceof ApiError) {
      // surface the server's message verbatim, plus a staleness hint where relevant
      const hint =
        error.status === 409
          ? ` — the model may have changed since this view loaded (showing ${this.state.modelVersion ?? "none"})`
          : "";
      this.setStatus(`${error.detail}${hint}`, true);
    } else {
      this.setStatus(String(error), true);
    }
  }

  private render(): void {
    const state = this.state;
    for (const mode of ["select", "scenario", "edit"] as const) {
      this.ref<HTMLButtonElement>(`mode-${mode}`).classList.toggle("active", state.mode === mode);
    }
    this.ref<HTMLElement>("edit-toolbar").hidden = state.mode !== "edit";
    this.ref<HTMLButtonElement>("remove-edge").disabled = this.selectedEdge === null;

    const info = this.ref<HTMLElement>("session-info");
    info.textContent = state.sessionId
      ? `session ${state.sessionId} · model ${state.modelVersion} · ${state.model?.nodes.length ?? 0} nodes, ${state.model?.edges.length ?? 0} edges`
      : "Load a model document or crawl an app spec to begin.";

    const svg = this.ref<SVGSVGElement & HTMLElement>("graph");
    if (state.model) {
      renderGraph(
        svg as unknown as SVGSVGElement,
        state.model,
        state.positions,
        {
          highlightedEdges: state.highlightedPath,
          selectedEdges: this.selectedEdge ? [this.selectedEdge] : [],
          selectedNodes: this.pendingEdgeSource ? [this.pendingEdgeSource] : [],
        },
        {
          onNodeClick: (id) => this.handleNodeClick(id),
          onEdgeClick: (id) => this.handleEdgeClick(id),
          onNodeDrag: (id, point) => {
            state.positions.set(id, point);
            if (state.sessionId) {
              savePositions(this.storage, state.sessionId, state.positions);
            }
            this.render();
          },
        },
      );
    } else {
      svg.textContent = "";
    }

    renderScenarioPanel(
      this.ref("scenarios"),
      state.scenarios,
      state.selectedScenario,
      this.draftActive ? state.draftWaypoints : null,
      {
        onSelect: (id) => {
          state.selectedScenario = id;
          this.highlightSelectedScenario();
          this.render();
        },
        onStartDraft: () => {
          this.draftActive = true;
          state.mode = "scenario";
          state.draftWaypoints = [];
          this.render();
        },
        onSaveDraft: (id) => void this.saveDraft(id),
        onDiscardDraft: () => {
          this.draftActive = false;
          state.draftWaypoints = [];
          this.render();
        },
      },
    );

    renderContextEditor(this.ref("context"), state.context, {
      onApply: (deltaCsv, factorsCsv) => void this.applyContextCsv(deltaCsv, factorsCsv),
      onBuiltin: (name) => void this.applyBuiltinContext(name),
    });

    if (state.thresholds) {
      renderThresholdsEditor(this.ref("thresholds"), state.thresholds, (values) => {
        if (!state.sessionId) {
          return;
        }
        void this.client
          .putThresholds(state.sessionId, values)
          .then((response) => {
            state.thresholds = response.thresholds;
            this.setStatus("thresholds updated");
            this.render();
          })
          .catch((error) => this.showError(error));
      });
    } else {
      this.ref<HTMLElement>("thresholds").textContent = "";
    }

    renderFindings(this.ref("findings"), latestRun(state));
    renderDelta(this.ref("delta"), this.lastDiff);
  }
}

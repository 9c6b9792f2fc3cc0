/** Thin typed client for the /api/v1 service. All math happens server-side. */

import type {
  ContextDoc,
  ContextUpdate,
  DiffDoc,
  EditRequest,
  ModelDoc,
  RunDoc,
  ScenarioDoc,
  SessionCreateRequest,
  SessionCreated,
  SessionInfo,
  ThresholdsDoc,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
    private readonly base: string = "/api/v1",
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "Content-Type": "application/json" } };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const text = await response.text();
    let payload: unknown = null;
    try {
      payload = text ? JSON.parse(text) : null;
    } catch {
      payload = null;
    }
    if (!response.ok) {
      const detail =
        payload && typeof payload === "object" && "detail" in payload
          ? String((payload as { detail: unknown }).detail)
          : text || `HTTP ${response.status}`;
      throw new ApiError(response.status, detail);
    }
    return payload as T;
  }

  createSession(body: SessionCreateRequest): Promise<SessionCreated> {
    return this.request("POST", "/sessions", body);
  }

  getSession(sessionId: string): Promise<SessionInfo> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  getModel(sessionId: string, version?: string): Promise<{ model_version: string; model: ModelDoc }> {
    const query = version ? `?version=${encodeURIComponent(version)}` : "";
    return this.request("GET", `/sessions/${sessionId}/model${query}`);
  }

  getScenarios(sessionId: string): Promise<{ model_version: string; scenarios: ScenarioDoc[] }> {
    return this.request("GET", `/sessions/${sessionId}/scenarios`);
  }

  putScenarios(sessionId: string, scenarios: ScenarioDoc[]): Promise<{ model_version: string; scenario_ids: string[] }> {
    return this.request("PUT", `/sessions/${sessionId}/scenarios`, scenarios);
  }

  getContext(sessionId: string): Promise<{ model_version: string; context: ContextDoc }> {
    return this.request("GET", `/sessions/${sessionId}/context`);
  }

  putContext(sessionId: string, update: ContextUpdate): Promise<{ model_version: string; context: ContextDoc }> {
    return this.request("PUT", `/sessions/${sessionId}/context`, update);
  }

  putThresholds(
    sessionId: string,
    update: { name: string } | ThresholdsDoc,
  ): Promise<{ model_version: string; thresholds: ThresholdsDoc }> {
    return this.request("PUT", `/sessions/${sessionId}/thresholds`, update);
  }

  runVerification(sessionId: string): Promise<RunDoc> {
    return this.request("POST", `/sessions/${sessionId}/verify`);
  }

  applyEdit(sessionId: string, edit: EditRequest): Promise<{ session_id: string; model_version: string }> {
    return this.request("POST", `/sessions/${sessionId}/edits`, edit);
  }

  diff(sessionId: string, base: string, other: string): Promise<DiffDoc> {
    return this.request(
      "GET",
      `/sessions/${sessionId}/diff?base=${encodeURIComponent(base)}&other=${encodeURIComponent(other)}`,
    );
  }
}

/** Wire types mirroring the /api/v1 documents. */

export type Action = "LEFT" | "RIGHT" | "UP" | "DOWN" | "OK" | "BACK";

export const ACTIONS: readonly Action[] = ["LEFT", "RIGHT", "UP", "DOWN", "OK", "BACK"];

export type NodeKind = "screen" | "nested-container";

export interface NodeDoc {
  id: string;
  kind: NodeKind;
  label: string;
}

export interface EdgeDoc {
  id: string;
  source: string;
  target: string;
  action: Action;
}

export interface ModelDoc {
  nodes: NodeDoc[];
  edges: EdgeDoc[];
  start: string;
}

export type WaypointDoc = { node: string } | { edge: string };

export interface ScenarioDoc {
  id: string;
  waypoints: WaypointDoc[];
}

export interface FindingDoc {
  rule: string;
  measured?: number | string;
  threshold?: number | string;
}

export interface ResolvedDoc {
  edges: string[];
  length: number;
  unique_nodes: number;
  node_repetition: number;
  effort_ms: number | "INFEASIBLE";
  simple: boolean;
  degenerate: boolean;
}

export interface ReportDoc {
  scenario: string;
  context?: string;
  path_exists?: boolean;
  findings?: FindingDoc[];
  resolved?: ResolvedDoc;
  not_found?: { waypoint_index: number; waypoint: WaypointDoc; reason: string };
  error?: string;
}

export interface RunDoc {
  run_id: string;
  model_version: string;
  context: string;
  thresholds: ThresholdsDoc;
  reports: ReportDoc[];
  summary: { findings_by_rule: Record<string, number>; scenarios: number; errors: number };
}

export interface ThresholdsDoc {
  nr_threshold: number;
  path_len_threshold: number;
  effort_threshold: number;
}

export interface ContextDoc {
  name: string;
  delta: Record<Action, number>;
  uc: Record<Action, number>;
  device_factor: number;
  env_factor: number;
}

export interface SessionCreated {
  session_id: string;
  model_version: string;
}

export interface SessionInfo {
  session_id: string;
  model_version: string;
  versions: string[];
  scenario_ids: string[];
  context_name: string;
  thresholds: ThresholdsDoc;
  run_ids: string[];
}

export interface DiffRow {
  scenario: string;
  effort_delta?: number;
  length_delta?: number;
  findings_added?: string[];
  findings_removed?: string[];
  note?: string;
}

export interface DiffDoc {
  model_version: string;
  base: string;
  other: string;
  scenarios: DiffRow[];
}

export type EditRequest =
  | { op: "add_node"; node: NodeDoc }
  | { op: "remove_node"; node_id: string }
  | { op: "add_edge"; edge: EdgeDoc }
  | { op: "remove_edge"; edge_id: string }
  | { op: "set_start"; start: string };

export interface ContextUpdate {
  name?: string;
  delta_csv?: string;
  factors_csv?: string;
}

export interface SessionCreateRequest {
  model?: ModelDoc;
  app?: unknown;
  budget?: number;
  scenarios?: ScenarioDoc[];
  context?: string;
}

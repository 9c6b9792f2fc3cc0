/** SVG renderer for the directed multigraph.
 *
 * Parallel edges between the same node pair curve with increasing offsets,
 * self-loops are drawn as loops above the node, and every edge carries an
 * action badge. The highlighted resolved path gets a dash animation.
 */

import type { Point } from "./layout.js";
import type { EdgeDoc, ModelDoc } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const NODE_RADIUS = 16;

export interface GraphCallbacks {
  onNodeClick?: (nodeId: string, event: MouseEvent) => void;
  onEdgeClick?: (edgeId: string, event: MouseEvent) => void;
  onNodeDrag?: (nodeId: string, point: Point) => void;
}

export interface GraphView {
  highlightedEdges?: readonly string[];
  selectedNodes?: readonly string[];
  selectedEdges?: readonly string[];
}

function el<K extends keyof SVGElementTagNameMap>(tag: K, attrs: Record<string, string>): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  return node;
}

function groupParallel(edges: readonly EdgeDoc[]): Map<string, EdgeDoc[]> {
  const groups = new Map<string, EdgeDoc[]>();
  for (const edge of edges) {
    // undirected pair key so opposite directions also fan out
    const key = edge.source < edge.target ? `${edge.source}->${edge.target}` : `${edge.target}->${edge.source}`;
    const group = groups.get(key);
    if (group) {
      group.push(edge);
    } else {
      groups.set(key, [edge]);
    }
  }
  return groups;
}

function edgePath(edge: EdgeDoc, from: Point, to: Point, lane: number): { d: string; badge: Point } {
  if (edge.source === edge.target) {
    const r = 22 + lane * 12;
    const d =
      `M ${from.x} ${from.y - NODE_RADIUS} ` +
      `C ${from.x - r} ${from.y - NODE_RADIUS - r}, ${from.x + r} ${from.y - NODE_RADIUS - r}, ` +
      `${from.x} ${from.y - NODE_RADIUS}`;
    return { d, badge: { x: from.x, y: from.y - NODE_RADIUS - r + 4 } };
  }
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const length = Math.max(1, Math.sqrt(dx * dx + dy * dy));
  const nx = -dy / length;
  const ny = dx / length;
  const bend = lane === 0 ? 0 : Math.ceil(lane / 2) * 26 * (lane % 2 === 1 ? 1 : -1);
  const mx = (from.x + to.x) / 2 + nx * bend;
  const my = (from.y + to.y) / 2 + ny * bend;
  // stop the line at the target circle's rim so the arrowhead is visible
  const tx = to.x - (dx / length) * (NODE_RADIUS + 4);
  const ty = to.y - (dy / length) * (NODE_RADIUS + 4);
  return { d: `M ${from.x} ${from.y} Q ${mx} ${my} ${tx} ${ty}`, badge: { x: mx, y: my } };
}

export function renderGraph(
  svg: SVGSVGElement,
  model: ModelDoc,
  positions: ReadonlyMap<string, Point>,
  view: GraphView = {},
  callbacks: GraphCallbacks = {},
): void {
  svg.textContent = "";

  const defs = el("defs", {});
  const marker = el("marker", {
    id: "arrow",
    viewBox: "0 0 10 10",
    refX: "9",
    refY: "5",
    markerWidth: "7",
    markerHeight: "7",
    orient: "auto-start-reverse",
  });
  marker.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", class: "arrowhead" }));
  defs.appendChild(marker);
  svg.appendChild(defs);

  const edgeLayer = el("g", { class: "edges" });
  const badgeLayer = el("g", { class: "badges" });
  const nodeLayer = el("g", { class: "nodes" });
  svg.appendChild(edgeLayer);
  svg.appendChild(badgeLayer);
  svg.appendChild(nodeLayer);

  const highlighted = new Set(view.highlightedEdges ?? []);
  const selectedNodes = new Set(view.selectedNodes ?? []);
  const selectedEdges = new Set(view.selectedEdges ?? []);

  for (const group of groupParallel(model.edges).values()) {
    group.forEach((edge, lane) => {
      const from = positions.get(edge.source);
      const to = positions.get(edge.target);
      if (!from || !to) {
        return;
      }
      const { d, badge } = edgePath(edge, from, to, lane);
      const classes = ["edge"];
      if (edge.source === edge.target) {
        classes.push("self-loop");
      }
      if (highlighted.has(edge.id)) {
        classes.push("highlighted");
      }
      if (selectedEdges.has(edge.id)) {
        classes.push("selected");
      }
      const path = el("path", {
        d,
        class: classes.join(" "),
        "marker-end": "url(#arrow)",
        "data-edge": edge.id,
      });
      path.addEventListener("click", (event) => callbacks.onEdgeClick?.(edge.id, event));
      edgeLayer.appendChild(path);

      const label = el("text", {
        x: String(badge.x),
        y: String(badge.y),
        class: `badge badge-${edge.action.toLowerCase()}`,
        "data-edge-badge": edge.id,
      });
      label.textContent = edge.action;
      label.addEventListener("click", (event) => callbacks.onEdgeClick?.(edge.id, event));
      badgeLayer.appendChild(label);
    });
  }

  for (const node of model.nodes) {
    const at = positions.get(node.id);
    if (!at) {
      continue;
    }
    const classes = ["node", node.kind === "screen" ? "screen" : "container"];
    if (node.id === model.start) {
      classes.push("start");
    }
    if (selectedNodes.has(node.id)) {
      classes.push("selected");
    }
    const group = el("g", { class: classes.join(" "), "data-node": node.id });
    group.appendChild(el("circle", { cx: String(at.x), cy: String(at.y), r: String(NODE_RADIUS) }));
    const label = el("text", { x: String(at.x), y: String(at.y + NODE_RADIUS + 13), class: "node-label" });
    label.textContent = node.label || node.id;
    group.appendChild(label);
    group.addEventListener("click", (event) => callbacks.onNodeClick?.(node.id, event as MouseEvent));
    attachDrag(group, node.id, callbacks);
    nodeLayer.appendChild(group);
  }
}

function attachDrag(group: SVGGElement, nodeId: string, callbacks: GraphCallbacks): void {
  if (!callbacks.onNodeDrag) {
    return;
  }
  let dragging = false;
  group.addEventListener("pointerdown", (event) => {
    dragging = true;
    (event.target as Element).setPointerCapture?.(event.pointerId);
  });
  group.addEventListener("pointermove", (event) => {
    if (!dragging) {
      return;
    }
    const svg = group.ownerSVGElement;
    if (!svg) {
      return;
    }
    const rect = svg.getBoundingClientRect();
    callbacks.onNodeDrag?.(nodeId, { x: event.clientX - rect.left, y: event.clientY - rect.top });
  });
  group.addEventListener("pointerup", () => {
    dragging = false;
  });
}

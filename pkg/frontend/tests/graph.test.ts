import { describe, expect, it } from "vitest";

import { renderGraph } from "../src/graph.js";
import { forceLayout } from "../src/layout.js";
import { MOCK_MODEL } from "./mock_server.js";

function svgHost(): SVGSVGElement {
  document.body.innerHTML = "<svg></svg>";
  return document.querySelector("svg")!;
}

const POSITIONS = new Map([
  ["home", { x: 100, y: 100 }],
  ["rail", { x: 300, y: 100 }],
  ["detail", { x: 200, y: 250 }],
]);

describe("graph rendering", () => {
  it("draws every node and edge with action badges", () => {
    const svg = svgHost();
    renderGraph(svg, MOCK_MODEL, POSITIONS);
    expect(svg.querySelectorAll("[data-node]")).toHaveLength(3);
    expect(svg.querySelectorAll("path.edge")).toHaveLength(5);
    const badges = [...svg.querySelectorAll(".badge")].map((b) => b.textContent);
    expect(badges).toContain("RIGHT");
    expect(badges).toContain("BACK");
  });

  it("renders self-loops distinctly", () => {
    const svg = svgHost();
    renderGraph(svg, MOCK_MODEL, POSITIONS);
    const loops = svg.querySelectorAll("path.edge.self-loop");
    expect(loops).toHaveLength(1);
    expect(loops[0]!.getAttribute("data-edge")).toBe("e3");
  });

  it("fans out opposite-direction edges between the same pair", () => {
    const svg = svgHost();
    renderGraph(svg, MOCK_MODEL, POSITIONS);
    // e1 home->rail and e4 rail->home share the pair: different curves
    const d1 = svg.querySelector('[data-edge="e1"]')!.getAttribute("d");
    const d4 = svg.querySelector('[data-edge="e4"]')!.getAttribute("d");
    expect(d1).not.toBe(d4);
  });

  it("marks highlighted path edges", () => {
    const svg = svgHost();
    renderGraph(svg, MOCK_MODEL, POSITIONS, { highlightedEdges: ["e1", "e2"] });
    const highlighted = [...svg.querySelectorAll("path.edge.highlighted")].map((p) => p.getAttribute("data-edge"));
    expect(highlighted.sort()).toEqual(["e1", "e2"]);
  });

  it("marks the start node", () => {
    const svg = svgHost();
    renderGraph(svg, MOCK_MODEL, POSITIONS);
    expect(svg.querySelector('[data-node="home"]')!.classList.contains("start")).toBe(true);
  });
});

describe("force layout", () => {
  const ids = MOCK_MODEL.nodes.map((n) => n.id);
  const edges = MOCK_MODEL.edges.map((e) => ({ source: e.source, target: e.target }));

  it("is deterministic", () => {
    const first = forceLayout(ids, edges);
    const second = forceLayout(ids, edges);
    expect(first).toEqual(second);
  });

  it("positions every node inside the viewport region", () => {
    const layout = forceLayout(ids, edges, { width: 800, height: 600 });
    expect(layout.size).toBe(3);
    for (const point of layout.values()) {
      expect(point.x).toBeGreaterThan(-200);
      expect(point.x).toBeLessThan(1000);
      expect(point.y).toBeGreaterThan(-200);
      expect(point.y).toBeLessThan(800);
    }
  });

  it("separates nodes", () => {
    const layout = forceLayout(ids, edges);
    const points = [...layout.values()];
    for (let i = 0; i < points.length; i++) {
      for (let j = i + 1; j < points.length; j++) {
        const dx = points[i]!.x - points[j]!.x;
        const dy = points[i]!.y - points[j]!.y;
        expect(Math.sqrt(dx * dx + dy * dy)).toBeGreaterThan(30);
      }
    }
  });
});

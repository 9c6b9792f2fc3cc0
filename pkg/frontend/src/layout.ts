/** Deterministic force-directed layout for small multigraphs.
 *
 * No randomness: nodes start on a circle in input order and the simulation
 * runs a fixed number of ticks, so the same model always lays out the same
 * way. Crawled TV models are list-heavy, so a light link force plus strong
 * repulsion untangles chains into readable runs; positions are meant to be
 * nudged by hand afterwards and persisted.
 */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutEdge {
  source: string;
  target: string;
}

export interface LayoutOptions {
  width?: number;
  height?: number;
  iterations?: number;
  linkDistance?: number;
  repulsion?: number;
}

export function forceLayout(
  nodeIds: readonly string[],
  edges: readonly LayoutEdge[],
  options: LayoutOptions = {},
): Map<string, Point> {
  const width = options.width ?? 1200;
  const height = options.height ?? 800;
  const iterations = options.iterations ?? 250;
  const linkDistance = options.linkDistance ?? 130;
  const repulsion = options.repulsion ?? 22000;

  const n = nodeIds.length;
  const positions = new Map<string, Point>();
  if (n === 0) {
    return positions;
  }
  const index = new Map<string, number>();
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  nodeIds.forEach((id, i) => {
    index.set(id, i);
    const angle = (2 * Math.PI * i) / n;
    const radius = Math.min(width, height) * 0.35 + (i % 3) * 14;
    xs[i] = width / 2 + radius * Math.cos(angle);
    ys[i] = height / 2 + radius * Math.sin(angle);
  });

  const links: Array<[number, number]> = [];
  for (const edge of edges) {
    const a = index.get(edge.source);
    const b = index.get(edge.target);
    if (a !== undefined && b !== undefined && a !== b) {
      links.push([a, b]);
    }
  }

  const fx = new Float64Array(n);
  const fy = new Float64Array(n);
  for (let tick = 0; tick < iterations; tick++) {
    fx.fill(0);
    fy.fill(0);
    const cooling = 1 - tick / iterations;

    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        let dx = xs[i]! - xs[j]!;
        let dy = ys[i]! - ys[j]!;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1) {
          // deterministic nudge for coincident nodes
          dx = 0.5 + (i % 7) * 0.1;
          dy = 0.5 + (j % 5) * 0.1;
          d2 = dx * dx + dy * dy;
        }
        const force = repulsion / d2;
        const d = Math.sqrt(d2);
        fx[i]! += (dx / d) * force;
        fy[i]! += (dy / d) * force;
        fx[j]! -= (dx / d) * force;
        fy[j]! -= (dy / d) * force;
      }
    }

    for (const [a, b] of links) {
      const dx = xs[b]! - xs[a]!;
      const dy = ys[b]! - ys[a]!;
      const d = Math.max(1, Math.sqrt(dx * dx + dy * dy));
      const force = (d - linkDistance) * 0.08;
      fx[a]! += (dx / d) * force;
      fy[a]! += (dy / d) * force;
      fx[b]! -= (dx / d) * force;
      fy[b]! -= (dy / d) * force;
    }

    for (let i = 0; i < n; i++) {
      fx[i]! += (width / 2 - xs[i]!) * 0.015;
      fy[i]! += (height / 2 - ys[i]!) * 0.015;
      const step = 6 * cooling;
      const magnitude = Math.sqrt(fx[i]! * fx[i]! + fy[i]! * fy[i]!);
      const clamp = magnitude > step ? step / magnitude : 1;
      xs[i]! += fx[i]! * clamp;
      ys[i]! += fy[i]! * clamp;
    }
  }

  nodeIds.forEach((id, i) => {
    positions.set(id, { x: Math.round(xs[i]! * 100) / 100, y: Math.round(ys[i]! * 100) / 100 });
  });
  return positions;
}

import { GraphPayload } from "./types.js";

export interface SimNode {
  id: number;
  x: number;
  y: number;
  vx: number;
  vy: number;
  pinned: boolean;
}

export interface SimConfig {
  repulsionStrength: number;
  springRestLength: number;
  springStiffness: number;
  centeringStrength: number;
  velocityDecay: number;
}

export const DEFAULT_SIM_CONFIG: SimConfig = {
  repulsionStrength: 1000,
  springRestLength: 60,
  springStiffness: 0.08,
  centeringStrength: 0.05,
  velocityDecay: 0.4,
};

/**
 * Client-side force simulation driving the live layout. Physics mirror the
 * server's headless engine: inverse-square repulsion (distance clamped at 1),
 * Hooke springs per link, a centering pull, damped velocity integration.
 * Pinned nodes never move.
 */
export class ForceSimulation {
  nodes: SimNode[] = [];
  private links: Array<{ source: number; target: number }> = [];
  private index: Map<number, SimNode> = new Map();

  constructor(private config: SimConfig = DEFAULT_SIM_CONFIG) {}

  /**
   * Swap in a new payload. Nodes that survive the data change keep their
   * position and pin state so transitions stay spatially continuous.
   */
  setPayload(payload: GraphPayload, pinned: Map<number, { x: number; y: number }>): void {
    const side = 100 * Math.sqrt(Math.max(payload.nodes.length, 1));
    const previous = this.index;
    this.nodes = payload.nodes.map((n, i) => {
      const old = previous.get(n.id);
      if (old) return { ...old, pinned: pinned.has(n.id) };
      const fixed = pinned.get(n.id);
      // Deterministic golden-angle placement keeps first paint stable.
      const angle = i * 2.399963229728653;
      const r = (side / 2) * Math.sqrt((i + 0.5) / Math.max(payload.nodes.length, 1));
      return {
        id: n.id,
        x: fixed ? fixed.x : r * Math.cos(angle),
        y: fixed ? fixed.y : r * Math.sin(angle),
        vx: 0,
        vy: 0,
        pinned: pinned.has(n.id),
      };
    });
    this.index = new Map(this.nodes.map((n) => [n.id, n]));
    this.links = payload.links
      .filter((l) => l.source !== l.target)
      .map((l) => ({ source: l.source, target: l.target }));
  }

  get(id: number): SimNode | undefined {
    return this.index.get(id);
  }

  pin(id: number, x: number, y: number): void {
    const node = this.index.get(id);
    if (!node) return;
    node.pinned = true;
    node.x = x;
    node.y = y;
    node.vx = 0;
    node.vy = 0;
  }

  unpin(id: number): void {
    const node = this.index.get(id);
    if (node) node.pinned = false;
  }

  tick(): void {
    const { repulsionStrength, springRestLength, springStiffness, centeringStrength, velocityDecay } = this.config;
    const n = this.nodes.length;
    const fx = new Float64Array(n);
    const fy = new Float64Array(n);
    const slot = new Map<number, number>();
    this.nodes.forEach((node, i) => slot.set(node.id, i));

    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const a = this.nodes[i];
        const b = this.nodes[j];
        let dx = a.x - b.x;
        let dy = a.y - b.y;
        let d = Math.hypot(dx, dy);
        if (d < 1e-12) {
          // Deterministic fallback direction for coincident nodes.
          const angle = (i + 1) * 2.399963229728653;
          dx = Math.cos(angle);
          dy = Math.sin(angle);
          d = 1;
        }
        const clamped = Math.max(d, 1);
        const force = repulsionStrength / (clamped * clamped);
        fx[i] += (force * dx) / d;
        fy[i] += (force * dy) / d;
        fx[j] -= (force * dx) / d;
        fy[j] -= (force * dy) / d;
      }
    }

    for (const link of this.links) {
      const si = slot.get(link.source);
      const ti = slot.get(link.target);
      if (si === undefined || ti === undefined) continue;
      const a = this.nodes[si];
      const b = this.nodes[ti];
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const d = Math.hypot(dx, dy);
      if (d < 1e-12) continue;
      const pull = springStiffness * (d - springRestLength);
      fx[si] += (pull * dx) / d;
      fy[si] += (pull * dy) / d;
      fx[ti] -= (pull * dx) / d;
      fy[ti] -= (pull * dy) / d;
    }

    this.nodes.forEach((node, i) => {
      if (node.pinned) {
        node.vx = 0;
        node.vy = 0;
        return;
      }
      fx[i] -= centeringStrength * node.x;
      fy[i] -= centeringStrength * node.y;
      node.vx = (node.vx + fx[i]) * (1 - velocityDecay);
      node.vy = (node.vy + fy[i]) * (1 - velocityDecay);
      node.x += node.vx;
      node.y += node.vy;
    });
  }
}

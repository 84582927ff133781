/** Payload shapes produced by the graph service. */

export interface GraphNode {
  id: number;
  label: string;
  degree: number;
  radius: number;
}

export interface GraphLink {
  source: number;
  target: number;
  relation: string;
  abbrev: string;
  multiplicity: number;
  curvature: number;
}

export interface PayloadMeta {
  total_nodes: number;
  total_edges: number;
  min_degree_applied: number;
  max_degree: number;
}

export interface GraphPayload {
  nodes: GraphNode[];
  links: GraphLink[];
  meta: PayloadMeta;
  matches?: number[];
}

export interface ViewState {
  minDegree: number;
  query: string;
  depth: number;
  pinned: Map<number, { x: number; y: number }>;
  panX: number;
  panY: number;
  zoom: number;
  highlighted: Set<number>;
}

export const MIN_ZOOM = 0.1;
export const MAX_ZOOM = 10;
export const MAX_SEARCH_DEPTH = 5;

export function initialViewState(): ViewState {
  return {
    minDegree: 0,
    query: "",
    depth: 1,
    pinned: new Map(),
    panX: 0,
    panY: 0,
    zoom: 1,
    highlighted: new Set(),
  };
}

export function clampZoom(z: number): number {
  return Math.min(MAX_ZOOM, Math.max(MIN_ZOOM, z));
}

/** Quick structural check before rendering; throws on violation. */
export function validatePayload(payload: GraphPayload): void {
  const ids = new Set(payload.nodes.map((n) => n.id));
  for (const link of payload.links) {
    if (!ids.has(link.source) || !ids.has(link.target)) {
      throw new Error(`link ${link.source}->${link.target} references a missing node`);
    }
  }
}

import { GraphPayload } from "../src/types.js";

export const FULL_PAYLOAD: GraphPayload = {
  nodes: [
    { id: 0, label: "solar power", degree: 3, radius: 20 },
    { id: 1, label: "grid stability", degree: 3, radius: 20 },
    { id: 2, label: "energy policy", degree: 1, radius: 11.66 },
    { id: 3, label: "coal", degree: 1, radius: 11.66 },
  ],
  links: [
    { source: 0, target: 1, relation: "supports", abbrev: "SUP", multiplicity: 2, curvature: 0.15 },
    { source: 1, target: 0, relation: "depends on", abbrev: "", multiplicity: 1, curvature: -0.15 },
    { source: 2, target: 0, relation: "favor", abbrev: "", multiplicity: 1, curvature: 0 },
    { source: 3, target: 1, relation: "no", abbrev: "", multiplicity: 1, curvature: 0 },
  ],
  meta: { total_nodes: 4, total_edges: 4, min_degree_applied: 0, max_degree: 3 },
};

/** Depth-1 neighborhood of "solar power" with ids remapped by the service. */
export const SEARCH_PAYLOAD: GraphPayload = {
  nodes: [
    { id: 0, label: "solar power", degree: 3, radius: 20 },
    { id: 1, label: "grid stability", degree: 3, radius: 20 },
    { id: 2, label: "energy policy", degree: 1, radius: 11.66 },
  ],
  links: [
    { source: 0, target: 1, relation: "supports", abbrev: "SUP", multiplicity: 2, curvature: 0.15 },
    { source: 1, target: 0, relation: "depends on", abbrev: "", multiplicity: 1, curvature: -0.15 },
    { source: 2, target: 0, relation: "favor", abbrev: "", multiplicity: 1, curvature: 0 },
  ],
  meta: { total_nodes: 3, total_edges: 3, min_degree_applied: 0, max_degree: 3 },
  matches: [0],
};

export const FILTERED_PAYLOAD: GraphPayload = {
  nodes: [
    { id: 0, label: "solar power", degree: 3, radius: 20 },
    { id: 1, label: "grid stability", degree: 3, radius: 20 },
  ],
  links: [
    { source: 0, target: 1, relation: "supports", abbrev: "SUP", multiplicity: 2, curvature: 0.15 },
    { source: 1, target: 0, relation: "depends on", abbrev: "", multiplicity: 1, curvature: -0.15 },
  ],
  meta: { total_nodes: 2, total_edges: 2, min_degree_applied: 2, max_degree: 3 },
};

export interface FakeResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export function jsonResponse(body: unknown): FakeResponse {
  return { ok: true, status: 200, json: () => Promise.resolve(body) };
}

/**
 * Fake fetch that records every requested URL and lets tests either answer
 * immediately from a route table or hold individual responses for manual
 * release (to reorder in-flight requests).
 */
export class FakeFetch {
  urls: string[] = [];
  private routes: Array<{ match: (url: string) => boolean; body: unknown }> = [];
  private pending: Array<{ url: string; resolve: (r: FakeResponse) => void }> = [];
  manual = false;

  route(prefix: string, body: unknown): void {
    this.routes.push({ match: (url) => url.startsWith(prefix), body });
  }

  fetch = (url: string): Promise<FakeResponse> => {
    this.urls.push(url);
    if (this.manual) {
      return new Promise((resolve) => this.pending.push({ url, resolve }));
    }
    const hit = this.routes.find((r) => r.match(url));
    if (!hit) {
      return Promise.resolve({ ok: false, status: 404, json: () => Promise.resolve({}) });
    }
    return Promise.resolve(jsonResponse(hit.body));
  };

  /** Resolve the i-th still-pending request (insertion order) with a body. */
  release(index: number, body: unknown): void {
    const entry = this.pending[index];
    if (!entry) throw new Error(`no pending request at index ${index}`);
    entry.resolve(jsonResponse(body));
  }
}

export function buildDom(): void {
  document.body.innerHTML = `
    <div id="error-banner"></div>
    <input type="range" id="degree-slider" min="0" max="50" value="0" />
    <span id="degree-value">0</span>
    <input type="search" id="search-box" />
    <select id="depth-select"><option value="1" selected>1</option><option value="2">2</option></select>
    <button id="search-button"></button>
    <button id="clear-button"></button>
    <div id="legend"></div>
    <div id="viewport">
      <div id="empty-notice"></div>
      <svg id="canvas"></svg>
    </div>
  `;
}

export async function flushPromises(): Promise<void> {
  for (let i = 0; i < 5; i++) {
    await Promise.resolve();
  }
}

import { GraphPayload } from "./types.js";

type FetchLike = (url: string) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

/**
 * Service client with per-channel request sequencing: a response is only
 * delivered if no newer request on the same channel has been issued since,
 * so out-of-order responses never reach the renderer.
 */
export class ApiClient {
  private seq: Map<string, number> = new Map();

  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async request(channel: string, path: string): Promise<GraphPayload | null> {
    const ticket = (this.seq.get(channel) ?? 0) + 1;
    this.seq.set(channel, ticket);
    const resp = await this.fetchFn(this.baseUrl + path);
    if (this.seq.get(channel) !== ticket) {
      return null; // superseded while in flight
    }
    if (!resp.ok) {
      throw new Error(`request failed with status ${resp.status}`);
    }
    const body = (await resp.json()) as GraphPayload;
    if (this.seq.get(channel) !== ticket) {
      return null;
    }
    return body;
  }

  getGraph(minDegree: number): Promise<GraphPayload | null> {
    return this.request("graph", `/api/graph?min_degree=${minDegree}`);
  }

  search(query: string, depth: number): Promise<GraphPayload | null> {
    const q = encodeURIComponent(query);
    return this.request("graph", `/api/search?q=${q}&depth=${depth}`);
  }

  async getAbbreviations(): Promise<Record<string, string>> {
    const resp = await this.fetchFn(this.baseUrl + "/api/abbreviations");
    if (!resp.ok) {
      throw new Error(`request failed with status ${resp.status}`);
    }
    return (await resp.json()) as Record<string, string>;
  }
}

/** Trailing-edge debounce; used by the threshold slider (150 ms default). */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs = 150,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = undefined;
      fn(...args);
    }, waitMs);
  };
}

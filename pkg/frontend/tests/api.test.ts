import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { ApiClient, debounce } from "../src/api.js";
import { FULL_PAYLOAD, FakeFetch, SEARCH_PAYLOAD } from "./helpers.js";

describe("ApiClient", () => {
  it("requests the graph endpoint with the degree threshold", async () => {
    const fake = new FakeFetch();
    fake.route("/api/graph", FULL_PAYLOAD);
    const client = new ApiClient("", fake.fetch);
    const payload = await client.getGraph(3);
    expect(fake.urls).toEqual(["/api/graph?min_degree=3"]);
    expect(payload).toEqual(FULL_PAYLOAD);
  });

  it("url-encodes search queries", async () => {
    const fake = new FakeFetch();
    fake.route("/api/search", SEARCH_PAYLOAD);
    const client = new ApiClient("", fake.fetch);
    await client.search("solar power", 2);
    expect(fake.urls).toEqual(["/api/search?q=solar%20power&depth=2"]);
  });

  it("throws on a non-2xx response", async () => {
    const fake = new FakeFetch();
    const client = new ApiClient("", fake.fetch);
    await expect(client.getGraph(0)).rejects.toThrow("status 404");
  });

  it("discards an out-of-order response on the shared channel", async () => {
    const fake = new FakeFetch();
    fake.manual = true;
    const client = new ApiClient("", fake.fetch);

    const first = client.getGraph(0);
    const second = client.search("solar", 1);
    // The newer request resolves first, then the stale one arrives late.
    fake.release(1, SEARCH_PAYLOAD);
    fake.release(0, FULL_PAYLOAD);

    expect(await second).toEqual(SEARCH_PAYLOAD);
    expect(await first).toBeNull();
  });

  it("delivers responses normally when they arrive in order", async () => {
    const fake = new FakeFetch();
    fake.manual = true;
    const client = new ApiClient("", fake.fetch);

    const first = client.getGraph(0);
    fake.release(0, FULL_PAYLOAD);
    expect(await first).toEqual(FULL_PAYLOAD);

    const second = client.getGraph(1);
    fake.release(1, FULL_PAYLOAD);
    expect(await second).toEqual(FULL_PAYLOAD);
  });
});

describe("debounce", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("collapses a burst of calls into one trailing invocation", () => {
    const calls: number[] = [];
    const fn = debounce((k: number) => calls.push(k), 150);
    fn(1);
    vi.advanceTimersByTime(50);
    fn(2);
    vi.advanceTimersByTime(50);
    fn(3);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(150);
    expect(calls).toEqual([3]);
  });

  it("fires again for a later separate burst", () => {
    const calls: number[] = [];
    const fn = debounce((k: number) => calls.push(k), 150);
    fn(1);
    vi.advanceTimersByTime(150);
    fn(2);
    vi.advanceTimersByTime(150);
    expect(calls).toEqual([1, 2]);
  });
});

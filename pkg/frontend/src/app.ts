import { ApiClient, debounce } from "./api.js";
import { GraphRenderer, renderLegend } from "./renderer.js";
import { ForceSimulation } from "./simulation.js";
import {
  GraphPayload,
  MAX_SEARCH_DEPTH,
  ViewState,
  clampZoom,
  initialViewState,
} from "./types.js";

export interface AppElements {
  svg: SVGSVGElement;
  slider: HTMLInputElement;
  sliderValue: HTMLElement;
  searchBox: HTMLInputElement;
  depthSelect: HTMLSelectElement;
  searchButton: HTMLElement;
  clearButton: HTMLElement;
  errorBanner: HTMLElement;
  emptyNotice: HTMLElement;
  legend: HTMLElement;
}

/**
 * Controller wiring the service client, force simulation, and renderer.
 * All user input funnels through here; rendered state is a pure function of
 * the last accepted payload plus the view state.
 */
export class ExplorerApp {
  view: ViewState = initialViewState();
  sim = new ForceSimulation();
  renderer: GraphRenderer;
  private dragging: number | null = null;

  constructor(
    private api: ApiClient,
    private el: AppElements,
    debounceMs = 150,
  ) {
    this.renderer = new GraphRenderer(el.svg, el.emptyNotice);
    const debouncedThreshold = debounce((k: number) => {
      void this.onThresholdChange(k);
    }, debounceMs);
    el.slider.addEventListener("input", () => {
      const k = Number(el.slider.value);
      el.sliderValue.textContent = String(k);
      debouncedThreshold(k);
    });
    el.searchButton.addEventListener("click", () => {
      void this.onSearch(el.searchBox.value, Number(el.depthSelect.value));
    });
    el.searchBox.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") {
        void this.onSearch(el.searchBox.value, Number(el.depthSelect.value));
      }
    });
    el.clearButton.addEventListener("click", () => {
      void this.onThresholdChange(this.view.minDegree);
    });
    this.installViewportHandlers();
  }

  async start(): Promise<void> {
    await this.onThresholdChange(0);
    try {
      renderLegend(this.el.legend, await this.api.getAbbreviations());
    } catch {
      this.el.legend.textContent = "legend unavailable";
    }
  }

  private accept(payload: GraphPayload, highlighted: number[]): void {
    this.view.highlighted = new Set(highlighted);
    this.renderer.setPayload(payload);
    this.sim.setPayload(payload, this.view.pinned);
    this.renderer.draw(this.sim, this.view);
  }

  private showError(message: string): void {
    this.el.errorBanner.textContent = message;
    this.el.errorBanner.style.display = "block";
    setTimeout(() => {
      this.el.errorBanner.style.display = "none";
    }, 4000);
  }

  async onThresholdChange(minDegree: number): Promise<void> {
    this.view.minDegree = minDegree;
    try {
      const payload = await this.api.getGraph(minDegree);
      if (payload === null) return; // superseded
      this.accept(payload, []);
      const maxFromMeta = payload.meta.max_degree;
      if (Number(this.el.slider.max) !== maxFromMeta) {
        this.el.slider.max = String(maxFromMeta);
      }
    } catch (err) {
      this.showError(`could not load graph: ${(err as Error).message}`);
    }
  }

  async onSearch(query: string, depth: number): Promise<void> {
    if (!query.trim()) return;
    this.view.query = query;
    this.view.depth = Math.min(depth, MAX_SEARCH_DEPTH);
    try {
      const payload = await this.api.search(query, this.view.depth);
      if (payload === null) return; // superseded
      this.accept(payload, payload.matches ?? []);
    } catch (err) {
      this.showError(`search failed: ${(err as Error).message}`);
    }
  }

  onDrag(nodeId: number, x: number, y: number): void {
    this.sim.pin(nodeId, x, y);
    this.view.pinned.set(nodeId, { x, y });
    this.renderer.draw(this.sim, this.view);
  }

  onPinToggle(nodeId: number): void {
    if (this.view.pinned.has(nodeId)) {
      this.view.pinned.delete(nodeId);
      this.sim.unpin(nodeId);
    } else {
      const node = this.sim.get(nodeId);
      if (!node) return;
      this.sim.pin(nodeId, node.x, node.y);
      this.view.pinned.set(nodeId, { x: node.x, y: node.y });
    }
    this.renderer.draw(this.sim, this.view);
  }

  tick(): void {
    this.sim.tick();
    this.renderer.draw(this.sim, this.view);
  }

  private toScene(clientX: number, clientY: number): { x: number; y: number } {
    const rect = this.el.svg.getBoundingClientRect();
    return {
      x: (clientX - rect.left - this.view.panX) / this.view.zoom,
      y: (clientY - rect.top - this.view.panY) / this.view.zoom,
    };
  }

  private installViewportHandlers(): void {
    const svg = this.el.svg;
    let panning = false;
    let lastX = 0;
    let lastY = 0;

    svg.addEventListener("wheel", (event) => {
      event.preventDefault();
      const factor = event.deltaY < 0 ? 1.1 : 1 / 1.1;
      this.view.zoom = clampZoom(this.view.zoom * factor);
      this.renderer.draw(this.sim, this.view);
    });

    svg.addEventListener("mousedown", (event) => {
      const target = event.target as Element;
      const nodeGroup = target.closest?.("[data-node-id]");
      if (nodeGroup) {
        this.dragging = Number(nodeGroup.getAttribute("data-node-id"));
      } else {
        panning = true;
      }
      lastX = event.clientX;
      lastY = event.clientY;
    });

    svg.addEventListener("mousemove", (event) => {
      if (this.dragging !== null) {
        const p = this.toScene(event.clientX, event.clientY);
        this.onDrag(this.dragging, p.x, p.y);
      } else if (panning) {
        this.view.panX += event.clientX - lastX;
        this.view.panY += event.clientY - lastY;
        lastX = event.clientX;
        lastY = event.clientY;
        this.renderer.draw(this.sim, this.view);
      }
    });

    const endDrag = () => {
      this.dragging = null;
      panning = false;
    };
    svg.addEventListener("mouseup", endDrag);
    svg.addEventListener("mouseleave", endDrag);

    svg.addEventListener("dblclick", (event) => {
      const target = event.target as Element;
      const nodeGroup = target.closest?.("[data-node-id]");
      if (nodeGroup) {
        this.onPinToggle(Number(nodeGroup.getAttribute("data-node-id")));
      }
    });
  }
}

import { ApiClient } from "./api.js";
import { AppElements, ExplorerApp } from "./app.js";

function requireElement<T extends Element>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing required element #${id}`);
  return el as unknown as T;
}

export function bootstrap(): ExplorerApp {
  const elements: AppElements = {
    svg: requireElement<SVGSVGElement>("canvas"),
    slider: requireElement<HTMLInputElement>("degree-slider"),
    sliderValue: requireElement<HTMLElement>("degree-value"),
    searchBox: requireElement<HTMLInputElement>("search-box"),
    depthSelect: requireElement<HTMLSelectElement>("depth-select"),
    searchButton: requireElement<HTMLElement>("search-button"),
    clearButton: requireElement<HTMLElement>("clear-button"),
    errorBanner: requireElement<HTMLElement>("error-banner"),
    emptyNotice: requireElement<HTMLElement>("empty-notice"),
    legend: requireElement<HTMLElement>("legend"),
  };
  const app = new ExplorerApp(new ApiClient(), elements);
  void app.start();
  const loop = () => {
    app.tick();
    requestAnimationFrame(loop);
  };
  requestAnimationFrame(loop);
  return app;
}

// Only auto-start in a real page; tests import modules directly.
if (typeof document !== "undefined" && document.getElementById("canvas")) {
  bootstrap();
}

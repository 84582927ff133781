import { ForceSimulation } from "./simulation.js";
import { GraphPayload, ViewState, validatePayload } from "./types.js";

const SVG_NS = "http://www.w3.org/2000/svg";

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

/**
 * SVG scene renderer. Edges are quadratic Bezier arcs whose control point is
 * offset perpendicular to the chord by curvature x chord length (the
 * curvature values arrive precomputed in the payload, fanned per edge
 * group). Edge labels show the abbreviation, falling back to the full
 * relation label; the full form is always in the tooltip.
 */
export class GraphRenderer {
  private scene: SVGGElement;
  payload: GraphPayload | null = null;

  constructor(private svg: SVGSVGElement, private emptyNotice: HTMLElement) {
    this.scene = svgEl("g");
    this.scene.setAttribute("class", "scene");
    this.svg.appendChild(this.scene);
  }

  setPayload(payload: GraphPayload): void {
    validatePayload(payload);
    this.payload = payload;
    this.emptyNotice.style.display = payload.nodes.length === 0 ? "block" : "none";
    this.emptyNotice.textContent =
      payload.meta.min_degree_applied > 0
        ? "no nodes at this threshold"
        : "no data";
  }

  /** Redraw the scene from current simulation positions and view state. */
  draw(sim: ForceSimulation, view: ViewState): void {
    if (!this.payload) return;
    this.scene.setAttribute(
      "transform",
      `translate(${view.panX} ${view.panY}) scale(${view.zoom})`,
    );
    while (this.scene.firstChild) this.scene.removeChild(this.scene.firstChild);

    const nodeById = new Map(this.payload.nodes.map((n) => [n.id, n]));

    for (const link of this.payload.links) {
      const a = sim.get(link.source);
      const b = sim.get(link.target);
      if (!a || !b) continue;
      const dx = b.x - a.x;
      const dy = b.y - a.y;
      const len = Math.hypot(dx, dy);
      const mx = (a.x + b.x) / 2;
      const my = (a.y + b.y) / 2;
      const cx = len > 1e-9 ? mx + (-dy / len) * link.curvature * len : mx;
      const cy = len > 1e-9 ? my + (dx / len) * link.curvature * len : my;

      const path = svgEl("path");
      path.setAttribute("class", "edge");
      path.setAttribute("d", `M ${a.x} ${a.y} Q ${cx} ${cy} ${b.x} ${b.y}`);
      path.setAttribute("fill", "none");
      const title = svgEl("title");
      title.textContent = `${link.relation} (x${link.multiplicity})`;
      path.appendChild(title);
      this.scene.appendChild(path);

      const label = svgEl("text");
      label.setAttribute("class", "edge-label");
      label.setAttribute("x", String(0.25 * a.x + 0.5 * cx + 0.25 * b.x));
      label.setAttribute("y", String(0.25 * a.y + 0.5 * cy + 0.25 * b.y));
      label.textContent = link.abbrev || link.relation;
      const labelTitle = svgEl("title");
      labelTitle.textContent = link.relation;
      label.appendChild(labelTitle);
      this.scene.appendChild(label);
    }

    for (const simNode of sim.nodes) {
      const data = nodeById.get(simNode.id);
      if (!data) continue;
      const group = svgEl("g");
      group.setAttribute("class", "node");
      group.setAttribute("data-node-id", String(simNode.id));

      if (view.highlighted.has(simNode.id)) {
        const halo = svgEl("circle");
        halo.setAttribute("class", "halo");
        halo.setAttribute("cx", String(simNode.x));
        halo.setAttribute("cy", String(simNode.y));
        halo.setAttribute("r", String(data.radius + 6));
        group.appendChild(halo);
      }

      const circle = svgEl("circle");
      circle.setAttribute("class", simNode.pinned ? "dot pinned" : "dot");
      circle.setAttribute("cx", String(simNode.x));
      circle.setAttribute("cy", String(simNode.y));
      circle.setAttribute("r", String(data.radius));
      const title = svgEl("title");
      title.textContent = `${data.label} (degree ${data.degree})`;
      circle.appendChild(title);
      group.appendChild(circle);

      const text = svgEl("text");
      text.setAttribute("class", "node-label");
      text.setAttribute("x", String(simNode.x));
      text.setAttribute("y", String(simNode.y - data.radius - 4));
      text.textContent = data.label;
      group.appendChild(text);

      this.scene.appendChild(group);
    }
  }
}

/** Legend panel: abbreviation -> full label, from /api/abbreviations. */
export function renderLegend(container: HTMLElement, entries: Record<string, string>): void {
  container.innerHTML = "";
  const pairs = Object.entries(entries).sort((a, b) => a[1].localeCompare(b[1]));
  for (const [label, alias] of pairs) {
    const row = document.createElement("div");
    row.className = "legend-row";
    row.textContent = `${alias} = ${label}`;
    container.appendChild(row);
  }
  if (pairs.length === 0) {
    container.textContent = "no abbreviations loaded";
  }
}

import { ANIMATION_MS, ConnectionLine, Marker, ScatterScene, ChartPoint } from "./scene.js";
import { ViewTransform } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const MARKER_SIZE = 6;

interface Projected {
  x: number;
  y: number;
}

/** Fit data extents into the viewport, then apply the pan/zoom transform. */
function projector(
  markers: Marker[],
  width: number,
  height: number,
  view: ViewTransform,
): (x: number, y: number) => Projected {
  const xs = markers.map((m) => m.x);
  const ys = markers.map((m) => m.y);
  const xLo = Math.min(...xs, 0);
  const xHi = Math.max(...xs, 0);
  const yLo = Math.min(...ys, 0);
  const yHi = Math.max(...ys, 0);
  const pad = 30;
  const span = Math.max(xHi - xLo, yHi - yLo) || 1;
  const scale = (Math.min(width, height) - 2 * pad) / span;
  const cx = (xLo + xHi) / 2;
  const cy = (yLo + yHi) / 2;
  return (x, y) => ({
    x: (width / 2 + (x - cx) * scale) * view.k + view.x,
    y: (height / 2 - (y - cy) * scale) * view.k + view.y,
  });
}

interface Tracked {
  el: SVGElement;
  x: number;
  y: number;
}

export class ScatterRenderer {
  private markers = new Map<string, Tracked>();
  private lineLayer: SVGGElement;
  private markerLayer: SVGGElement;
  private animation: number | null = null;

  constructor(
    private svg: SVGSVGElement,
    private readout: HTMLElement,
    private onHover: (label: string | null) => void,
  ) {
    this.lineLayer = document.createElementNS(SVG_NS, "g");
    this.markerLayer = document.createElementNS(SVG_NS, "g");
    svg.appendChild(this.lineLayer);
    svg.appendChild(this.markerLayer);
  }

  render(scene: ScatterScene, view: ViewTransform): void {
    const width = this.svg.clientWidth || 800;
    const height = this.svg.clientHeight || 600;
    const project = projector(scene.markers, width, height, view);
    this.readout.textContent = scene.stressText;
    this.renderLines(scene.lines, project);
    this.renderMarkers(scene.markers, project);
  }

  private renderLines(
    lines: ConnectionLine[],
    project: (x: number, y: number) => Projected,
  ): void {
    this.lineLayer.replaceChildren();
    for (const line of lines) {
      const el = document.createElementNS(SVG_NS, "line");
      const a = project(line.x1, line.y1);
      const b = project(line.x2, line.y2);
      el.setAttribute("x1", String(a.x));
      el.setAttribute("y1", String(a.y));
      el.setAttribute("x2", String(b.x));
      el.setAttribute("y2", String(b.y));
      el.setAttribute("stroke", "#999");
      el.setAttribute("stroke-width", "1");
      this.lineLayer.appendChild(el);
    }
  }

  private renderMarkers(
    markers: Marker[],
    project: (x: number, y: number) => Projected,
  ): void {
    const seen = new Set<string>();
    const targets: { tracked: Tracked; to: Projected }[] = [];
    for (const m of markers) {
      seen.add(m.label);
      const to = project(m.x, m.y);
      let tracked = this.markers.get(m.label);
      if (tracked === undefined) {
        const el =
          m.shape === "circle"
            ? document.createElementNS(SVG_NS, "circle")
            : document.createElementNS(SVG_NS, "rect");
        el.addEventListener("mouseenter", () => this.onHover(m.label));
        el.addEventListener("mouseleave", () => this.onHover(null));
        const title = document.createElementNS(SVG_NS, "title");
        title.textContent = m.label;
        el.appendChild(title);
        this.markerLayer.appendChild(el);
        tracked = { el, x: to.x, y: to.y };
        this.markers.set(m.label, tracked);
      }
      tracked.el.setAttribute("fill", m.color);
      targets.push({ tracked, to });
    }
    for (const [label, tracked] of this.markers) {
      if (!seen.has(label)) {
        tracked.el.remove();
        this.markers.delete(label);
      }
    }
    this.animate(targets);
  }

  private animate(targets: { tracked: Tracked; to: Projected }[]): void {
    if (this.animation !== null) cancelAnimationFrame(this.animation);
    const start = performance.now();
    const from = targets.map(({ tracked }) => ({ x: tracked.x, y: tracked.y }));
    const step = (now: number) => {
      const t = Math.min((now - start) / ANIMATION_MS, 1);
      const ease = t * (2 - t);
      targets.forEach(({ tracked, to }, i) => {
        tracked.x = from[i].x + (to.x - from[i].x) * ease;
        tracked.y = from[i].y + (to.y - from[i].y) * ease;
        place(tracked.el, tracked.x, tracked.y);
      });
      this.animation = t < 1 ? requestAnimationFrame(step) : null;
    };
    this.animation = requestAnimationFrame(step);
  }
}

function place(el: SVGElement, x: number, y: number): void {
  if (el.tagName === "circle") {
    el.setAttribute("cx", String(x));
    el.setAttribute("cy", String(y));
    el.setAttribute("r", String(MARKER_SIZE));
  } else {
    el.setAttribute("x", String(x - MARKER_SIZE));
    el.setAttribute("y", String(y - MARKER_SIZE));
    el.setAttribute("width", String(2 * MARKER_SIZE));
    el.setAttribute("height", String(2 * MARKER_SIZE));
  }
}

export function renderSweepChart(svg: SVGSVGElement, points: ChartPoint[]): void {
  svg.replaceChildren();
  const width = svg.clientWidth || 300;
  const height = svg.clientHeight || 150;
  const pad = 14;
  const px = (p: ChartPoint) => pad + p.x * (width - 2 * pad);
  const py = (p: ChartPoint) => pad + (1 - p.y) * (height - 2 * pad);
  if (points.length > 1) {
    const path = document.createElementNS(SVG_NS, "path");
    path.setAttribute(
      "d",
      points.map((p, i) => `${i === 0 ? "M" : "L"}${px(p)},${py(p)}`).join(" "),
    );
    path.setAttribute("fill", "none");
    path.setAttribute("stroke", "#4878a8");
    svg.appendChild(path);
  }
  for (const p of points) {
    const dot = document.createElementNS(SVG_NS, "circle");
    dot.setAttribute("cx", String(px(p)));
    dot.setAttribute("cy", String(py(p)));
    dot.setAttribute("r", "3");
    dot.setAttribute("fill", "#4878a8");
    const title = document.createElementNS(SVG_NS, "title");
    title.textContent = `d=${p.dim}: ${p.stress.toFixed(4)}`;
    dot.appendChild(title);
    svg.appendChild(dot);
  }
}

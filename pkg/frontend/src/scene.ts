import { DatasetDocument, EmbedResponse, ObjectCoordinate } from "./types.js";

/** Marker transition duration, fixed so object identity is trackable. */
export const ANIMATION_MS = 300;

const ROW_COLOR = "#4878a8";
const COLUMN_COLOR = "#b8544f";

export interface Marker {
  label: string;
  shape: "circle" | "square"; // circle = ROW, square = COLUMN
  x: number;
  y: number;
  color: string;
}

export interface ConnectionLine {
  from: string;
  to: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface ScatterScene {
  markers: Marker[];
  lines: ConnectionLine[];
  stressText: string;
}

function categoryColor(category: string | null, fallback: string): string {
  if (category === null) return fallback;
  let h = 0;
  for (let i = 0; i < category.length; i++) {
    h = (h * 31 + category.charCodeAt(i)) >>> 0;
  }
  return `hsl(${h % 360}, 55%, 45%)`;
}

function planar(o: ObjectCoordinate): [number, number] {
  // one-dimensional embeddings render on the x axis
  return [o.coords[0] ?? 0, o.coords[1] ?? 0];
}

/**
 * Pure scene construction: one marker per embedded object, plus connection
 * lines from the hovered object to everything it relates to (cell = 1).
 */
export function buildScatter(
  response: EmbedResponse | null,
  dataset: DatasetDocument | null,
  hovered: string | null,
): ScatterScene {
  if (response === null) return { markers: [], lines: [], stressText: "" };
  const markers: Marker[] = response.objects.map((o) => {
    const [x, y] = planar(o);
    const fallback = o.class === "ROW" ? ROW_COLOR : COLUMN_COLOR;
    return {
      label: o.label,
      shape: o.class === "ROW" ? "circle" : "square",
      x,
      y,
      color: categoryColor(o.category, fallback),
    };
  });
  return {
    markers,
    lines: hovered === null ? [] : connectionLines(response, dataset, hovered),
    stressText: `stress ${response.stress.toFixed(4)} in ${response.iterations} iterations`,
  };
}

function connectionLines(
  response: EmbedResponse,
  dataset: DatasetDocument | null,
  hovered: string | null,
): ConnectionLine[] {
  if (dataset === null || hovered === null) return [];
  const position = new Map(response.objects.map((o) => [o.label, planar(o)]));
  const from = position.get(hovered);
  if (from === undefined) return [];
  const i = dataset.row_labels.indexOf(hovered);
  const j = dataset.col_labels.indexOf(hovered);
  const partners: string[] = [];
  if (i >= 0) {
    dataset.cells[i].forEach((v, c) => {
      if (v === 1) partners.push(dataset.col_labels[c]);
    });
  } else if (j >= 0) {
    dataset.cells.forEach((row, r) => {
      if (row[j] === 1) partners.push(dataset.row_labels[r]);
    });
  }
  const lines: ConnectionLine[] = [];
  for (const label of partners) {
    const to = position.get(label);
    if (to === undefined) continue;
    lines.push({ from: hovered, to: label, x1: from[0], y1: from[1], x2: to[0], y2: to[1] });
  }
  return lines;
}

export interface ChartPoint {
  dim: number;
  stress: number;
  x: number; // chart coordinates in [0, 1]
  y: number;
}

/** Line chart of stress against embedding dimension. */
export function buildSweepChart(dims: number[], stresses: number[]): ChartPoint[] {
  if (dims.length !== stresses.length) {
    throw new Error("dims and stresses must have equal length");
  }
  if (dims.length === 0) return [];
  const dLo = Math.min(...dims);
  const dSpan = Math.max(...dims) - dLo || 1;
  const sLo = Math.min(...stresses);
  const sSpan = Math.max(...stresses) - sLo || 1;
  return dims.map((d, i) => ({
    dim: d,
    stress: stresses[i],
    x: (d - dLo) / dSpan,
    y: (stresses[i] - sLo) / sSpan,
  }));
}

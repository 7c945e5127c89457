import { describe, expect, it } from "vitest";

import { ANIMATION_MS, buildScatter, buildSweepChart } from "./scene.js";
import { DatasetDocument, EmbedResponse, ObjectCoordinate } from "./types.js";

function makeResponse(m: number, n: number, dim = 2): EmbedResponse {
  const objects: ObjectCoordinate[] = [];
  for (let i = 0; i < m; i++) {
    objects.push({
      label: `r${i}`,
      class: "ROW",
      category: null,
      coords: Array.from({ length: dim }, (_, d) => i + d * 0.1),
    });
  }
  for (let j = 0; j < n; j++) {
    objects.push({
      label: `c${j}`,
      class: "COLUMN",
      category: null,
      coords: Array.from({ length: dim }, (_, d) => -j - d * 0.1),
    });
  }
  return {
    name: "t",
    method: "raw-hamming",
    params: {},
    stress: 30.7185,
    iterations: 42,
    converged: true,
    disconnected: false,
    objects,
    stress_trace: [50, 30.7185],
    elapsed_ms: 1,
  };
}

function makeDataset(m: number, n: number, ones: [number, number][]): DatasetDocument {
  const cells: (number | null)[][] = Array.from({ length: m }, () =>
    Array.from({ length: n }, () => 0),
  );
  for (const [i, j] of ones) cells[i][j] = 1;
  return {
    name: "t",
    row_labels: Array.from({ length: m }, (_, i) => `r${i}`),
    col_labels: Array.from({ length: n }, (_, j) => `c${j}`),
    cells,
  };
}

describe("buildScatter", () => {
  it("renders one marker per object, 32 for an 18x14 dataset", () => {
    const scene = buildScatter(makeResponse(18, 14), null, null);
    expect(scene.markers).toHaveLength(32);
    expect(scene.markers.filter((m) => m.shape === "circle")).toHaveLength(18);
    expect(scene.markers.filter((m) => m.shape === "square")).toHaveLength(14);
  });

  it("shows the response stress and iteration count", () => {
    const scene = buildScatter(makeResponse(2, 2), null, null);
    expect(scene.stressText).toContain("30.7185");
    expect(scene.stressText).toContain("42");
  });

  it("draws k lines when hovering a row object with k ones", () => {
    const dataset = makeDataset(3, 5, [
      [0, 0],
      [0, 2],
      [0, 4],
      [1, 1],
    ]);
    const scene = buildScatter(makeResponse(3, 5), dataset, "r0");
    expect(scene.lines).toHaveLength(3);
    expect(scene.lines.map((l) => l.to).sort()).toEqual(["c0", "c2", "c4"]);
  });

  it("draws lines from a hovered column to its attending rows", () => {
    const dataset = makeDataset(3, 5, [
      [0, 1],
      [2, 1],
    ]);
    const scene = buildScatter(makeResponse(3, 5), dataset, "c1");
    expect(scene.lines.map((l) => l.to).sort()).toEqual(["r0", "r2"]);
  });

  it("draws no lines with no hover or no dataset document", () => {
    const dataset = makeDataset(2, 2, [[0, 0]]);
    expect(buildScatter(makeResponse(2, 2), dataset, null).lines).toHaveLength(0);
    expect(buildScatter(makeResponse(2, 2), null, "r0").lines).toHaveLength(0);
  });

  it("renders an empty scene for a missing response", () => {
    const scene = buildScatter(null, null, null);
    expect(scene.markers).toHaveLength(0);
    expect(scene.stressText).toBe("");
  });

  it("places one-dimensional embeddings on the x axis", () => {
    const scene = buildScatter(makeResponse(2, 2, 1), null, null);
    expect(scene.markers.every((m) => m.y === 0)).toBe(true);
  });
});

describe("buildSweepChart", () => {
  it("produces one chart point per dimension", () => {
    const points = buildSweepChart([1, 2, 3, 4, 5, 6], [50, 31, 29.4, 29.1, 29.1, 29.1]);
    expect(points).toHaveLength(6);
    expect(points[0]).toMatchObject({ dim: 1, stress: 50, x: 0 });
    expect(points[5].x).toBe(1);
  });

  it("maps lower stress to lower chart y", () => {
    const points = buildSweepChart([1, 2], [10, 5]);
    expect(points[1].y).toBeLessThan(points[0].y);
  });

  it("rejects mismatched inputs", () => {
    expect(() => buildSweepChart([1, 2], [1])).toThrow();
  });
});

it("marker transitions take a fixed 300 ms", () => {
  expect(ANIMATION_MS).toBe(300);
});

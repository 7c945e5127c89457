import { embed, getDataset, listDatasets, sweepStress } from "./api.js";
import { buildScatter, buildSweepChart } from "./scene.js";
import { ScatterRenderer, renderSweepChart } from "./render.js";
import {
  ExplorerState,
  applyError,
  applyResponse,
  beginRequest,
  initialState,
  setParams,
} from "./state.js";
import { DatasetDocument, EmbedParams, EmbedRequest, METHODS } from "./types.js";

const DEBOUNCE_MS = 250;

let state: ExplorerState = initialState();
let dataset: DatasetDocument | null = null;
let hovered: string | null = null;
let debounce: number | undefined;

const $ = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;

function redraw(): void {
  renderer.render(buildScatter(state.lastResponse, dataset, hovered), state.view);
  $("error").textContent = state.errorMessage ?? "";
}

const renderer = new ScatterRenderer(
  $("scatter") as unknown as SVGSVGElement,
  $("readout"),
  (label) => {
    hovered = label;
    redraw();
  },
);

function currentRequest(): EmbedRequest | null {
  if (state.datasetId === null) return null;
  return { dataset_id: state.datasetId, ...state.params };
}

async function reembed(): Promise<void> {
  const req = currentRequest();
  if (req === null) return;
  const issued = beginRequest(state);
  state = issued.state;
  try {
    const response = await embed(req);
    state = applyResponse(state, issued.seq, response);
  } catch (e) {
    state = applyError(state, issued.seq, e instanceof Error ? e.message : String(e));
  }
  redraw();
  void refreshSweep(req);
}

async function refreshSweep(req: EmbedRequest): Promise<void> {
  try {
    const sweep = await sweepStress({ ...req, dims: [1, 2, 3, 4, 5, 6] });
    renderSweepChart(
      $("sweep") as unknown as SVGSVGElement,
      buildSweepChart(sweep.dims, sweep.stresses),
    );
  } catch {
    // sweep chart is advisory; keep the last one on failure
  }
}

/** Explicit, debounced re-embed: one request per settled parameter change. */
function onParamChange(patch: Partial<EmbedParams>): void {
  const result = setParams(state, patch);
  state = result.state;
  $("error").textContent = state.errorMessage ?? "";
  if (!result.shouldRequest) return;
  window.clearTimeout(debounce);
  debounce = window.setTimeout(() => void reembed(), DEBOUNCE_MS);
}

function numberOrNull(value: string): number | null {
  return value.trim() === "" ? null : Number(value);
}

function bindControls(): void {
  const method = $<HTMLSelectElement>("method");
  for (const name of METHODS) {
    const opt = document.createElement("option");
    opt.value = name;
    opt.textContent = name;
    method.appendChild(opt);
  }
  method.addEventListener("change", () => onParamChange({ method: method.value }));

  const numeric: [string, (v: string) => Partial<EmbedParams>][] = [
    ["alpha-x", (v) => ({ alpha_x: numberOrNull(v) })],
    ["alpha-y", (v) => ({ alpha_y: numberOrNull(v) })],
    ["alpha-xy", (v) => ({ alpha_xy: numberOrNull(v) })],
    ["beta", (v) => ({ beta: numberOrNull(v) })],
    ["dim", (v) => ({ dim: Number(v) })],
    ["max-iter", (v) => ({ max_iter: Number(v) })],
    ["rel-tol", (v) => ({ rel_tol: Number(v) })],
    ["restarts", (v) => ({ restarts: Number(v) })],
  ];
  for (const [id, patch] of numeric) {
    const input = $<HTMLInputElement>(id);
    input.addEventListener("change", () => onParamChange(patch(input.value)));
  }
  $<HTMLButtonElement>("run").addEventListener("click", () => void reembed());
  bindPanZoom();
}

function bindPanZoom(): void {
  const svg = $("scatter");
  let dragging: { x: number; y: number } | null = null;
  svg.addEventListener("wheel", (e) => {
    e.preventDefault();
    const factor = e.deltaY < 0 ? 1.1 : 1 / 1.1;
    state.view.k *= factor;
    redraw();
  });
  svg.addEventListener("mousedown", (e) => {
    dragging = { x: e.clientX - state.view.x, y: e.clientY - state.view.y };
  });
  window.addEventListener("mousemove", (e) => {
    if (dragging === null) return;
    state.view.x = e.clientX - dragging.x;
    state.view.y = e.clientY - dragging.y;
    redraw();
  });
  window.addEventListener("mouseup", () => {
    dragging = null;
  });
}

async function selectDataset(id: string): Promise<void> {
  state = { ...state, datasetId: id };
  dataset = await getDataset(id);
  await reembed();
}

async function init(): Promise<void> {
  bindControls();
  const select = $<HTMLSelectElement>("dataset");
  const infos = await listDatasets();
  for (const info of infos) {
    const opt = document.createElement("option");
    opt.value = info.id;
    opt.textContent = `${info.name} (${info.m}×${info.n})`;
    select.appendChild(opt);
  }
  select.addEventListener("change", () => void selectDataset(select.value));
  if (infos.length > 0) {
    select.value = infos[0].id;
    await selectDataset(infos[0].id);
  }
}

void init();

import {
  DatasetDocument,
  DatasetInfo,
  EmbedRequest,
  EmbedResponse,
  SweepRequest,
  SweepResponse,
} from "./types.js";

const BASE = "";

async function getJson<T>(path: string): Promise<T> {
  const r = await fetch(`${BASE}${path}`);
  if (!r.ok) throw new Error(`${r.status}: ${await r.text()}`);
  return (await r.json()) as T;
}

async function postJson<T>(path: string, body: unknown): Promise<T> {
  const r = await fetch(`${BASE}${path}`, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(body),
  });
  if (!r.ok) throw new Error(`${r.status}: ${await r.text()}`);
  return (await r.json()) as T;
}

export function listDatasets(): Promise<DatasetInfo[]> {
  return getJson("/api/datasets");
}

export function getDataset(id: string): Promise<DatasetDocument> {
  return getJson(`/api/datasets/${encodeURIComponent(id)}`);
}

export function embed(req: EmbedRequest): Promise<EmbedResponse> {
  return postJson("/api/embed", req);
}

export function sweepStress(req: SweepRequest): Promise<SweepResponse> {
  return postJson("/api/sweep", req);
}

/** Wire types mirroring the HTTP service schemas. */

export type ObjectClass = "ROW" | "COLUMN";

export interface DatasetInfo {
  id: string;
  name: string;
  m: number;
  n: number;
}

/** Full dataset document as returned by GET /api/datasets/{id}. */
export interface DatasetDocument {
  name: string;
  row_labels: string[];
  col_labels: string[];
  cells: (number | null)[][];
}

export interface ObjectCoordinate {
  label: string;
  class: ObjectClass;
  category: string | null;
  coords: number[];
}

export interface EmbedParams {
  method: string;
  alpha_x: number | null;
  alpha_y: number | null;
  alpha_xy: number | null;
  beta: number | null;
  dim: number;
  max_iter: number;
  rel_tol: number;
  restarts: number;
}

export interface EmbedRequest extends EmbedParams {
  dataset_id: string;
}

export interface EmbedResponse {
  name: string;
  method: string;
  params: Record<string, number>;
  stress: number;
  iterations: number;
  converged: boolean;
  disconnected: boolean;
  objects: ObjectCoordinate[];
  stress_trace: number[];
  elapsed_ms: number;
}

export interface SweepRequest extends EmbedRequest {
  dims: number[];
}

export interface SweepResponse {
  name: string;
  method: string;
  dims: number[];
  stresses: number[];
  normalized_stresses: number[];
  elapsed_ms: number;
}

export const METHODS = [
  "bernoulli-uniform",
  "bernoulli-jeffreys",
  "bernoulli-mle",
  "membership",
  "raw-hamming",
] as const;

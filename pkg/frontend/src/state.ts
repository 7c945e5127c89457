import { EmbedParams, EmbedResponse } from "./types.js";
import { defaultParams, validateParams } from "./validation.js";

export interface ViewTransform {
  x: number; // pan offset in screen units
  y: number;
  k: number; // zoom factor
}

export interface ExplorerState {
  datasetId: string | null;
  params: EmbedParams;
  lastResponse: EmbedResponse | null;
  selection: Set<string>;
  view: ViewTransform;
  issuedSeq: number; // last request number handed out
  appliedSeq: number; // request number of lastResponse
  errorMessage: string | null;
}

export function initialState(): ExplorerState {
  return {
    datasetId: null,
    params: defaultParams(),
    lastResponse: null,
    selection: new Set(),
    view: { x: 0, y: 0, k: 1 },
    issuedSeq: 0,
    appliedSeq: 0,
    errorMessage: null,
  };
}

/**
 * Validate and apply a parameter change. Returns the updated state and
 * whether a re-embed request should be issued; invalid parameters are kept
 * in the panel (so the user can fix them) but block the request.
 */
export function setParams(
  state: ExplorerState,
  patch: Partial<EmbedParams>,
): { state: ExplorerState; shouldRequest: boolean; errors: string[] } {
  const params = { ...state.params, ...patch };
  const errors = validateParams(params);
  const next = {
    ...state,
    params,
    errorMessage: errors.length ? errors.join("; ") : null,
  };
  return { state: next, shouldRequest: errors.length === 0, errors };
}

/** Hand out the next request sequence number. */
export function beginRequest(state: ExplorerState): {
  state: ExplorerState;
  seq: number;
} {
  const seq = state.issuedSeq + 1;
  return { state: { ...state, issuedSeq: seq }, seq };
}

/**
 * Apply a response for request `seq`. Responses superseded by a newer
 * request are discarded; the state keeps the last good response.
 */
export function applyResponse(
  state: ExplorerState,
  seq: number,
  response: EmbedResponse,
): ExplorerState {
  if (seq < state.issuedSeq || seq <= state.appliedSeq) return state;
  return { ...state, lastResponse: response, appliedSeq: seq, errorMessage: null };
}

/** Record a failed request; the last good response stays on screen. */
export function applyError(
  state: ExplorerState,
  seq: number,
  message: string,
): ExplorerState {
  if (seq < state.issuedSeq) return state;
  return { ...state, errorMessage: message };
}

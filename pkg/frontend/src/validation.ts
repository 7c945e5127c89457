import { EmbedParams, METHODS } from "./types.js";

/**
 * Client-side parameter validation mirroring the server rules, so the UI
 * never issues a request the server would reject as malformed.
 */
export function validateParams(p: EmbedParams): string[] {
  const errors: string[] = [];
  if (!(METHODS as readonly string[]).includes(p.method)) {
    errors.push(`unknown method: ${p.method}`);
  }
  for (const key of ["alpha_x", "alpha_y", "alpha_xy"] as const) {
    const v = p[key];
    if (v !== null && !(Number.isFinite(v) && v > 0)) {
      errors.push(`${key} must be a positive number`);
    }
  }
  if (p.beta !== null && !(Number.isFinite(p.beta) && p.beta >= 0)) {
    errors.push("beta must be a nonnegative number");
  }
  if (!Number.isInteger(p.dim) || p.dim < 1) {
    errors.push("dim must be an integer >= 1");
  }
  if (!Number.isInteger(p.max_iter) || p.max_iter < 1) {
    errors.push("max_iter must be an integer >= 1");
  }
  if (!(Number.isFinite(p.rel_tol) && p.rel_tol > 0)) {
    errors.push("rel_tol must be > 0");
  }
  if (!Number.isInteger(p.restarts) || p.restarts < 0) {
    errors.push("restarts must be an integer >= 0");
  }
  return errors;
}

export function defaultParams(): EmbedParams {
  return {
    method: "bernoulli-uniform",
    alpha_x: null, // null = server picks the method default
    alpha_y: null,
    alpha_xy: null,
    beta: null,
    dim: 2,
    max_iter: 500,
    rel_tol: 1e-6,
    restarts: 0,
  };
}

// Network layer: per-view latest-wins sequencing plus a trailing-edge
// debouncer. Each view keeps one logical in-flight slot; a newer issue
// for the same view supersedes older ones, whose responses (or errors)
// are dropped when they eventually settle.

import type { ServiceErrorBody } from "./types.js";

export interface FetchResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string) => Promise<FetchResponse>;

export class ServiceError extends Error {
  readonly status: number;
  readonly code: string;

  constructor(status: number, code: string, message: string) {
    super(message);
    this.name = "ServiceError";
    this.status = status;
    this.code = code;
  }
}

function parseErrorBody(status: number, body: unknown): ServiceError {
  const be = (body as ServiceErrorBody | null)?.error;
  if (be && typeof be.code === "string" && typeof be.message === "string") {
    return new ServiceError(status, be.code, be.message);
  }
  return new ServiceError(status, "http_error", `service returned status ${status}`);
}

export class LatestWins {
  private readonly versions = new Map<string, number>();

  constructor(private readonly fetchImpl: FetchLike) {}

  // Resolves with the payload, or null when a newer request for the
  // same view was issued in the meantime (the stale result is
  // discarded without touching any view). Service errors throw
  // ServiceError unless they are stale, in which case they are
  // swallowed and null is returned.
  async issue<T>(view: string, url: string): Promise<T | null> {
    const version = (this.versions.get(view) ?? 0) + 1;
    this.versions.set(view, version);
    let response: FetchResponse;
    try {
      response = await this.fetchImpl(url);
    } catch (err) {
      if (this.versions.get(view) !== version) {
        return null;
      }
      throw err;
    }
    const stale = this.versions.get(view) !== version;
    if (!response.ok) {
      if (stale) {
        return null;
      }
      let body: unknown = null;
      try {
        body = await response.json();
      } catch {
        body = null;
      }
      throw parseErrorBody(response.status, body);
    }
    const payload = (await response.json()) as T;
    return this.versions.get(view) === version ? payload : null;
  }
}

// Trailing-edge debounce: the wrapped function runs once per quiet
// window, with the latest arguments.
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | null = null;
  return (...args: A) => {
    if (timer !== null) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => {
      timer = null;
      fn(...args);
    }, ms);
  };
}

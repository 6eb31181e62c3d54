// Thin fetch wrappers around the search service's JSON API.

import type { RatingReceipt, SearchOutcome } from "./types.js";

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

type FetchLike = typeof fetch;

async function postJson<T>(
  fetchImpl: FetchLike,
  path: string,
  body: unknown,
  signal?: AbortSignal,
): Promise<T> {
  let response: Response;
  try {
    response = await fetchImpl(path, {
      method: "POST",
      headers: { "Content-Type": "application/json; charset=utf-8" },
      body: JSON.stringify(body),
      signal,
    });
  } catch (err) {
    if (err instanceof DOMException && err.name === "AbortError") {
      throw err;
    }
    throw new ApiError(0, "Could not reach the search service.");
  }
  if (!response.ok) {
    let detail = response.statusText || "request failed";
    try {
      const payload = await response.json();
      if (typeof payload.detail === "string") {
        detail = payload.detail;
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export function search(
  query: string,
  options: { k?: number; signal?: AbortSignal; fetchImpl?: FetchLike } = {},
): Promise<SearchOutcome> {
  const body: Record<string, unknown> = { query };
  if (options.k !== undefined) {
    body.k = options.k;
  }
  return postJson<SearchOutcome>(
    options.fetchImpl ?? fetch,
    "/api/search",
    body,
    options.signal,
  );
}

export function submitRating(
  queryId: string,
  rating: number,
  note?: string,
  fetchImpl: FetchLike = fetch,
): Promise<RatingReceipt> {
  const body: Record<string, unknown> = { query_id: queryId, rating };
  if (note !== undefined && note !== "") {
    body.note = note;
  }
  return postJson<RatingReceipt>(fetchImpl, "/api/ratings", body);
}

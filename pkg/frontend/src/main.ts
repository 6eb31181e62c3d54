// DOM wiring for the single-page search interface.

import { ApiError, search, submitRating } from "./api.js";
import { renderErrorBanner, renderOutcome } from "./render.js";
import { validateQuery, validateRating } from "./validate.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function init(): void {
  const form = byId<HTMLFormElement>("search-form");
  const queryInput = byId<HTMLInputElement>("query-input");
  const results = byId<HTMLElement>("results");
  const banner = byId<HTMLElement>("banner-slot");
  const ratingForm = byId<HTMLFormElement>("rating-form");
  const ratingStatus = byId<HTMLElement>("rating-status");

  let inFlight: AbortController | null = null;
  let currentQuery = "";

  function showError(message: string): void {
    banner.innerHTML = renderErrorBanner(message);
    banner
      .querySelector(".dismiss")
      ?.addEventListener("click", () => (banner.innerHTML = ""));
  }

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    banner.innerHTML = "";
    const text = queryInput.value;
    const problem = validateQuery(text);
    if (problem) {
      showError(problem);
      return;
    }
    inFlight?.abort();
    const controller = new AbortController();
    inFlight = controller;
    results.innerHTML = `<p class="loading">Searching…</p>`;
    ratingForm.hidden = true;
    search(text, { signal: controller.signal })
      .then((outcome) => {
        if (controller.signal.aborted) {
          return;
        }
        currentQuery = outcome.query;
        results.innerHTML = renderOutcome(outcome);
        ratingForm.hidden = false;
        ratingStatus.textContent = "";
      })
      .catch((err) => {
        if (controller.signal.aborted) {
          return;
        }
        results.innerHTML = "";
        const message =
          err instanceof ApiError ? err.message : "Search failed unexpectedly.";
        showError(message); // query text stays in the input for refinement
      });
  });

  ratingForm.addEventListener("submit", (event) => {
    event.preventDefault();
    const select = byId<HTMLSelectElement>("rating-value");
    const note = byId<HTMLInputElement>("rating-note").value;
    const draft = {
      queryId: currentQuery,
      rating: Number(select.value),
      note,
    };
    const problem = validateRating(draft);
    if (problem) {
      ratingStatus.textContent = problem;
      return;
    }
    ratingStatus.textContent = "Rated ✓";
    submitRating(draft.queryId, draft.rating, draft.note).catch((err) => {
      ratingStatus.textContent = "";
      const message =
        err instanceof ApiError ? err.message : "Rating could not be saved.";
      showError(message);
    });
  });
}

document.addEventListener("DOMContentLoaded", init);

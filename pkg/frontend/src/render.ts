// Pure HTML-string renderers for the results view. Keeping these free of
// DOM access lets the tests snapshot them directly.

import type {
  Exclusion,
  ObjectSummary,
  RelevanceEntry,
  RelevanceLabel,
  SearchOutcome,
} from "./types.js";

const BADGE_TEXT: Record<RelevanceLabel, string> = {
  HighlyRelevant: "Highly Relevant",
  PartiallyRelevant: "Partially Relevant",
  Irrelevant: "Irrelevant",
};

const BADGE_CLASS: Record<RelevanceLabel, string> = {
  HighlyRelevant: "badge-high",
  PartiallyRelevant: "badge-partial",
  Irrelevant: "badge-irrelevant",
};

export function escapeHtml(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;")
    .replaceAll('"', "&quot;")
    .replaceAll("'", "&#39;");
}

function badgeFor(entry: RelevanceEntry | undefined): string {
  const label: RelevanceLabel = entry?.label ?? "Irrelevant";
  const reason = entry ? escapeHtml(entry.reason) : "";
  return `<span class="badge ${BADGE_CLASS[label]}" title="${reason}">${BADGE_TEXT[label]}</span>`;
}

function sourceLink(summary: ObjectSummary): string {
  const source = summary.public_source;
  if (/^https?:\/\//.test(source)) {
    const href = escapeHtml(source);
    return `<a class="source-link" href="${href}" target="_blank" rel="noopener">${href}</a>`;
  }
  return `<span class="source-text">${escapeHtml(source)}</span>`;
}

export function renderCard(
  summary: ObjectSummary,
  entry: RelevanceEntry | undefined,
): string {
  const rows = [
    ["Artist", summary.artist],
    ["Auction House", summary.auction_house],
    ["Material", summary.material],
    ["Dimensions", summary.dimensions],
    ["Description", summary.description],
    ["Provenance", summary.provenance_info],
  ]
    .map(
      ([name, value]) =>
        `<div class="field"><span class="field-name">${name}:</span> ${escapeHtml(value)}</div>`,
    )
    .join("\n      ");
  const reason = entry ? `<p class="reason">${escapeHtml(entry.reason)}</p>` : "";
  return `<article class="card" data-record-id="${escapeHtml(summary.record_id)}">
    <header>
      <h3>${escapeHtml(summary.title)}</h3>
      ${badgeFor(entry)}
    </header>
    <div class="fields">
      ${rows}
    </div>
    ${reason}
    <footer>Source: ${sourceLink(summary)}</footer>
  </article>`;
}

export function renderExclusions(exclusions: Exclusion[]): string {
  if (exclusions.length === 0) {
    return "";
  }
  const items = exclusions
    .map(
      (e) =>
        `<li><span class="excluded-id">${escapeHtml(e.record_id)}</span> — ${escapeHtml(e.reason)}</li>`,
    )
    .join("\n      ");
  return `<details class="exclusions" open>
    <summary>Excluded records (${exclusions.length})</summary>
    <ul>
      ${items}
    </ul>
  </details>`;
}

export function renderOutcome(outcome: SearchOutcome): string {
  if (outcome.error) {
    return `<div class="error-state">
    <p>The response for this query could not be interpreted: ${escapeHtml(outcome.error)}</p>
    <pre class="raw-output">${escapeHtml(outcome.raw_model_output)}</pre>
  </div>`;
  }
  const result = outcome.result;
  const labels = new Map(result.relevance_labels.map((l) => [l.record_id, l]));
  const banner = result.classification
    ? `<p class="classification">Query classified as: <strong>${escapeHtml(result.classification)}</strong></p>`
    : "";
  const warnings = result.warnings.length
    ? `<ul class="warnings">\n    ${result.warnings
        .map((w) => `<li>${escapeHtml(w)}</li>`)
        .join("\n    ")}\n  </ul>`
    : "";
  const cards = result.relevant_objects.length
    ? result.relevant_objects
        .map((o) => renderCard(o, labels.get(o.record_id)))
        .join("\n  ")
    : `<p class="empty-state">No relevant records found for this query.</p>`;
  return `<section class="outcome">
  ${banner}
  ${warnings}
  ${cards}
  ${renderExclusions(result.exclusions)}
</section>`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="banner banner-error" role="alert">
    <span>${escapeHtml(message)}</span>
    <button type="button" class="dismiss" aria-label="Dismiss">×</button>
  </div>`;
}

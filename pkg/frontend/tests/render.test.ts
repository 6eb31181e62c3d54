import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  renderErrorBanner,
  renderExclusions,
  renderOutcome,
} from "../src/render.js";
import { DIX_OUTCOME, EMPTY_OUTCOME } from "./fixtures.js";

describe("renderOutcome", () => {
  it("matches the snapshot for the canned fixture", () => {
    expect(renderOutcome(DIX_OUTCOME)).toMatchSnapshot();
  });

  it("shows one highly relevant card with the correct source link", () => {
    const html = renderOutcome(DIX_OUTCOME);
    expect(html.match(/class="card"/g)).toHaveLength(1);
    expect(html).toContain(">Highly Relevant</span>");
    expect(html).toContain(
      'href="http://digi.ub.uni-heidelberg.de/diglit/fischer1939_06_30"',
    );
  });

  it("lists both excluded records in the exclusions panel", () => {
    const html = renderOutcome(DIX_OUTCOME);
    expect(html).toContain("Excluded records (2)");
    expect(html).toContain("X07");
    expect(html).toContain(
      "Rembrandt etching unrelated to the requested artist.",
    );
  });

  it("renders cards in the generation result's order", () => {
    const two = structuredClone(DIX_OUTCOME);
    two.result.relevant_objects.push({
      ...two.result.relevant_objects[0],
      record_id: "D2",
      title: "Second work",
    });
    const html = renderOutcome(two);
    expect(html.indexOf('data-record-id="D1"')).toBeLessThan(
      html.indexOf('data-record-id="D2"'),
    );
  });

  it("renders an explicit empty state when nothing is relevant", () => {
    const html = renderOutcome(EMPTY_OUTCOME);
    expect(html).not.toContain('class="card"');
    expect(html).toContain("No relevant records found");
    expect(html).toContain("Query is not about auction records.");
  });

  it("renders the raw output when the outcome carries a parse error", () => {
    const broken = { ...DIX_OUTCOME, error: "no JSON block", raw_model_output: "???" };
    const html = renderOutcome(broken);
    expect(html).toContain("could not be interpreted");
    expect(html).toContain("???");
  });

  it("escapes markup arriving from the API", () => {
    const hostile = structuredClone(DIX_OUTCOME);
    hostile.result.relevant_objects[0].title = "<script>alert(1)</script>";
    const html = renderOutcome(hostile);
    expect(html).not.toContain("<script>");
    expect(html).toContain("&lt;script&gt;");
  });
});

describe("renderExclusions", () => {
  it("is hidden entirely when there are no exclusions", () => {
    expect(renderExclusions([])).toBe("");
  });
});

describe("renderErrorBanner", () => {
  it("includes the message and a dismiss control", () => {
    const html = renderErrorBanner("Could not reach the search service.");
    expect(html).toContain("Could not reach the search service.");
    expect(html).toContain('class="dismiss"');
  });
});

describe("escapeHtml", () => {
  it("escapes the five significant characters", () => {
    expect(escapeHtml(`<a href="x">&'</a>`)).toBe(
      "&lt;a href=&quot;x&quot;&gt;&amp;&#39;&lt;/a&gt;",
    );
  });
});

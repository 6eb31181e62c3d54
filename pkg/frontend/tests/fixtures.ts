import type { SearchOutcome } from "../src/types.js";

/** A canned outcome: one highly relevant record, two excluded. */
export const DIX_OUTCOME: SearchOutcome = {
  query: "paintings by Otto Dix sold at Fischer in 1939",
  hits: [
    { record_id: "D1", score: 0.8231, rank: 1 },
    { record_id: "X07", score: 0.7412, rank: 2 },
    { record_id: "R1", score: 0.3125, rank: 3 },
  ],
  result: {
    classification: "object-based",
    relevant_objects: [
      {
        record_id: "D1",
        title: "Bildnis des Kunsthändlers Alfred Flechtheim",
        artist: "Dix, Otto",
        auction_house: "Fischer",
        material: "Öl auf Leinwand",
        dimensions: "76 cm x 70 cm",
        description: "Sold 1939-06-30, catalogue no. 142.",
        location: "Not specified",
        provenance_info: "Not provided",
        public_source:
          "http://digi.ub.uni-heidelberg.de/diglit/fischer1939_06_30",
      },
    ],
    exclusions: [
      {
        record_id: "X07",
        reason: "Different sale at Fischer; no works by Otto Dix listed.",
      },
      {
        record_id: "R1",
        reason: "Rembrandt etching unrelated to the requested artist.",
      },
    ],
    relevance_labels: [
      {
        record_id: "D1",
        label: "HighlyRelevant",
        reason: "Otto Dix painting sold at Fischer in 1939.",
      },
      {
        record_id: "X07",
        label: "Irrelevant",
        reason: "No Otto Dix works in this sale.",
      },
      {
        record_id: "R1",
        label: "Irrelevant",
        reason: "Different artist and medium.",
      },
    ],
    warnings: [],
  },
  raw_model_output: "",
  timing: { retrieve_ms: 3.1, generate_ms: 0.4 },
  error: null,
};

/** An out-of-scope outcome: nothing relevant, everything excluded. */
export const EMPTY_OUTCOME: SearchOutcome = {
  query: "Weather forecast for Zurich",
  hits: [{ record_id: "N1", score: 0.1102, rank: 1 }],
  result: {
    classification: "out-of-scope",
    relevant_objects: [],
    exclusions: [
      { record_id: "N1", reason: "Query is not about auction records." },
    ],
    relevance_labels: [
      { record_id: "N1", label: "Irrelevant", reason: "Out of scope." },
    ],
    warnings: [],
  },
  raw_model_output: "",
  timing: {},
  error: null,
};

// Shapes of the JSON payloads served by the search API.

export interface SearchHit {
  record_id: string;
  score: number;
  rank: number;
}

export interface ObjectSummary {
  record_id: string;
  title: string;
  artist: string;
  auction_house: string;
  material: string;
  dimensions: string;
  description: string;
  location: string;
  provenance_info: string;
  public_source: string;
}

export interface Exclusion {
  record_id: string;
  reason: string;
}

export type RelevanceLabel = "HighlyRelevant" | "PartiallyRelevant" | "Irrelevant";

export interface RelevanceEntry {
  record_id: string;
  label: RelevanceLabel;
  reason: string;
}

export interface GenerationResult {
  classification: string;
  relevant_objects: ObjectSummary[];
  exclusions: Exclusion[];
  relevance_labels: RelevanceEntry[];
  warnings: string[];
}

export interface SearchOutcome {
  query: string;
  hits: SearchHit[];
  result: GenerationResult;
  raw_model_output: string;
  timing: Record<string, number>;
  error: string | null;
}

export interface RatingReceipt {
  query_id: string;
  rating: number;
  note: string | null;
  timestamp: string;
}

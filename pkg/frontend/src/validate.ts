// Client-side validation for the rating widget.

export interface RatingDraft {
  queryId: string;
  rating: number;
  note?: string;
}

/** Returns an error message, or null when the draft may be submitted. */
export function validateRating(draft: RatingDraft): string | null {
  if (!draft.queryId.trim()) {
    return "A completed search is required before rating.";
  }
  if (!Number.isInteger(draft.rating)) {
    return "Rating must be a whole number between 1 and 3.";
  }
  if (draft.rating < 1 || draft.rating > 3) {
    return "Rating must be between 1 and 3.";
  }
  return null;
}

/** Returns an error message, or null when the query may be submitted. */
export function validateQuery(text: string): string | null {
  if (!text.trim()) {
    return "Enter a query first.";
  }
  return null;
}

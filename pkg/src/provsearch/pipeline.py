"""End-to-end query execution: embed, retrieve, prompt, generate, parse.

The generation side has two clients: a remote chat-completion client and a
deterministic stub whose rulebook is word overlap between the query and each
record's augmented text. Model output carries a fenced JSON block that
parse_response turns back into a typed result; record ids not present in the
retrieved context are dropped, so the result can never cite a record that was
not retrieved.
"""

from __future__ import annotations

import json
import os
import re
import time
from dataclasses import dataclass, field
from importlib import resources

import httpx

from .corpus import AugmentedDocument, Corpus, augment
from .errors import (
    AuthError,
    ContextTooLong,
    MissingDocument,
    RateLimited,
    StageError,
    UnparseableResponse,
)
from .index import FlatIndex, SearchHit

LABELS = ("HighlyRelevant", "PartiallyRelevant", "Irrelevant")

_LABEL_DISPLAY = {
    "HighlyRelevant": "Highly Relevant",
    "PartiallyRelevant": "Partially Relevant",
    "Irrelevant": "Irrelevant",
}


@dataclass(frozen=True)
class RetrievalConfig:
    k: int = 10
    similarity_floor: float | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.similarity_floor is not None and not -1.0 <= self.similarity_floor <= 1.0:
            raise ValueError("similarity_floor must be within [-1, 1]")


@dataclass(frozen=True)
class ContextBlock:
    record_id: str
    text: str
    score: float


@dataclass(frozen=True)
class PromptBundle:
    system_message: str
    context_blocks: list[ContextBlock]
    user_query: str


@dataclass(frozen=True)
class ObjectSummary:
    record_id: str
    title: str = "Not specified"
    artist: str = "Not specified"
    auction_house: str = "Not specified"
    material: str = "Not specified"
    dimensions: str = "Not specified"
    description: str = "Not specified"
    location: str = "Not specified"
    provenance_info: str = "Not provided"
    public_source: str = "Not provided"


@dataclass(frozen=True)
class Exclusion:
    record_id: str
    reason: str


@dataclass(frozen=True)
class RelevanceLabel:
    record_id: str
    label: str  # one of LABELS
    reason: str


@dataclass
class GenerationResult:
    query_classification: str = ""
    relevant_objects: list[ObjectSummary] = field(default_factory=list)
    exclusions: list[Exclusion] = field(default_factory=list)
    relevance_labels: list[RelevanceLabel] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


@dataclass
class SearchOutcome:
    query: str
    hits: list[SearchHit]
    result: GenerationResult
    raw_model_output: str
    timing: dict[str, float]
    error: str | None = None


def system_message() -> str:
    """The versioned system-message template."""
    return resources.files("provsearch.templates").joinpath("system_message.txt").read_text("utf-8")


def retrieve(
    query: str,
    cfg: RetrievalConfig,
    index: FlatIndex,
    corpus: Corpus,
    embedder,
) -> list[tuple[SearchHit, AugmentedDocument]]:
    """Top-k hits joined with their augmented documents."""
    qvec = embedder.embed([query], ids=["query"])[0]
    hits = index.search(qvec, cfg.k)
    if cfg.similarity_floor is not None:
        hits = [h for h in hits if h.score >= cfg.similarity_floor]
    joined = []
    for hit in hits:
        record = corpus.get(hit.record_id)
        if record is None:
            raise MissingDocument(
                f"index entry {hit.record_id!r} has no corpus record; stores are out of sync"
            )
        joined.append((hit, augment(record)))
    return joined


def build_prompt(query: str, context: list[tuple[SearchHit, AugmentedDocument]]) -> PromptBundle:
    """Assemble the structured prompt from retrieved context."""
    blocks = [
        ContextBlock(record_id=doc.record_id, text=doc.text, score=hit.score)
        for hit, doc in context
    ]
    return PromptBundle(system_message=system_message(), context_blocks=blocks, user_query=query)


def render_prompt_text(prompt: PromptBundle) -> str:
    """Flatten a PromptBundle into the user-message text sent to the model."""
    parts = []
    if prompt.context_blocks:
        parts.append("Candidate records:")
        for block in prompt.context_blocks:
            parts.append(f"[record {block.record_id}] (score {block.score:.4f}) {block.text}")
    else:
        parts.append(
            "No candidate records were retrieved for this query. Report that no "
            "relevant records exist and return empty relevant_objects."
        )
    parts.append("")
    parts.append(f"Query: {prompt.user_query}")
    return "\n".join(parts)


# --- stub generation client ---

_STOPWORDS = frozenset(
    """a an the and or of by in at on to for with any all are is was were there that
    this these those from it its as be been has have had do does did which who whom
    what where when how please retrieve find me show records record sold auction
    der die das und oder von im in aus mit für ein eine einer eines bei auf den dem
    des ist sind war waren werden wurde am um zu zur zum""".split()
)

_WORD_RE = re.compile(r"\w+", re.UNICODE)


def content_words(query: str) -> list[str]:
    """Lowercased query tokens with function words removed."""
    words = []
    for token in _WORD_RE.findall(query.lower()):
        if len(token) >= 2 and token not in _STOPWORDS and token not in words:
            words.append(token)
    return words


_CLAUSE_LABELS = [
    "Auction House",
    "Sale Date",
    "Artist",
    "Title",
    "Object Type",
    "Material",
    "Dimensions",
    "Catalogue Number",
    "Metadata",
]

_CLAUSE_RE = re.compile(
    r"(" + "|".join(re.escape(lbl) for lbl in _CLAUSE_LABELS) + r"): "
)


def _parse_augmented_fields(text: str) -> dict[str, str]:
    """Recover labeled field values from an augmented document's text."""
    fields: dict[str, str] = {}
    matches = list(_CLAUSE_RE.finditer(text))
    for m, nxt in zip(matches, matches[1:] + [None]):
        end = nxt.start() if nxt else len(text)
        fields[m.group(1)] = text[m.end() : end].strip()
    meta = fields.get("Metadata", "")
    source = re.search(r"'source': '([^']*)'", meta)
    if source:
        fields["source"] = source.group(1)
    return fields


class StubGenerationClient:
    """Deterministic generation client for offline runs and CI.

    Rulebook: a record is HighlyRelevant when its augmented text contains all
    of the query's content words (case-insensitive), PartiallyRelevant at
    half or more, Irrelevant otherwise. Relevant objects are the highly and
    partially relevant records.
    """

    def generate(self, prompt: PromptBundle) -> str:
        words = content_words(prompt.user_query)
        labels: list[RelevanceLabel] = []
        objects: list[ObjectSummary] = []
        exclusions: list[Exclusion] = []
        for block in prompt.context_blocks:
            text = block.text.lower()
            present = [w for w in words if w in text]
            fraction = len(present) / len(words) if words else 0.0
            if fraction == 1.0:
                label = "HighlyRelevant"
                reason = "matches every query term: " + ", ".join(present)
            elif fraction >= 0.5:
                label = "PartiallyRelevant"
                reason = "matches query terms: " + ", ".join(present)
            else:
                label = "Irrelevant"
                missing = [w for w in words if w not in text]
                reason = "does not mention: " + ", ".join(missing) if missing else "no query terms"
            labels.append(RelevanceLabel(record_id=block.record_id, label=label, reason=reason))
            if label == "Irrelevant":
                exclusions.append(Exclusion(record_id=block.record_id, reason=reason))
            else:
                objects.append(self._summarize(block))
        if objects:
            classification = "object-based"
        elif prompt.context_blocks:
            classification = "out-of-scope"
        else:
            classification = "out-of-scope"
        result = GenerationResult(
            query_classification=classification,
            relevant_objects=objects,
            exclusions=exclusions,
            relevance_labels=labels,
        )
        return render_generation(result)

    @staticmethod
    def _summarize(block: ContextBlock) -> ObjectSummary:
        f = _parse_augmented_fields(block.text)
        if f.get("source"):
            public_source = f["source"]
        else:
            year = (f.get("Sale Date", "") or "")[:4]
            house = f.get("Auction House", "").strip()
            public_source = f"{house} {year} Auction Catalogue".strip()
        return ObjectSummary(
            record_id=block.record_id,
            title=f.get("Title") or "Not specified",
            artist=f.get("Artist") or "Not specified",
            auction_house=f.get("Auction House") or "Not specified",
            material=f.get("Material") or "Not specified",
            dimensions=f.get("Dimensions") or "Not specified",
            description=f.get("Title") or "Not specified",
            location="Not specified",
            provenance_info="Not provided",
            public_source=public_source,
        )


class RemoteGenerationClient:
    """Chat-completion client configured via GEN_API_BASE/GEN_API_KEY/GEN_MODEL."""

    def __init__(
        self,
        api_base: str | None = None,
        api_key: str | None = None,
        model: str | None = None,
        transport: httpx.BaseTransport | None = None,
        backoff_base: float = 0.5,
    ):
        self.api_base = (api_base or os.environ.get("GEN_API_BASE", "")).rstrip("/")
        self.api_key = api_key or os.environ.get("GEN_API_KEY", "")
        self.model = model or os.environ.get("GEN_MODEL", "gpt-4o")
        self.backoff_base = backoff_base
        self._client = httpx.Client(transport=transport, timeout=120.0)

    def generate(self, prompt: PromptBundle) -> str:
        if not self.api_base:
            raise AuthError("GEN_API_BASE is not configured")
        if not self.api_key:
            raise AuthError("GEN_API_KEY is not configured")
        body = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": prompt.system_message},
                {"role": "user", "content": render_prompt_text(prompt)},
            ],
        }
        url = f"{self.api_base}/chat/completions"
        headers = {"Authorization": f"Bearer {self.api_key}"}
        last_exc: Exception | None = None
        for attempt in range(3):
            if attempt:
                time.sleep(self.backoff_base * (2 ** (attempt - 1)))
            try:
                resp = self._client.post(url, json=body, headers=headers)
            except httpx.TransportError as e:
                last_exc = e
                continue
            if resp.status_code in (401, 403):
                raise AuthError(f"provider rejected credential (HTTP {resp.status_code})")
            if resp.status_code == 429:
                last_exc = RateLimited("HTTP 429")
                continue
            if resp.status_code == 400 and "context" in resp.text.lower():
                raise ContextTooLong(resp.text[:500])
            if resp.status_code >= 500:
                last_exc = RuntimeError(f"HTTP {resp.status_code}")
                continue
            resp.raise_for_status()
            return resp.json()["choices"][0]["message"]["content"]
        if isinstance(last_exc, RateLimited):
            raise last_exc
        raise RateLimited(f"request failed after 3 attempts: {last_exc}")


def generate(prompt: PromptBundle, client) -> str:
    """Run the generation client on a prompt; returns the raw model text."""
    return client.generate(prompt)


# --- structured output ---

def result_to_json(result: GenerationResult) -> str:
    obj = {
        "classification": result.query_classification,
        "relevant_objects": [vars(o) for o in result.relevant_objects],
        "exclusions": [vars(e) for e in result.exclusions],
        "relevance_labels": [vars(l) for l in result.relevance_labels],
    }
    return json.dumps(obj, ensure_ascii=False, indent=2)


def render_generation(result: GenerationResult) -> str:
    """Human-readable rendering plus the fenced machine-readable JSON block."""
    lines = [f"The research question is classified as {result.query_classification}.", ""]
    lines.append("Relevant Objects:")
    if result.relevant_objects:
        for o in result.relevant_objects:
            lines.append(f"- Title : {o.title}")
            lines.append(f"  Artist : {o.artist}")
            lines.append(f"  Auction House : {o.auction_house}")
            lines.append(f"  Material : {o.material}")
            lines.append(f"  Dimensions : {o.dimensions}")
            lines.append(f"  Description : {o.description}")
            lines.append(f"  Location : {o.location}")
            lines.append(f"  Provenance Information : {o.provenance_info}")
            lines.append(f"  Public Source : {o.public_source}")
    else:
        lines.append("- No relevant records were found for this query.")
    lines.append("")
    lines.append("Explanation of Inclusion/Exclusion Criteria:")
    for o in result.relevant_objects:
        lines.append(f"- {o.record_id} included: see relevance evaluation.")
    for e in result.exclusions:
        lines.append(f"- {e.record_id} excluded: {e.reason}")
    if not result.relevant_objects and not result.exclusions:
        lines.append("- No candidate records were retrieved.")
    lines.append("")
    lines.append("Relevance Evaluation")
    for l in result.relevance_labels:
        lines.append(f"- {_LABEL_DISPLAY[l.label]} - {l.record_id}: {l.reason}")
    lines.append("")
    lines.append("```json")
    lines.append(result_to_json(result))
    lines.append("```")
    return "\n".join(lines)


_FENCE_RE = re.compile(r"```json\s*(\{.*?\})\s*```", re.DOTALL)


def parse_response(raw: str, context_ids: set[str]) -> GenerationResult:
    """Extract the fenced JSON block into a GenerationResult.

    Objects, exclusions, and labels citing record ids outside the retrieved
    context are dropped and recorded as warnings. Every context id ends up
    with exactly one relevance label (missing ones default to Irrelevant).
    Raises UnparseableResponse when no JSON block is found.
    """
    m = _FENCE_RE.search(raw)
    if not m:
        raise UnparseableResponse("no fenced JSON block in model output")
    try:
        obj = json.loads(m.group(1))
    except json.JSONDecodeError as e:
        raise UnparseableResponse(f"JSON block does not parse: {e}")

    result = GenerationResult(query_classification=str(obj.get("classification", "")))

    for entry in obj.get("relevant_objects", []):
        rid = str(entry.get("record_id", ""))
        if rid not in context_ids:
            result.warnings.append(f"dropped fabricated relevant object {rid!r}")
            continue
        known = {f for f in ObjectSummary.__dataclass_fields__}
        result.relevant_objects.append(
            ObjectSummary(**{k: str(v) for k, v in entry.items() if k in known})
        )
    for entry in obj.get("exclusions", []):
        rid = str(entry.get("record_id", ""))
        if rid not in context_ids:
            result.warnings.append(f"dropped fabricated exclusion {rid!r}")
            continue
        result.exclusions.append(Exclusion(record_id=rid, reason=str(entry.get("reason", ""))))

    seen: set[str] = set()
    for entry in obj.get("relevance_labels", []):
        rid = str(entry.get("record_id", ""))
        if rid not in context_ids:
            result.warnings.append(f"dropped fabricated relevance label {rid!r}")
            continue
        if rid in seen:
            result.warnings.append(f"dropped duplicate relevance label {rid!r}")
            continue
        label = entry.get("label", "Irrelevant")
        if label not in LABELS:
            label = "Irrelevant"
        result.relevance_labels.append(
            RelevanceLabel(record_id=rid, label=label, reason=str(entry.get("reason", "")))
        )
        seen.add(rid)
    for rid in sorted(context_ids - seen):
        result.relevance_labels.append(
            RelevanceLabel(record_id=rid, label="Irrelevant", reason="no label returned by model")
        )
    return result


def run_search(
    query: str,
    cfg: RetrievalConfig,
    index: FlatIndex,
    corpus: Corpus,
    embedder,
    client,
) -> SearchOutcome:
    """Compose retrieve, build_prompt, generate, parse_response with timing."""
    timing: dict[str, float] = {}

    def timed(stage, fn):
        t0 = time.perf_counter()
        try:
            out = fn()
        except Exception as e:
            raise StageError(stage, e) from e
        timing[stage] = time.perf_counter() - t0
        return out

    context = timed("retrieve", lambda: retrieve(query, cfg, index, corpus, embedder))
    prompt = timed("build_prompt", lambda: build_prompt(query, context))
    raw = timed("generate", lambda: generate(prompt, client))
    hits = [hit for hit, _ in context]
    context_ids = {hit.record_id for hit in hits}
    t0 = time.perf_counter()
    try:
        result = parse_response(raw, context_ids)
        error = None
    except UnparseableResponse as e:
        result = GenerationResult()
        error = str(e)
    timing["parse"] = time.perf_counter() - t0
    return SearchOutcome(
        query=query,
        hits=hits,
        result=result,
        raw_model_output=raw,
        timing=timing,
        error=error,
    )


# --- JSON serialization of outcomes (CLI --json and the HTTP API) ---

def outcome_to_dict(outcome: SearchOutcome) -> dict:
    return {
        "query": outcome.query,
        "hits": [vars(h) for h in outcome.hits],
        "result": {
            "classification": outcome.result.query_classification,
            "relevant_objects": [vars(o) for o in outcome.result.relevant_objects],
            "exclusions": [vars(e) for e in outcome.result.exclusions],
            "relevance_labels": [vars(l) for l in outcome.result.relevance_labels],
            "warnings": list(outcome.result.warnings),
        },
        "raw_model_output": outcome.raw_model_output,
        "timing": dict(outcome.timing),
        "error": outcome.error,
    }


def render_outcome_text(outcome: SearchOutcome) -> str:
    """Human-readable outcome for the CLI."""
    lines = [f"Query: {outcome.query}", ""]
    lines.append("Retrieved records:")
    for h in outcome.hits:
        lines.append(f"  {h.rank:>2}. {h.record_id}  score={h.score:.4f}")
    if not outcome.hits:
        lines.append("  (none)")
    lines.append("")
    if outcome.error:
        lines.append(f"Generation output could not be parsed: {outcome.error}")
        lines.append("Raw model output follows:")
        lines.append(outcome.raw_model_output)
    else:
        lines.append(render_generation(outcome.result))
    return "\n".join(lines)

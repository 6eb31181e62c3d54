"""Evaluation harness: categorized query suite, predicate ground truth,
completeness metrics, manual 1-3 ratings, per-category report.

Ground truth is a pure boolean predicate over record fields (a stand-in for
benchmark SQL queries), stored alongside each query in the suite file.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from .corpus import Corpus
from .errors import UnknownField
from .pipeline import RetrievalConfig, run_search

CATEGORIES = ("Specific", "VagueOrBroad", "Multilingual", "OutOfScope")

_CATEGORY_DISPLAY = {
    "Specific": "Specific",
    "VagueOrBroad": "Vague or Broad",
    "Multilingual": "Multilingual",
    "OutOfScope": "Out-of-Scope / Irrelevant",
}

_RECORD_FIELDS = {
    "record_id",
    "artist",
    "title",
    "object_type",
    "material",
    "dimensions",
    "auction_house",
    "sale_date",
    "catalogue_number",
    "source_url",
}


# --- predicate DSL ---

def _field_value(record, name: str) -> str:
    if name not in _RECORD_FIELDS:
        raise UnknownField(f"predicate references unknown field {name!r}")
    return getattr(record, name) or ""


def eval_predicate(pred: dict, record) -> bool:
    """Evaluate a predicate expression tree against one record.

    Atoms: equals(field, value), contains(field, substring, case-insensitive),
    year_equals(sale_date, integer). Combinators: and, or, not.
    """
    op = pred["op"]
    if op == "and":
        return all(eval_predicate(p, record) for p in pred["args"])
    if op == "or":
        return any(eval_predicate(p, record) for p in pred["args"])
    if op == "not":
        return not eval_predicate(pred["arg"], record)
    if op == "equals":
        return _field_value(record, pred["field"]) == pred["value"]
    if op == "contains":
        return str(pred["value"]).lower() in _field_value(record, pred["field"]).lower()
    if op == "year_equals":
        date = _field_value(record, "sale_date")
        return bool(date) and date[:4] == str(int(pred["value"]))
    raise ValueError(f"unknown predicate op {op!r}")


def ground_truth(pred: dict | None, corpus: Corpus) -> set[str]:
    """Record ids satisfying the predicate; empty predicate matches nothing."""
    if not pred:
        return set()
    return {r.record_id for r in corpus if eval_predicate(pred, r)}


@dataclass(frozen=True)
class EvalQuery:
    query_id: str
    text: str
    category: str  # one of CATEGORIES
    ground_truth: dict | None = None  # predicate expression; None for OutOfScope
    language_tag: str = "en"
    approximate: bool = False  # keyword-approximated ground truth

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r}")
        if self.category == "OutOfScope" and self.ground_truth:
            raise ValueError("OutOfScope queries must have empty ground truth")


def load_suite(data: bytes | str) -> list[EvalQuery]:
    """Parse a JSONL query-suite file, one EvalQuery per line."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    queries = []
    for line in data.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        queries.append(
            EvalQuery(
                query_id=obj["query_id"],
                text=obj["text"],
                category=obj["category"],
                ground_truth=obj.get("ground_truth"),
                language_tag=obj.get("language_tag", "en"),
                approximate=bool(obj.get("approximate", False)),
            )
        )
    return queries


def load_ratings(data: bytes | str) -> dict[str, int]:
    """Parse a query_id,rating CSV into a mapping."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    ratings = {}
    for row in csv.DictReader(io.StringIO(data)):
        rating = int(row["rating"])
        if rating not in (1, 2, 3):
            raise ValueError(f"rating for {row['query_id']!r} must be 1, 2, or 3")
        ratings[row["query_id"]] = rating
    return ratings


# --- metrics ---

def completeness(expected: set[str], observed: set[str]) -> float:
    """Percentage of expected records present in observed.

    Retrieving everything expected plus extras still scores 100. Empty
    expected sets are handled by out_of_scope_score, not here.
    """
    if not expected:
        raise ValueError("completeness is undefined for an empty expected set")
    return 100.0 * len(expected & observed) / len(expected)


def out_of_scope_score(final_ids: set[str], category: str = "OutOfScope") -> float:
    """All-or-nothing score for control queries with no answer in the corpus."""
    if category != "OutOfScope":
        raise ValueError("out_of_scope_score applies only to OutOfScope queries")
    return 100.0 if not final_ids else 0.0


@dataclass
class QueryResultMetrics:
    query_id: str
    category: str
    expected_ids: set[str]
    retrieved_ids: set[str]
    final_ids: set[str]
    retrieval_completeness: float
    output_completeness: float
    manual_rating: int | None = None
    approximate: bool = False
    error: str | None = None


@dataclass
class CategoryRow:
    category: str
    query_count: int
    mean_retrieval_completeness: float | None
    mean_output_completeness: float | None
    mean_rating: float | None


@dataclass
class EvaluationReport:
    per_query: list[QueryResultMetrics]
    rows: list[CategoryRow]
    config: dict = field(default_factory=dict)


def _score_query(q: EvalQuery, expected: set, retrieved: set, final: set) -> tuple[float, float]:
    if q.category == "OutOfScope":
        # Retrieval may surface candidates; what matters is the final set.
        return out_of_scope_score(final), out_of_scope_score(final)
    if not expected:
        # Ground truth matched nothing; treat like a control query.
        return (100.0 if not retrieved else 0.0), (100.0 if not final else 0.0)
    return completeness(expected, retrieved), completeness(expected, final)


def run_suite(
    queries: list[EvalQuery],
    cfg: RetrievalConfig,
    index,
    corpus: Corpus,
    embedder,
    client,
    ratings: dict[str, int] | None = None,
) -> EvaluationReport:
    """Execute run_search per query and aggregate per-category means."""
    ratings = ratings or {}
    per_query: list[QueryResultMetrics] = []
    for q in sorted(queries, key=lambda q: q.query_id):
        expected = ground_truth(q.ground_truth, corpus)
        try:
            outcome = run_search(q.text, cfg, index, corpus, embedder, client)
        except Exception as e:
            per_query.append(
                QueryResultMetrics(
                    query_id=q.query_id,
                    category=q.category,
                    expected_ids=expected,
                    retrieved_ids=set(),
                    final_ids=set(),
                    retrieval_completeness=0.0,
                    output_completeness=0.0,
                    manual_rating=ratings.get(q.query_id),
                    approximate=q.approximate,
                    error=str(e),
                )
            )
            continue
        retrieved = {h.record_id for h in outcome.hits}
        final = {o.record_id for o in outcome.result.relevant_objects}
        retrieval_c, output_c = _score_query(q, expected, retrieved, final)
        per_query.append(
            QueryResultMetrics(
                query_id=q.query_id,
                category=q.category,
                expected_ids=expected,
                retrieved_ids=retrieved,
                final_ids=final,
                retrieval_completeness=retrieval_c,
                output_completeness=output_c,
                manual_rating=ratings.get(q.query_id),
                approximate=q.approximate,
            )
        )

    rows = []
    for category in CATEGORIES:
        members = [m for m in per_query if m.category == category]
        if not members:
            continue
        ok = [m for m in members if m.error is None]
        rated = [m.manual_rating for m in members if m.manual_rating is not None]
        rows.append(
            CategoryRow(
                category=category,
                query_count=len(members),
                mean_retrieval_completeness=(
                    sum(m.retrieval_completeness for m in ok) / len(ok) if ok else None
                ),
                mean_output_completeness=(
                    sum(m.output_completeness for m in ok) / len(ok) if ok else None
                ),
                mean_rating=(sum(rated) / len(rated) if rated else None),
            )
        )
    config = {
        "k": cfg.k,
        "similarity_floor": cfg.similarity_floor,
        "embedder": getattr(getattr(embedder, "spec", None), "provider", "unknown"),
        "dimension": getattr(embedder, "dimension", None),
        "client": type(client).__name__,
    }
    return EvaluationReport(per_query=per_query, rows=rows, config=config)


# --- rendering ---

def report_to_dict(report: EvaluationReport) -> dict:
    return {
        "config": report.config,
        "rows": [
            {
                "category": r.category,
                "query_count": r.query_count,
                "mean_retrieval_completeness": r.mean_retrieval_completeness,
                "mean_output_completeness": r.mean_output_completeness,
                "mean_rating": r.mean_rating,
            }
            for r in report.rows
        ],
        "per_query": [
            {
                "query_id": m.query_id,
                "category": m.category,
                "expected_ids": sorted(m.expected_ids),
                "retrieved_ids": sorted(m.retrieved_ids),
                "final_ids": sorted(m.final_ids),
                "retrieval_completeness": m.retrieval_completeness,
                "output_completeness": m.output_completeness,
                "manual_rating": m.manual_rating,
                "approximate": m.approximate,
                "error": m.error,
            }
            for m in report.per_query
        ],
    }


def _fmt_completeness(v: float | None) -> str:
    return "-" if v is None else f"{v:.1f}"


def _fmt_rating(v: float | None) -> str:
    return "-" if v is None else f"{v:.2f}"


def render_report(report: EvaluationReport, format: str) -> bytes:
    """Render a report as table text, JSON, or CSV.

    The text table uses retrieval-stage completeness under the headline
    "Average Completeness (%)" column; output-stage completeness is reported
    in the JSON/CSV forms.
    """
    if format == "json":
        return json.dumps(report_to_dict(report), ensure_ascii=False, indent=2).encode("utf-8")
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(
            [
                "category",
                "query_count",
                "mean_retrieval_completeness",
                "mean_output_completeness",
                "mean_rating",
            ]
        )
        for r in report.rows:
            writer.writerow(
                [
                    r.category,
                    r.query_count,
                    "" if r.mean_retrieval_completeness is None else repr(r.mean_retrieval_completeness),
                    "" if r.mean_output_completeness is None else repr(r.mean_output_completeness),
                    "" if r.mean_rating is None else repr(r.mean_rating),
                ]
            )
        return buf.getvalue().encode("utf-8")
    if format == "table-text":
        headers = [
            "Query Category",
            "Number of Queries",
            "Average Completeness (%)",
            "Average Output Rating",
        ]
        body = [
            [
                _CATEGORY_DISPLAY[r.category],
                str(r.query_count),
                _fmt_completeness(r.mean_retrieval_completeness),
                _fmt_rating(r.mean_rating),
            ]
            for r in report.rows
        ]
        widths = [max(len(h), *(len(row[i]) for row in body)) if body else len(h)
                  for i, h in enumerate(headers)]
        def fmt_row(cells):
            return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
        lines = [fmt_row(headers)]
        lines.extend(fmt_row(row) for row in body)
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {format!r}")


def report_from_dict(obj: dict) -> EvaluationReport:
    """Inverse of report_to_dict (for the JSON/CSV losslessness checks)."""
    rows = [
        CategoryRow(
            category=r["category"],
            query_count=r["query_count"],
            mean_retrieval_completeness=r["mean_retrieval_completeness"],
            mean_output_completeness=r["mean_output_completeness"],
            mean_rating=r["mean_rating"],
        )
        for r in obj.get("rows", [])
    ]
    per_query = [
        QueryResultMetrics(
            query_id=m["query_id"],
            category=m["category"],
            expected_ids=set(m["expected_ids"]),
            retrieved_ids=set(m["retrieved_ids"]),
            final_ids=set(m["final_ids"]),
            retrieval_completeness=m["retrieval_completeness"],
            output_completeness=m["output_completeness"],
            manual_rating=m["manual_rating"],
            approximate=m.get("approximate", False),
            error=m.get("error"),
        )
        for m in obj.get("per_query", [])
    ]
    return EvaluationReport(per_query=per_query, rows=rows, config=obj.get("config", {}))

"""HTTP JSON API backing the browser UI.

The corpus and index are loaded immutable at startup; the ratings journal is
the only mutable state (append-only JSONL, single-writer lock). Well-formed
requests never produce a 5xx: pipeline errors map to 400 with a machine
readable code, validation failures to 422.
"""

from __future__ import annotations

import datetime
import json
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .config import AppConfig
from .corpus import Corpus, parse_records
from .embedding import make_embedder
from .errors import ProvSearchError, StageError
from .evaluation import load_ratings, load_suite, report_to_dict, run_suite
from .index import FlatIndex
from .pipeline import (
    RemoteGenerationClient,
    RetrievalConfig,
    StubGenerationClient,
    outcome_to_dict,
    run_search,
)


class SearchRequest(BaseModel):
    query: str = Field(min_length=1)
    k: int | None = Field(default=None, ge=1)
    stub: bool | None = None


class RatingRequest(BaseModel):
    query_id: str = Field(min_length=1)
    rating: int = Field(ge=1, le=3)
    note: str | None = None


class EvaluateRequest(BaseModel):
    suite_path: str = Field(min_length=1)
    ratings_path: str | None = None


class RatingsJournal:
    """Append-only JSONL journal of rating submissions."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def append(self, query_id: str, rating: int, note: str | None) -> dict:
        entry = {
            "query_id": query_id,
            "rating": rating,
            "note": note,
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        }
        line = json.dumps(entry, ensure_ascii=False) + "\n"
        with self._lock:
            with open(self.path, "a", encoding="utf-8") as f:
                f.write(line)
        return entry

    def latest_per_query(self) -> dict[str, int]:
        if not self.path.exists():
            return {}
        ratings: dict[str, int] = {}
        for line in self.path.read_text("utf-8").splitlines():
            if line.strip():
                entry = json.loads(line)
                ratings[entry["query_id"]] = entry["rating"]
        return ratings


def load_corpus_file(path: str | Path) -> Corpus:
    path = Path(path)
    fmt = "csv" if path.suffix.lower() == ".csv" else "jsonl"
    corpus, _ = parse_records(path.read_bytes(), fmt)
    return corpus


def create_app(config: AppConfig) -> FastAPI:
    config.validate_paths()
    corpus = load_corpus_file(config.corpus_path)
    index = FlatIndex.load(config.index_path)
    embedder = make_embedder(config.embedder, index.dimension)
    journal = RatingsJournal(config.ratings_path)
    stub_client = StubGenerationClient()

    app = FastAPI(title="provsearch")
    app.state.latest_report = None

    @app.exception_handler(ProvSearchError)
    def on_pipeline_error(request, exc: ProvSearchError):
        code = type(exc).__name__
        if isinstance(exc, StageError):
            code = f"{type(exc.cause).__name__}@{exc.stage}"
        return JSONResponse(status_code=400, content={"error": code, "detail": str(exc)})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/api/search")
    def api_search(req: SearchRequest):
        cfg = RetrievalConfig(k=req.k or config.k, similarity_floor=config.similarity_floor)
        use_stub = req.stub if req.stub is not None else config.generation == "stub"
        client = stub_client if use_stub else RemoteGenerationClient()
        outcome = run_search(req.query, cfg, index, corpus, embedder, client)
        return outcome_to_dict(outcome)

    @app.get("/api/records/{record_id}")
    def api_record(record_id: str):
        record = corpus.get(record_id)
        if record is None:
            raise HTTPException(status_code=404, detail=f"no record {record_id!r}")
        return record.as_dict()

    @app.post("/api/ratings", status_code=201)
    def api_rating(req: RatingRequest):
        return journal.append(req.query_id, req.rating, req.note)

    @app.post("/api/evaluate")
    def api_evaluate(req: EvaluateRequest):
        suite_path = Path(req.suite_path)
        if not suite_path.exists():
            raise HTTPException(status_code=404, detail=f"suite {req.suite_path!r} not found")
        queries = load_suite(suite_path.read_bytes())
        if req.ratings_path:
            ratings = load_ratings(Path(req.ratings_path).read_bytes())
        else:
            ratings = journal.latest_per_query()
        cfg = RetrievalConfig(k=config.k, similarity_floor=config.similarity_floor)
        client = stub_client if config.generation == "stub" else RemoteGenerationClient()
        report = run_suite(queries, cfg, index, corpus, embedder, client, ratings=ratings)
        payload = report_to_dict(report)
        app.state.latest_report = payload
        return payload

    @app.get("/api/report/latest")
    def api_latest_report():
        if app.state.latest_report is None:
            raise HTTPException(status_code=404, detail="no evaluation has run yet")
        return app.state.latest_report

    static_dir = config.static_dir
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app

import json
import shutil
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from provsearch.config import AppConfig
from provsearch.corpus import augment, parse_records
from provsearch.embedding import LocalEmbedder
from provsearch.index import FlatIndex
from provsearch.service import create_app


@pytest.fixture(scope="module")
def service_env(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("service")
    fixtures = __import__("pathlib").Path(__file__).resolve().parents[1] / "fixtures"
    corpus_path = tmp / "corpus.csv"
    shutil.copy(fixtures / "corpus_50.csv", corpus_path)
    shutil.copy(fixtures / "queries_20.jsonl", tmp / "queries_20.jsonl")

    corpus, _ = parse_records(corpus_path.read_bytes(), "csv")
    emb = LocalEmbedder(256)
    idx = FlatIndex(256)
    for r in corpus:
        doc = augment(r)
        idx.add(r.record_id, emb.embed([doc.text], ids=[r.record_id])[0])
    idx.freeze()
    index_path = tmp / "index.pvix"
    idx.save(index_path)

    config = AppConfig(
        corpus_path=str(corpus_path),
        index_path=str(index_path),
        embedder="local",
        dimension=256,
        generation="stub",
        ratings_path=str(tmp / "ratings.jsonl"),
    )
    return tmp, config


@pytest.fixture(scope="module")
def client(service_env):
    _, config = service_env
    return TestClient(create_app(config), raise_server_exceptions=False)


class TestHealth:
    def test_healthz(self, client):
        resp = client.get("/healthz")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok"}


class TestSearch:
    def test_fixture_query(self, client):
        resp = client.post("/api/search", json={"query": "Otto Dix Fischer 1939", "stub": True})
        assert resp.status_code == 200
        body = resp.json()
        assert "D1" in {h["record_id"] for h in body["hits"]}
        assert "D1" in {o["record_id"] for o in body["result"]["relevant_objects"]}

    def test_utf8_round_trip(self, client):
        for query in ["Картины Otto Dix", "伦勃朗 Rembrandt 金链"]:
            resp = client.post("/api/search", json={"query": query})
            assert resp.status_code == 200
            assert resp.json()["query"] == query

    def test_k_override(self, client):
        resp = client.post("/api/search", json={"query": "Otto Dix", "k": 3})
        assert resp.status_code == 200
        assert len(resp.json()["hits"]) == 3

    def test_invalid_k(self, client):
        resp = client.post("/api/search", json={"query": "x", "k": 0})
        assert resp.status_code == 422

    def test_empty_query_rejected(self, client):
        resp = client.post("/api/search", json={"query": ""})
        assert resp.status_code == 422

    def test_concurrent_searches_consistent(self, client):
        def one(_):
            resp = client.post("/api/search", json={"query": "Otto Dix Fischer 1939"})
            assert resp.status_code == 200
            body = resp.json()
            body.pop("timing")
            return json.dumps(body, sort_keys=True)

        with ThreadPoolExecutor(max_workers=16) as pool:
            results = list(pool.map(one, range(16)))
        assert len(set(results)) == 1


class TestRecords:
    def test_get_record(self, client):
        resp = client.get("/api/records/D1")
        assert resp.status_code == 200
        assert resp.json()["artist"] == "Dix, Otto"

    def test_missing_record(self, client):
        assert client.get("/api/records/nope").status_code == 404


class TestRatings:
    def test_valid_rating(self, client, service_env):
        tmp, config = service_env
        resp = client.post("/api/ratings", json={"query_id": "q01", "rating": 3, "note": "good"})
        assert resp.status_code == 201
        journal = (tmp / "ratings.jsonl").read_text("utf-8").splitlines()
        assert json.loads(journal[-1])["query_id"] == "q01"

    def test_rating_out_of_scale(self, client):
        resp = client.post("/api/ratings", json={"query_id": "q01", "rating": 5})
        assert resp.status_code == 422

    def test_duplicate_rating_appends(self, client, service_env):
        tmp, _ = service_env
        client.post("/api/ratings", json={"query_id": "dup", "rating": 1})
        client.post("/api/ratings", json={"query_id": "dup", "rating": 2})
        lines = [json.loads(l) for l in (tmp / "ratings.jsonl").read_text().splitlines()]
        dups = [e["rating"] for e in lines if e["query_id"] == "dup"]
        assert dups == [1, 2]


class TestEvaluate:
    def test_report_latest_before_any_run(self, service_env):
        _, config = service_env
        fresh = TestClient(create_app(config), raise_server_exceptions=False)
        assert fresh.get("/api/report/latest").status_code == 404

    def test_evaluate_and_latest(self, client, service_env):
        tmp, _ = service_env
        resp = client.post("/api/evaluate", json={"suite_path": str(tmp / "queries_20.jsonl")})
        assert resp.status_code == 200
        report = resp.json()
        counts = {r["category"]: r["query_count"] for r in report["rows"]}
        assert counts == {"Specific": 8, "VagueOrBroad": 7, "Multilingual": 2, "OutOfScope": 3}
        assert client.get("/api/report/latest").json() == report

    def test_missing_suite(self, client):
        resp = client.post("/api/evaluate", json={"suite_path": "/nope/suite.jsonl"})
        assert resp.status_code == 404


class TestNo5xx:
    MALFORMED = [
        ("post", "/api/search", b"not json"),
        ("post", "/api/search", b"{}"),
        ("post", "/api/search", b'{"query": 42}'),
        ("post", "/api/search", b'{"query": "x", "k": "many"}'),
        ("post", "/api/ratings", b"[]"),
        ("post", "/api/ratings", b'{"rating": 2}'),
        ("post", "/api/ratings", b'{"query_id": "", "rating": 2}'),
        ("post", "/api/evaluate", b"null"),
        ("get", "/api/records/%00", None),
    ]

    @pytest.mark.parametrize("method,path,body", MALFORMED)
    def test_malformed_never_5xx(self, client, method, path, body):
        if method == "post":
            resp = client.post(path, content=body, headers={"content-type": "application/json"})
        else:
            resp = client.get(path)
        assert 400 <= resp.status_code < 500

import pathlib

import pytest

from provsearch.corpus import augment, parse_records
from provsearch.embedding import LocalEmbedder
from provsearch.index import FlatIndex
from provsearch.pipeline import StubGenerationClient

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"

FIXTURE_DIM = 256


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def fixture_corpus():
    corpus, report = parse_records((FIXTURES / "corpus_50.csv").read_bytes(), "csv")
    assert report.rejected_count == 0
    return corpus


@pytest.fixture(scope="session")
def local_embedder():
    return LocalEmbedder(FIXTURE_DIM)


@pytest.fixture(scope="session")
def fixture_index(fixture_corpus, local_embedder):
    idx = FlatIndex(FIXTURE_DIM)
    for record in fixture_corpus:
        doc = augment(record)
        idx.add(record.record_id, local_embedder.embed([doc.text], ids=[record.record_id])[0])
    idx.freeze()
    return idx


@pytest.fixture(scope="session")
def stub_client():
    return StubGenerationClient()

"""Embedding providers: remote HTTP client and a deterministic local embedder.

The local embedder is a hashed character-trigram bag. It is deterministic and
platform-independent, so the whole retrieval pipeline can run and be tested
without network access. The remote client speaks the de facto embeddings-API
wire shape (POST {model, input: [...]}).
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

import httpx
import numpy as np

from .errors import AuthError, DimensionMismatch, RateLimited, ZeroVector

DEFAULT_REMOTE_DIMENSION = 3072
DEFAULT_BATCH_SIZE = 128
RETRY_ATTEMPTS = 3

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class EmbeddingSpec:
    """Which provider produces vectors and at what dimension."""

    provider: str  # "remote" | "local-deterministic"
    dimension: int
    model_name: str = ""

    def __post_init__(self):
        if self.dimension < 8:
            raise ValueError("embedding dimension must be >= 8")
        if self.provider not in ("remote", "local-deterministic"):
            raise ValueError(f"unknown provider {self.provider!r}")


@dataclass(frozen=True)
class EmbeddingVector:
    """Unit-norm float32 vector tagged with the record id (or a query marker)."""

    record_id: str
    components: np.ndarray  # float32, norm 1

    def __post_init__(self):
        object.__setattr__(self, "components", np.asarray(self.components, dtype=np.float32))


def fnv1a_64(data: bytes) -> int:
    """FNV-1a 64-bit hash of a byte string."""
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


def l2_normalize(v, record_id: str = "") -> EmbeddingVector:
    """Scale a vector to unit Euclidean length.

    Raises ZeroVector when the norm is below 1e-12.
    """
    arr = np.asarray(v, dtype=np.float32)
    if arr.size == 0 or not np.all(np.isfinite(arr)):
        raise ZeroVector("vector has no finite components")
    norm = float(np.linalg.norm(arr.astype(np.float64)))
    if norm < 1e-12:
        raise ZeroVector("cannot normalize a zero vector")
    return EmbeddingVector(record_id=record_id, components=(arr / norm).astype(np.float32))


def embed_local(text: str, dimension: int, record_id: str = "") -> EmbeddingVector:
    """Deterministic hashed character-trigram bag embedding.

    Lowercase the text, take all overlapping 3-character substrings of the
    codepoint sequence, bucket each by FNV-1a 64 of its UTF-8 bytes mod
    dimension, add 1.0 per occurrence, L2-normalize. Texts with no trigrams
    map to the unit vector e_0.
    """
    if dimension < 8:
        raise ValueError("embedding dimension must be >= 8")
    lowered = text.lower()
    counts = np.zeros(dimension, dtype=np.float32)
    for i in range(len(lowered) - 2):
        tri = lowered[i : i + 3]
        counts[fnv1a_64(tri.encode("utf-8")) % dimension] += 1.0
    if not counts.any():
        counts[0] = 1.0
        return EmbeddingVector(record_id=record_id, components=counts)
    return l2_normalize(counts, record_id=record_id)


class LocalEmbedder:
    """Embedder facade over embed_local with a fixed dimension."""

    def __init__(self, dimension: int):
        self.spec = EmbeddingSpec(provider="local-deterministic", dimension=dimension)

    @property
    def dimension(self) -> int:
        return self.spec.dimension

    def embed(self, texts: list[str], ids: list[str] | None = None) -> list[EmbeddingVector]:
        ids = ids or ["" for _ in texts]
        return [embed_local(t, self.spec.dimension, record_id=i) for t, i in zip(texts, ids)]


class RemoteEmbedder:
    """HTTP embedding client with batching and exponential-backoff retry.

    Endpoint, model, and credential come from arguments or the environment
    variables EMBED_API_BASE, EMBED_API_KEY, EMBED_MODEL.
    """

    def __init__(
        self,
        spec: EmbeddingSpec | None = None,
        api_base: str | None = None,
        api_key: str | None = None,
        batch_size: int = DEFAULT_BATCH_SIZE,
        transport: httpx.BaseTransport | None = None,
        backoff_base: float = 0.5,
    ):
        model = os.environ.get("EMBED_MODEL", "text-embedding-3-large")
        self.spec = spec or EmbeddingSpec(
            provider="remote", dimension=DEFAULT_REMOTE_DIMENSION, model_name=model
        )
        self.api_base = (api_base or os.environ.get("EMBED_API_BASE", "")).rstrip("/")
        self.api_key = api_key or os.environ.get("EMBED_API_KEY", "")
        self.batch_size = batch_size
        self.backoff_base = backoff_base
        self._client = httpx.Client(transport=transport, timeout=60.0)

    @property
    def dimension(self) -> int:
        return self.spec.dimension

    def embed(self, texts: list[str], ids: list[str] | None = None) -> list[EmbeddingVector]:
        if not texts:
            return []
        if not self.api_base:
            raise AuthError("EMBED_API_BASE is not configured")
        if not self.api_key:
            raise AuthError("EMBED_API_KEY is not configured")
        ids = ids or ["" for _ in texts]
        out: list[EmbeddingVector] = []
        for start in range(0, len(texts), self.batch_size):
            batch = texts[start : start + self.batch_size]
            batch_ids = ids[start : start + self.batch_size]
            out.extend(self._embed_batch(batch, batch_ids))
        return out

    def _embed_batch(self, texts: list[str], ids: list[str]) -> list[EmbeddingVector]:
        body = {"model": self.spec.model_name, "input": texts}
        url = f"{self.api_base}/embeddings"
        headers = {"Authorization": f"Bearer {self.api_key}"}
        last_exc: Exception | None = None
        for attempt in range(RETRY_ATTEMPTS):
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
            if resp.status_code >= 500:
                last_exc = RuntimeError(f"HTTP {resp.status_code}")
                continue
            resp.raise_for_status()
            return self._parse_batch(resp.json(), texts, ids)
        if isinstance(last_exc, RateLimited):
            raise last_exc
        raise RateLimited(f"request failed after {RETRY_ATTEMPTS} attempts: {last_exc}")

    def _parse_batch(self, payload: dict, texts: list[str], ids: list[str]) -> list[EmbeddingVector]:
        data = sorted(payload["data"], key=lambda item: item.get("index", 0))
        if len(data) != len(texts):
            raise DimensionMismatch(
                f"provider returned {len(data)} vectors for {len(texts)} inputs"
            )
        vectors = []
        for item, rid in zip(data, ids):
            emb = item["embedding"]
            if len(emb) != self.spec.dimension:
                raise DimensionMismatch(
                    f"provider returned dimension {len(emb)}, spec says {self.spec.dimension}; "
                    "check the model name"
                )
            vectors.append(l2_normalize(emb, record_id=rid))
        return vectors


def make_embedder(kind: str, dimension: int):
    """Construct an embedder from a config string ('local' or 'remote')."""
    if kind == "local":
        return LocalEmbedder(dimension)
    if kind == "remote":
        spec = EmbeddingSpec(
            provider="remote",
            dimension=dimension,
            model_name=os.environ.get("EMBED_MODEL", "text-embedding-3-large"),
        )
        return RemoteEmbedder(spec=spec)
    raise ValueError(f"unknown embedder kind {kind!r}")

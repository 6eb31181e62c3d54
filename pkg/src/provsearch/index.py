"""Exact flat inner-product index with binary persistence.

All stored vectors are unit-norm float32, so inner product equals cosine
similarity. Search is an exact linear scan over a contiguous matrix; ties are
broken by ascending record_id so results are deterministic regardless of
insertion order.

File format (little-endian): magic "PVIX", version u32 = 1, dimension u32,
count u64, count x dimension float32 vectors, id table (count x [u32 length,
UTF-8 bytes]), CRC32C of all preceding bytes (u32).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .embedding import EmbeddingVector
from .errors import (
    BadMagic,
    ChecksumMismatch,
    DimensionMismatch,
    DuplicateId,
    TruncatedFile,
    UnsupportedVersion,
)

MAGIC = b"PVIX"
FORMAT_VERSION = 1


crc32c = kernels.crc32c


@dataclass(frozen=True)
class SearchHit:
    record_id: str
    score: float
    rank: int  # 1-based


class FlatIndex:
    """Ordered collection of (record_id, unit vector) supporting exact top-k."""

    def __init__(self, dimension: int):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        self._ids: list[str] = []
        self._id_set: set[str] = set()
        self._vectors: list[np.ndarray] = []
        self._matrix: np.ndarray | None = None
        self._frozen = False

    def __len__(self) -> int:
        return len(self._ids)

    def ids(self) -> list[str]:
        return list(self._ids)

    def add(self, record_id: str, vector: EmbeddingVector | np.ndarray) -> None:
        if self._frozen:
            raise RuntimeError("index is frozen")
        arr = vector.components if isinstance(vector, EmbeddingVector) else np.asarray(vector)
        arr = np.asarray(arr, dtype=np.float32)
        if arr.shape != (self.dimension,):
            raise DimensionMismatch(
                f"vector has length {arr.shape}, index dimension is {self.dimension}"
            )
        norm = float(np.linalg.norm(arr.astype(np.float64)))
        if abs(norm - 1.0) > 1e-4:
            raise ValueError(f"vector for {record_id!r} is not unit-norm (norm={norm})")
        if record_id in self._id_set:
            raise DuplicateId(record_id)
        self._ids.append(record_id)
        self._id_set.add(record_id)
        self._vectors.append(arr)
        self._matrix = None

    def freeze(self) -> None:
        """Materialize the contiguous scan matrix; index becomes immutable."""
        self._materialize()
        self._frozen = True

    def _materialize(self) -> np.ndarray:
        if self._matrix is None:
            if self._vectors:
                self._matrix = np.ascontiguousarray(np.stack(self._vectors))
            else:
                self._matrix = np.empty((0, self.dimension), dtype=np.float32)
        return self._matrix

    def search(self, query: EmbeddingVector | np.ndarray, k: int) -> list[SearchHit]:
        """Exact top-k by cosine similarity; ties broken by ascending record_id."""
        if k < 1:
            raise ValueError("k must be >= 1")
        q = query.components if isinstance(query, EmbeddingVector) else np.asarray(query)
        q = np.asarray(q, dtype=np.float32)
        if q.shape != (self.dimension,):
            raise DimensionMismatch(
                f"query has length {q.shape}, index dimension is {self.dimension}"
            )
        if not self._ids:
            return []
        matrix = self._materialize()
        scores = kernels.scan_scores(matrix, q)
        m = min(k, len(self._ids))
        # Candidate pre-selection by score, then full (score desc, id asc) order.
        if len(scores) > 4 * m:
            cand = np.argpartition(-scores, 4 * m - 1)[: 4 * m]
        else:
            cand = np.arange(len(scores))
        ranked = sorted(cand, key=lambda i: (-scores[i], self._ids[i]))[:m]
        return [
            SearchHit(record_id=self._ids[i], score=float(scores[i]), rank=r + 1)
            for r, i in enumerate(ranked)
        ]

    # --- persistence ---

    def save(self, path: str | Path) -> None:
        matrix = self._materialize()
        parts = [
            MAGIC,
            struct.pack("<I", FORMAT_VERSION),
            struct.pack("<I", self.dimension),
            struct.pack("<Q", len(self._ids)),
            matrix.astype("<f4").tobytes(),
        ]
        for rid in self._ids:
            raw = rid.encode("utf-8")
            parts.append(struct.pack("<I", len(raw)))
            parts.append(raw)
        body = b"".join(parts)
        Path(path).write_bytes(body + struct.pack("<I", crc32c(body)))

    @classmethod
    def load(cls, path: str | Path) -> "FlatIndex":
        data = Path(path).read_bytes()
        if len(data) < 4 or data[:4] != MAGIC:
            raise BadMagic(f"{path}: not a PVIX index file")
        if len(data) < 20 + 4:
            raise TruncatedFile(f"{path}: header incomplete")
        version, dimension = struct.unpack_from("<II", data, 4)
        if version != FORMAT_VERSION:
            raise UnsupportedVersion(f"{path}: format version {version}")
        (count,) = struct.unpack_from("<Q", data, 12)
        offset = 20
        vec_bytes = count * dimension * 4
        if len(data) < offset + vec_bytes:
            raise TruncatedFile(f"{path}: vector block incomplete")
        matrix = np.frombuffer(data, dtype="<f4", count=count * dimension, offset=offset)
        matrix = matrix.reshape(count, dimension).astype(np.float32)
        offset += vec_bytes
        ids = []
        for _ in range(count):
            if len(data) < offset + 4:
                raise TruncatedFile(f"{path}: id table incomplete")
            (n,) = struct.unpack_from("<I", data, offset)
            offset += 4
            if len(data) < offset + n:
                raise TruncatedFile(f"{path}: id table incomplete")
            ids.append(data[offset : offset + n].decode("utf-8"))
            offset += n
        if len(data) < offset + 4:
            raise TruncatedFile(f"{path}: checksum missing")
        (stored_crc,) = struct.unpack_from("<I", data, offset)
        if len(data) != offset + 4:
            raise TruncatedFile(f"{path}: trailing bytes after checksum")
        if crc32c(data[:offset]) != stored_crc:
            raise ChecksumMismatch(f"{path}: checksum mismatch")
        index = cls(dimension)
        for rid, row in zip(ids, matrix):
            index.add(rid, row)
        index.freeze()
        return index

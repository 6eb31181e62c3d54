"""Hot numeric kernels for the flat index scan.

Two interchangeable backends compute the same scores: a numba @njit loop and
a pure-numpy path. Set PROVSEARCH_NO_NUMBA=1 to force the numpy path (also
used automatically when numba is unavailable). Scores accumulate in float64
from float32 inputs.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("PROVSEARCH_NO_NUMBA", "") == "1"


def scan_scores_numpy(matrix: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Inner products of every row of matrix (f32, n x d) with query (f32, d)."""
    return matrix.astype(np.float64) @ query.astype(np.float64)


def _make_crc32c_table() -> np.ndarray:
    poly = np.uint64(0x82F63B78)
    table = np.empty(256, dtype=np.uint64)
    for n in range(256):
        c = np.uint64(n)
        for _ in range(8):
            c = (c >> np.uint64(1)) ^ poly if c & np.uint64(1) else c >> np.uint64(1)
        table[n] = c
    return table.astype(np.uint32)


CRC32C_TABLE = _make_crc32c_table()


def crc32c_python(data: bytes, crc: int = 0) -> int:
    """CRC32C (Castagnoli), table-driven byte loop."""
    table = CRC32C_TABLE
    crc ^= 0xFFFFFFFF
    for b in data:
        crc = int(table[(crc ^ b) & 0xFF]) ^ (crc >> 8)
    return crc ^ 0xFFFFFFFF


if not _FORCE_NUMPY:
    try:
        from numba import njit

        @njit(cache=True, nogil=True)
        def _scan_scores_njit(matrix, query):
            n, d = matrix.shape
            out = np.empty(n, dtype=np.float64)
            for i in range(n):
                acc = 0.0
                for j in range(d):
                    acc += np.float64(matrix[i, j]) * np.float64(query[j])
                out[i] = acc
            return out

        def scan_scores_numba(matrix: np.ndarray, query: np.ndarray) -> np.ndarray:
            return _scan_scores_njit(np.ascontiguousarray(matrix), np.ascontiguousarray(query))

        @njit(cache=True, nogil=True)
        def _crc32c_njit(buf, table, crc):
            crc ^= np.uint32(0xFFFFFFFF)
            for i in range(buf.shape[0]):
                idx = (crc ^ np.uint32(buf[i])) & np.uint32(0xFF)
                crc = table[idx] ^ (crc >> np.uint32(8))
            return crc ^ np.uint32(0xFFFFFFFF)

        def crc32c_numba(data: bytes, crc: int = 0) -> int:
            buf = np.frombuffer(data, dtype=np.uint8)
            return int(_crc32c_njit(buf, CRC32C_TABLE, np.uint32(crc)))

        scan_scores = scan_scores_numba
        crc32c = crc32c_numba
        BACKEND = "numba"
    except ImportError:
        scan_scores = scan_scores_numpy
        crc32c = crc32c_python
        BACKEND = "numpy"
else:
    scan_scores = scan_scores_numpy
    crc32c = crc32c_python
    BACKEND = "numpy"

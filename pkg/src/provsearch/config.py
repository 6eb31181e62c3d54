"""Application configuration: file-based with environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class AppConfig:
    corpus_path: str = "corpus.jsonl"
    index_path: str = "index.pvix"
    embedder: str = "local"  # "local" | "remote"
    dimension: int = 256
    k: int = 10
    similarity_floor: float | None = None
    generation: str = "stub"  # "stub" | "remote"
    bind_host: str = "127.0.0.1"
    bind_port: int = 8000
    parallelism: int = 4
    ratings_path: str = "ratings.jsonl"
    static_dir: str | None = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.embedder not in ("local", "remote"):
            raise ValueError(f"unknown embedder {self.embedder!r}")
        if self.generation not in ("stub", "remote"):
            raise ValueError(f"unknown generation client {self.generation!r}")

    def validate_paths(self) -> None:
        for name in ("corpus_path", "index_path"):
            p = Path(getattr(self, name))
            if not p.exists():
                raise FileNotFoundError(f"{name} {p} does not exist")


_ENV_OVERRIDES = {
    "PROVSEARCH_CORPUS": ("corpus_path", str),
    "PROVSEARCH_INDEX": ("index_path", str),
    "PROVSEARCH_EMBEDDER": ("embedder", str),
    "PROVSEARCH_DIMENSION": ("dimension", int),
    "PROVSEARCH_K": ("k", int),
    "PROVSEARCH_GENERATION": ("generation", str),
    "PROVSEARCH_BIND_HOST": ("bind_host", str),
    "PROVSEARCH_BIND_PORT": ("bind_port", int),
    "PROVSEARCH_RATINGS": ("ratings_path", str),
    "PROVSEARCH_STATIC_DIR": ("static_dir", str),
}


def load_config(path: str | Path | None = None) -> AppConfig:
    """Read a JSON config file (optional) and apply environment overrides."""
    values: dict = {}
    if path is not None:
        values = json.loads(Path(path).read_text("utf-8"))
    known = set(AppConfig.__dataclass_fields__) - {"extra"}
    extra = {k: v for k, v in values.items() if k not in known}
    values = {k: v for k, v in values.items() if k in known}
    for env, (key, cast) in _ENV_OVERRIDES.items():
        if env in os.environ:
            values[key] = cast(os.environ[env])
    return AppConfig(extra=extra, **values)

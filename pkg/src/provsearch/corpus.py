"""Auction-record ingestion and metadata-augmented text rendering.

Records come in as CSV or JSONL exports with a fixed set of columns. Each
record is rendered into a single augmented text document that inlines every
present metadata field, so one embedding captures both content and metadata.
"""

from __future__ import annotations

import csv
import datetime
import io
import json
from dataclasses import dataclass, field

from .errors import DuplicateId, MalformedRow

CSV_HEADER = [
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
]

_OPTIONAL_FIELDS = {"material", "dimensions", "catalogue_number", "source_url", "title", "object_type"}


@dataclass(frozen=True)
class AuctionRecord:
    """One provenance/auction catalogue entry."""

    record_id: str
    artist: str
    title: str
    object_type: str
    auction_house: str
    sale_date: str  # canonical YYYY-MM-DD
    material: str | None = None
    dimensions: str | None = None
    catalogue_number: str | None = None
    source_url: str | None = None

    def as_dict(self) -> dict:
        return {
            "record_id": self.record_id,
            "artist": self.artist,
            "title": self.title,
            "object_type": self.object_type,
            "material": self.material,
            "dimensions": self.dimensions,
            "auction_house": self.auction_house,
            "sale_date": self.sale_date,
            "catalogue_number": self.catalogue_number,
            "source_url": self.source_url,
        }


@dataclass(frozen=True)
class AugmentedDocument:
    """The unified text form of a record that gets embedded."""

    record_id: str
    text: str

    @property
    def char_length(self) -> int:
        return len(self.text)


@dataclass
class IngestReport:
    """Counts and row-level diagnostics from one parse_records call."""

    accepted: int = 0
    rejected: list[MalformedRow] = field(default_factory=list)
    dropped_columns: int = 0

    @property
    def rejected_count(self) -> int:
        return len(self.rejected)


class Corpus:
    """Immutable-after-ingest ordered collection of records keyed by id."""

    def __init__(self, records: list[AuctionRecord] | None = None):
        self._records: dict[str, AuctionRecord] = {}
        for r in records or []:
            self.add(r)

    def add(self, record: AuctionRecord) -> None:
        if record.record_id in self._records:
            raise DuplicateId(record.record_id)
        self._records[record.record_id] = record

    def get(self, record_id: str) -> AuctionRecord | None:
        return self._records.get(record_id)

    def __len__(self) -> int:
        return len(self._records)

    def __iter__(self):
        return iter(self._records.values())

    def __contains__(self, record_id: str) -> bool:
        return record_id in self._records

    def ids(self) -> list[str]:
        return list(self._records.keys())


def _canonical_date(raw: str) -> str:
    """Normalize a date string to YYYY-MM-DD; raises ValueError if unparseable.

    Accepts plain dates and datetime strings like '1939-06-30 00:00:00'
    (time-of-day carries no information in auction data and is dropped).
    """
    raw = raw.strip()
    head = raw.split(" ")[0].split("T")[0]
    return datetime.date.fromisoformat(head).isoformat()


def _record_from_mapping(row: dict, row_number: int) -> AuctionRecord:
    record_id = (row.get("record_id") or "").strip()
    if not record_id:
        raise MalformedRow(row_number, "missing record_id")
    sale_raw = (row.get("sale_date") or "").strip()
    if not sale_raw:
        raise MalformedRow(row_number, "missing sale_date")
    try:
        sale_date = _canonical_date(sale_raw)
    except ValueError:
        raise MalformedRow(row_number, f"unparseable sale_date {sale_raw!r}")

    def opt(key: str) -> str | None:
        v = (row.get(key) or "").strip()
        return v or None

    return AuctionRecord(
        record_id=record_id,
        artist=(row.get("artist") or "").strip(),
        title=(row.get("title") or "").strip(),
        object_type=(row.get("object_type") or "").strip(),
        auction_house=(row.get("auction_house") or "").strip(),
        sale_date=sale_date,
        material=opt("material"),
        dimensions=opt("dimensions"),
        catalogue_number=opt("catalogue_number"),
        source_url=opt("source_url"),
    )


def parse_records(source: bytes | io.IOBase, format: str) -> tuple[Corpus, IngestReport]:
    """Parse a CSV or JSONL byte stream into a Corpus.

    Malformed rows are skipped and reported; duplicate record_ids are fatal.
    Unknown columns are dropped (counted in the report).
    """
    if isinstance(source, bytes):
        data = source
    else:
        data = source.read()
        if isinstance(data, str):
            data = data.encode("utf-8")
    text = data.decode("utf-8")

    corpus = Corpus()
    report = IngestReport()

    if format == "csv":
        reader = csv.DictReader(io.StringIO(text))
        known = set(CSV_HEADER)
        if reader.fieldnames:
            report.dropped_columns = sum(1 for c in reader.fieldnames if c not in known)
        rows = ((i + 2, {k: v for k, v in row.items() if k in known}) for i, row in enumerate(reader))
    elif format == "jsonl":
        def jsonl_rows():
            known = set(CSV_HEADER)
            for i, line in enumerate(text.splitlines()):
                if not line.strip():
                    continue
                obj = json.loads(line)
                dropped = sum(1 for k in obj if k not in known)
                report.dropped_columns += dropped
                yield i + 1, {k: v for k, v in obj.items() if k in known}
        rows = jsonl_rows()
    else:
        raise ValueError(f"unknown format {format!r}")

    for row_number, row in rows:
        try:
            record = _record_from_mapping(row, row_number)
        except MalformedRow as e:
            report.rejected.append(e)
            continue
        corpus.add(record)  # DuplicateId propagates: fatal
        report.accepted += 1

    return corpus, report


def serialize_jsonl(corpus: Corpus) -> bytes:
    """Re-export a corpus as JSONL, one record per line, keys in header order."""
    lines = []
    for r in corpus:
        obj = {k: r.as_dict()[k] for k in CSV_HEADER}
        lines.append(json.dumps(obj, ensure_ascii=False))
    return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")


# Field label order for the augmented rendering. Fixed so augmentation is
# deterministic and golden-testable.
_LABELED_FIELDS = [
    ("Auction House", "auction_house"),
    ("Sale Date", "sale_date"),
    ("Artist", "artist"),
    ("Title", "title"),
    ("Object Type", "object_type"),
    ("Material", "material"),
    ("Dimensions", "dimensions"),
    ("Catalogue Number", "catalogue_number"),
]

_METADATA_KEYS = [
    ("source", "source_url"),
    ("sale_date", "sale_date"),
    ("artist", "artist"),
    ("auction_house", "auction_house"),
    ("dimensions", "dimensions"),
]


def augment(record: AuctionRecord) -> AugmentedDocument:
    """Render a record as one augmented text document.

    Present fields appear once each as "Label: value" clauses in canonical
    order, followed by a Metadata clause of key/value pairs. Absent optional
    fields are omitted entirely.
    """
    d = record.as_dict()
    clauses = []
    for label, key in _LABELED_FIELDS:
        value = d.get(key)
        if value:
            clauses.append(f"{label}: {value}")
    meta_pairs = [(mk, d[key]) for mk, key in _METADATA_KEYS if d.get(key)]
    meta = ", ".join(f"'{k}': '{v}'" for k, v in meta_pairs)
    clauses.append("Metadata: {" + meta + "}")
    return AugmentedDocument(record_id=record.record_id, text=" ".join(clauses))

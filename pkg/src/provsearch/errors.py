"""Exception hierarchy shared across the package."""


class ProvSearchError(Exception):
    """Base class for all errors raised by this package."""


# --- ingestion ---

class MalformedRow(ProvSearchError):
    """A source row is missing record_id or has an unparseable sale_date."""

    def __init__(self, row_number: int, reason: str):
        self.row_number = row_number
        self.reason = reason
        super().__init__(f"row {row_number}: {reason}")


class DuplicateId(ProvSearchError):
    """A record_id appeared more than once; fatal for ingestion and indexing."""


# --- embedding ---

class AuthError(ProvSearchError):
    """Remote provider rejected the credential; not retriable."""


class RateLimited(ProvSearchError):
    """Remote provider rate-limited the request past the retry budget."""


class DimensionMismatch(ProvSearchError):
    """Vector length disagrees with the configured dimension."""


class ZeroVector(ProvSearchError):
    """Cannot normalize a vector whose norm is effectively zero."""


# --- index persistence ---

class BadMagic(ProvSearchError):
    """Index file does not start with the expected magic bytes."""


class UnsupportedVersion(ProvSearchError):
    """Index file carries a format version this code does not understand."""


class TruncatedFile(ProvSearchError):
    """Index file ends before the declared payload is complete."""


class ChecksumMismatch(ProvSearchError):
    """Index file checksum does not match its contents."""


# --- pipeline ---

class MissingDocument(ProvSearchError):
    """Index holds a record_id absent from the corpus; stores are out of sync."""


class ContextTooLong(ProvSearchError):
    """Generation provider rejected the prompt as too large."""


class UnparseableResponse(ProvSearchError):
    """Model reply contained no recognizable structured block."""


# --- eval ---

class UnknownField(ProvSearchError):
    """A ground-truth predicate references a field not in the record schema."""


class StageError(ProvSearchError):
    """Wraps a failure with the pipeline stage where it occurred."""

    def __init__(self, stage: str, cause: Exception):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage '{stage}': {cause}")

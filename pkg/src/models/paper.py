"""
Literature models: queries, paper records, rerank decisions and document text.
"""

from datetime import date
from typing import Optional, Sequence

from pydantic import Field, field_validator

from src.errors import QuerySetError
from .base import BaseModelWithConfig, ExtractionMethod, PaperSource

MIN_YEAR = 1900


def max_year() -> int:
    return date.today().year + 1


class QuerySet(BaseModelWithConfig):
    """Rewritten search queries: problem name first, then broad, then precise."""

    queries: tuple[str, ...]

    @classmethod
    def build(cls, queries: Sequence[object], expected: int) -> "QuerySet":
        """
        Validate arity and distinctness.

        Raises:
            QuerySetError: wrong length, empty entry or repeated entry
        """
        cleaned = [str(q).strip() if q is not None else "" for q in queries]
        if len(cleaned) != expected:
            raise QuerySetError(f"Expected exactly {expected} queries, got {len(cleaned)}")
        if any(not q for q in cleaned):
            raise QuerySetError("Query list contains an empty entry")

        seen = set()
        for q in cleaned:
            key = " ".join(q.casefold().split())
            if key in seen:
                raise QuerySetError(f"Duplicate query: {q!r}")
            seen.add(key)
        return cls(queries = tuple(cleaned))

    def __len__(self) -> int:
        return len(self.queries)


class PaperRecord(BaseModelWithConfig):
    """
    Normalized scholarly metadata record.

    Attributes:
        rank: 1-based position in the source's relevance ranking for its query
        query_index: which rewritten query produced the record
    """

    source: PaperSource
    title: str
    abstract: str = ""
    venue: str = ""
    year: int
    citations: int = Field(default = 0, ge = 0)
    doi: Optional[str] = None
    arxiv_id: Optional[str] = None
    authors: tuple[str, ...] = ()
    fulltext_url: str = ""
    rank: int = Field(..., ge = 1)
    query_index: int = Field(default = 0, ge = 0)

    @field_validator("title")
    @classmethod
    def title_not_blank(cls, v: str) -> str:
        v = " ".join(v.split())
        if not v:
            raise ValueError("title must not be empty")
        return v

    @field_validator("year")
    @classmethod
    def year_in_range(cls, v: int) -> int:
        if not MIN_YEAR <= v <= max_year():
            raise ValueError(f"year {v} outside [{MIN_YEAR}, {max_year()}]")
        return v

    @field_validator("doi")
    @classmethod
    def normalize_doi(cls, v: Optional[str]) -> Optional[str]:
        if not v:
            return None
        v = v.strip()
        for prefix in ("https://doi.org/", "http://doi.org/", "doi:"):
            if v.lower().startswith(prefix):
                v = v[len(prefix):]
        return v.lower() or None


class RerankDecision(BaseModelWithConfig):
    """Top-1 recommendation resolved against the candidate pool."""

    algorithm_name: str
    paper_title: str
    venue: str = ""
    year: Optional[int] = None
    reason: str = ""
    record: PaperRecord
    pool_index: int = Field(..., ge = 0)


class DocumentText(BaseModelWithConfig):
    """
    Plain text of the Top-1 paper, plus the identity used in generation prompts.
    """

    text: str
    locator: str
    method: ExtractionMethod
    paper_title: str
    venue: str = "unknown"
    year: str = "unknown"
    algorithm_name: str = ""

    @field_validator("text")
    @classmethod
    def text_not_blank(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("document text is empty")
        return v

    @property
    def char_count(self) -> int:
        return len(self.text)

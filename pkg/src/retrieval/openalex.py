"""
OpenAlex works search.
"""

import json
import logging
import re
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from config.settings import RetrievalSettings
from src.errors import MalformedPayloadError
from src.models import PaperRecord, PaperSource
from .http import PayloadFetcher

logger = logging.getLogger(__name__)

_ARXIV_URL = re.compile(r"arxiv\.org/(?:abs|pdf)/([0-9]{4}\.[0-9]{4,5}|[a-z\-]+(?:\.[A-Z]{2})?/[0-9]{7})", re.I)
_ARXIV_DOI = re.compile(r"10\.48550/arxiv\.(.+)$", re.I)


def rebuild_abstract(index: Optional[Dict[str, List[int]]]) -> str:
    """Rebuild abstract text from OpenAlex's inverted index."""
    if not index:
        return ""
    positions = []
    for word, offsets in index.items():
        for offset in offsets:
            positions.append((offset, word))
    return " ".join(word for _, word in sorted(positions))


def _arxiv_id(work: Dict[str, Any], doi: Optional[str]) -> Optional[str]:
    if doi:
        match = _ARXIV_DOI.search(doi)
        if match:
            return match.group(1)
    candidates = [(work.get("ids") or {}).get("arxiv")]
    for location in [work.get("primary_location")] + list(work.get("locations") or []):
        if location:
            candidates.extend([location.get("landing_page_url"), location.get("pdf_url")])
    for url in candidates:
        if url:
            match = _ARXIV_URL.search(url)
            if match:
                return match.group(1)
    return None


def _fulltext_url(work: Dict[str, Any]) -> str:
    best = work.get("best_oa_location") or {}
    primary = work.get("primary_location") or {}
    open_access = work.get("open_access") or {}
    return best.get("pdf_url") or primary.get("pdf_url") or open_access.get("oa_url") or ""


def parse_work(work: Dict[str, Any], rank: int, query_index: int = 0) -> Optional[PaperRecord]:
    """Normalize one work; None when it lacks a usable title or year."""
    title = work.get("title") or work.get("display_name") or ""
    primary = work.get("primary_location") or {}
    venue = ((primary.get("source") or {}).get("display_name")) or ""
    doi = work.get("doi")
    authors = tuple(
        (a.get("author") or {}).get("display_name", "")
        for a in work.get("authorships") or []
        if (a.get("author") or {}).get("display_name")
    )

    try:
        return PaperRecord(
            source = PaperSource.OPENALEX,
            title = title,
            abstract = rebuild_abstract(work.get("abstract_inverted_index")),
            venue = venue,
            year = work.get("publication_year"),
            citations = work.get("cited_by_count") or 0,
            doi = doi,
            arxiv_id = _arxiv_id(work, doi),
            authors = authors,
            fulltext_url = _fulltext_url(work),
            rank = rank,
            query_index = query_index,
        )
    except ValidationError as e:
        logger.warning(f"Dropping OpenAlex work {work.get('id')}: {e.errors()[0]['msg']}")
        return None


def parse_openalex(payload: bytes, cap: int, query_index: int = 0) -> List[PaperRecord]:
    """
    Parse a works search response.

    Raises:
        MalformedPayloadError: not JSON, or no `results` list
    """
    try:
        data = json.loads(payload)
    except (ValueError, UnicodeDecodeError) as e:
        raise MalformedPayloadError(f"OpenAlex payload is not JSON: {e}") from e
    if not isinstance(data, dict) or not isinstance(data.get("results"), list):
        raise MalformedPayloadError("OpenAlex payload has no 'results' list")

    records: List[PaperRecord] = []
    for work in data["results"]:
        if len(records) >= cap:
            break
        if not isinstance(work, dict):
            continue
        # The cap and the rank count usable works only.
        record = parse_work(work, rank = len(records) + 1, query_index = query_index)
        if record is not None:
            records.append(record)
    return records


class OpenAlexClient:
    """OpenAlex works search, ranked by relevance."""

    source = PaperSource.OPENALEX

    def __init__(self, fetcher: PayloadFetcher, cfg: RetrievalSettings):
        self.fetcher = fetcher
        self.cfg = cfg

    def params(self, query: str, cap: int) -> Dict[str, Any]:
        params: Dict[str, Any] = {
            "search": query,
            "per_page": min(cap, 200),
            "sort": "relevance_score:desc",
        }
        if self.cfg.mailto:
            params["mailto"] = str(self.cfg.mailto)
        return params

    async def search(self, query: str, cap: int, query_index: int = 0) -> List[PaperRecord]:
        payload = await self.fetcher.get(
            self.source.value, query, "json", self.cfg.openalex_url, self.params(query, cap)
        )
        return parse_openalex(payload, cap, query_index)

"""
arXiv Atom query API.
"""

import logging
import re
import xml.etree.ElementTree as ET
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from config.settings import RetrievalSettings
from src.errors import MalformedPayloadError
from src.models import PaperRecord, PaperSource
from .http import PayloadFetcher

logger = logging.getLogger(__name__)

NS = {
    "atom": "http://www.w3.org/2005/Atom",
    "arxiv": "http://arxiv.org/schemas/atom",
}

_VERSION = re.compile(r"v\d+$")


def _text(element: ET.Element, path: str) -> str:
    found = element.find(path, NS)
    if found is None or found.text is None:
        return ""
    return " ".join(found.text.split())


def _arxiv_id(raw: str) -> Optional[str]:
    # http://arxiv.org/abs/1910.01739v4 -> 1910.01739
    if not raw:
        return None
    tail = raw.split("/abs/", 1)[-1]
    return _VERSION.sub("", tail) or None


def _year(published: str) -> Optional[int]:
    match = re.match(r"(\d{4})", published)
    return int(match.group(1)) if match else None


def _pdf_link(entry: ET.Element) -> str:
    for link in entry.findall("atom:link", NS):
        if link.get("title") == "pdf" or link.get("type") == "application/pdf":
            return link.get("href", "")
    return ""


def parse_entry(entry: ET.Element, rank: int, query_index: int = 0) -> Optional[PaperRecord]:
    authors = tuple(
        name for name in (_text(a, "atom:name") for a in entry.findall("atom:author", NS)) if name
    )
    try:
        return PaperRecord(
            source = PaperSource.ARXIV,
            title = _text(entry, "atom:title"),
            abstract = _text(entry, "atom:summary"),
            venue = _text(entry, "arxiv:journal_ref") or "arXiv",
            year = _year(_text(entry, "atom:published")),
            doi = _text(entry, "arxiv:doi") or None,
            arxiv_id = _arxiv_id(_text(entry, "atom:id")),
            authors = authors,
            fulltext_url = _pdf_link(entry),
            rank = rank,
            query_index = query_index,
        )
    except ValidationError as e:
        logger.warning(f"Dropping arXiv entry {_text(entry, 'atom:id')}: {e.errors()[0]['msg']}")
        return None


def parse_arxiv(payload: bytes, cap: int, query_index: int = 0) -> List[PaperRecord]:
    """
    Parse an Atom feed into records, in feed order.

    Raises:
        MalformedPayloadError: the payload is not well-formed XML or not an Atom feed
    """
    try:
        root = ET.fromstring(payload)
    except ET.ParseError as e:
        raise MalformedPayloadError(f"arXiv payload is not well-formed XML: {e}") from e
    if root.tag != f"{{{NS['atom']}}}feed":
        raise MalformedPayloadError(f"arXiv payload root is {root.tag}, expected an Atom feed")

    records: List[PaperRecord] = []
    for entry in root.findall("atom:entry", NS):
        if len(records) >= cap:
            break
        record = parse_entry(entry, rank = len(records) + 1, query_index = query_index)
        if record is not None:
            records.append(record)
    return records


class ArxivClient:
    """arXiv search sorted by relevance."""

    source = PaperSource.ARXIV

    def __init__(self, fetcher: PayloadFetcher, cfg: RetrievalSettings):
        self.fetcher = fetcher
        self.cfg = cfg

    def params(self, query: str, cap: int) -> Dict[str, Any]:
        return {
            "search_query": f'all:"{query}"',
            "start": 0,
            "max_results": cap,
            "sortBy": "relevance",
            "sortOrder": "descending",
        }

    async def search(self, query: str, cap: int, query_index: int = 0) -> List[PaperRecord]:
        payload = await self.fetcher.get(
            self.source.value, query, "xml", self.cfg.arxiv_url, self.params(query, cap)
        )
        return parse_arxiv(payload, cap, query_index)

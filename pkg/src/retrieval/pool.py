"""
Candidate pool: per-source dedup, recency sort and truncation.
"""

import logging
import re
from typing import Iterable, List, Sequence

from config.pipeline import PipelineConfig
from src.models import PaperRecord, PaperSource

logger = logging.getLogger(__name__)

_NON_WORD = re.compile(r"[\W_]+", re.UNICODE)


def normalize_title(title: str) -> str:
    """Casefold and drop punctuation and whitespace."""
    return _NON_WORD.sub("", title.casefold())


def is_duplicate(a: PaperRecord, b: PaperRecord) -> bool:
    """DOI when both have one, else arXiv id when both have one, else normalized title."""
    if a.doi and b.doi:
        return a.doi == b.doi
    if a.arxiv_id and b.arxiv_id:
        return a.arxiv_id == b.arxiv_id
    return normalize_title(a.title) == normalize_title(b.title)


def deduplicate(records: Sequence[PaperRecord]) -> List[PaperRecord]:
    """Keep the better-ranked record of every duplicate group (single source)."""
    order = sorted(range(len(records)), key = lambda i: (records[i].rank, records[i].query_index, i))
    kept: List[int] = []
    for i in order:
        if not any(is_duplicate(records[i], records[j]) for j in kept):
            kept.append(i)
    return [records[i] for i in sorted(kept)]


def _recency_key(record: PaperRecord):
    return (
        -record.year,
        -record.citations,
        record.rank,
        normalize_title(record.title),
        record.doi or record.arxiv_id or "",
        record.query_index,
    )


def _block(records: Iterable[PaperRecord], source: PaperSource, keep: int) -> List[PaperRecord]:
    own = [r for r in records if r.source == source]
    unique = deduplicate(own)
    ordered = sorted(unique, key = _recency_key)
    logger.debug(
        f"{source.value}: {len(own)} raw, {len(unique)} unique, keeping {min(keep, len(ordered))}"
    )
    return ordered[:keep]


def build_candidate_pool(records: Sequence[PaperRecord], config: PipelineConfig) -> List[PaperRecord]:
    """
    Build the rerank pool: OpenAlex block then arXiv block.

    Each block is deduplicated independently, sorted newest first (ties:
    more citations, better rank, title) and cut to its keep count. Works
    listed on both sources are not merged.
    """
    pool = _block(records, PaperSource.OPENALEX, config.keep_openalex)
    pool += _block(records, PaperSource.ARXIV, config.keep_arxiv)
    return pool[:config.rerank_pool]

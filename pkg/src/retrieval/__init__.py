"""
Literature retrieval: OpenAlex and arXiv search, pooling and full text.

Usage:
    from src.retrieval import LiteratureSearch, build_candidate_pool

    search = LiteratureSearch(settings.retrieval)
    records = await search.search_all(queries, config)
    pool = build_candidate_pool(records, config)
"""

from .arxiv import ArxivClient, parse_arxiv
from .fixtures import FixtureStore, slugify
from .fulltext import FulltextAcquirer, run_pdftotext
from .http import HostRateLimiter, PayloadFetcher, TransientHTTPError
from .openalex import OpenAlexClient, parse_openalex, rebuild_abstract
from .pool import build_candidate_pool, deduplicate, is_duplicate, normalize_title
from .search import LiteratureSearch

__all__ = [
    "ArxivClient",
    "parse_arxiv",
    "FixtureStore",
    "slugify",
    "FulltextAcquirer",
    "run_pdftotext",
    "HostRateLimiter",
    "PayloadFetcher",
    "TransientHTTPError",
    "OpenAlexClient",
    "parse_openalex",
    "rebuild_abstract",
    "build_candidate_pool",
    "deduplicate",
    "is_duplicate",
    "normalize_title",
    "LiteratureSearch",
]

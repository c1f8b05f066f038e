"""
Dual-source search fan-out.
"""

import asyncio
import logging
from typing import List, Optional, Protocol

from config.pipeline import PipelineConfig
from config.settings import RetrievalSettings
from src.errors import ResponseParseError, RetrievalError
from src.models import PaperRecord, PaperSource, QuerySet
from .arxiv import ArxivClient
from .http import PayloadFetcher
from .openalex import OpenAlexClient

logger = logging.getLogger(__name__)


class SourceClient(Protocol):
    source: PaperSource

    async def search(self, query: str, cap: int, query_index: int = 0) -> List[PaperRecord]: ...


class LiteratureSearch:
    """
    Runs every query against both sources.

    A failed (query, source) pair is logged and contributes no records; the
    stage only fails later if the pool ends up empty.
    """

    def __init__(
        self,
        cfg: RetrievalSettings,
        fetcher: Optional[PayloadFetcher] = None,
        max_concurrency: int = 4,
    ):
        self.fetcher = fetcher or PayloadFetcher(cfg)
        self.clients: dict[PaperSource, SourceClient] = {
            PaperSource.OPENALEX: OpenAlexClient(self.fetcher, cfg),
            PaperSource.ARXIV: ArxivClient(self.fetcher, cfg),
        }
        self.semaphore = asyncio.Semaphore(max_concurrency)
        self.failures: list[tuple[PaperSource, str, str]] = []

    async def search_source(
        self,
        query: str,
        source: PaperSource,
        cap: int,
        query_index: int = 0,
    ) -> List[PaperRecord]:
        """
        Query one source; at most `cap` records in the source's relevance order.

        Raises:
            RetrievalError: request failed after retries
            MalformedPayloadError: the payload could not be parsed
        """
        async with self.semaphore:
            records = await self.clients[source].search(query, cap, query_index)
        logger.info(
            f"{source.value}: {len(records)} record(s) for query {query_index + 1}",
            extra = {"source": source.value, "query": query, "records": len(records)},
        )
        return records[:cap]

    async def _guarded(self, query: str, source: PaperSource, cap: int, index: int) -> List[PaperRecord]:
        try:
            return await self.search_source(query, source, cap, index)
        except (RetrievalError, ResponseParseError) as e:
            logger.warning(
                f"{source.value} search failed for query {index + 1}: {e}",
                extra = {"source": source.value, "query": query},
            )
            self.failures.append((source, query, str(e)))
            return []

    async def search_all(self, queries: QuerySet, config: PipelineConfig) -> List[PaperRecord]:
        """Raw recall, in query order with the OpenAlex hits of each query first."""
        caps = {
            PaperSource.OPENALEX: config.recall_openalex,
            PaperSource.ARXIV: config.recall_arxiv,
        }
        jobs = [
            self._guarded(query, source, caps[source], index)
            for index, query in enumerate(queries.queries)
            for source in (PaperSource.OPENALEX, PaperSource.ARXIV)
        ]
        results = await asyncio.gather(*jobs)
        records = [record for batch in results for record in batch]

        logger.info(
            f"Raw recall: {len(records)} record(s) from {len(queries)} queries "
            f"({len(self.failures)} failed request(s))"
        )
        return records

    async def aclose(self) -> None:
        await self.fetcher.aclose()

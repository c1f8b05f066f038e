"""
Top-1 reranking over the candidate pool.

The reranker sees metadata only (title, venue, year, citations, abstract) and
must name a paper that exists in the pool.
"""

from typing import Any, Dict, List, Sequence

from src.errors import ResponseParseError, RetrievalError, UnresolvableTitleError
from src.models import PaperRecord, RerankDecision, Stage, TaskPrompt
from src.retrieval.pool import normalize_title
from .base_agent import BaseAgent


def render_candidates(pool: Sequence[PaperRecord]) -> str:
    """Numbered metadata block for the rerank prompt."""
    blocks = []
    for i, record in enumerate(pool, start = 1):
        lines = [
            f"[{i}] Title: {record.title}",
            f"    Venue: {record.venue or 'unknown'} | Year: {record.year} | "
            f"Citations: {record.citations} | Source: {record.source.value}",
        ]
        if record.abstract:
            lines.append(f"    Abstract: {record.abstract}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks)


def resolve_title(title: str, pool: Sequence[PaperRecord]) -> int:
    """
    Pool index of the record a recommended title refers to.

    Among several records with the same normalized title, the first one that
    has a full-text locator wins, else the first one.

    Raises:
        UnresolvableTitleError: no record matches
    """
    key = normalize_title(title)
    matches = [i for i, record in enumerate(pool) if key and normalize_title(record.title) == key]
    if not matches:
        raise UnresolvableTitleError(f"Recommended paper is not in the candidate pool: {title!r}")
    for i in matches:
        if pool[i].fulltext_url:
            return i
    return matches[0]


def _top_entry(data: Dict[str, Any]) -> Dict[str, Any]:
    top = data["top1"]
    if isinstance(top, list):
        top = top[0] if top else None
    if not isinstance(top, dict) or not str(top.get("paper_title") or "").strip():
        raise ResponseParseError("'top1' does not hold an entry with a paper_title")
    return top


def _year(value: Any, fallback: int) -> int:
    try:
        return int(str(value).strip())
    except (TypeError, ValueError):
        return fallback


class Reranker(BaseAgent):
    """Selects the single best original-algorithm paper from the pool."""

    def __init__(self, gateway, config, prompts = None):
        super().__init__("reranker", Stage.RERANK, gateway, config, prompts)

    async def process(self, task: TaskPrompt, pool: List[PaperRecord]) -> RerankDecision:
        """
        Raises:
            RetrievalError: empty pool
            ResponseParseError: no usable `top1` entry
            UnresolvableTitleError: the named paper is not in the pool
        """
        if not pool:
            raise RetrievalError("Candidate pool is empty; nothing to rerank")

        data, transcript = await self.ask_json(
            "rerank",
            require = ["top1"],
            retries = self.config.parse_retries,
            dim = task.dim_label,
            budget = task.budget,
            desc = task.desc,
            search_space = task.search_space,
            candidate_metadata = render_candidates(pool),
        )
        top = _top_entry(data)

        index = resolve_title(str(top["paper_title"]), pool)
        record = pool[index]
        decision = RerankDecision(
            algorithm_name = str(top.get("algorithm_name") or "").strip(),
            paper_title = record.title,
            venue = str(top.get("venue") or record.venue).strip(),
            year = _year(top.get("year"), record.year),
            reason = str(top.get("reason") or "").strip(),
            record = record,
            pool_index = index,
        )
        self.logger.info(
            f"Top-1: {decision.algorithm_name or '?'} - {decision.paper_title}",
            extra = {"stage": self.stage.value, "transcript": transcript.index, "pool_index": index},
        )
        return decision

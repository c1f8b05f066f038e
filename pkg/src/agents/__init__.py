"""
LLM-driven workflow steps, all built on BaseAgent.
"""

from .base_agent import AgentError, AgentMetrics, BaseAgent, render_task
from .judge import LLMJudge, parse_verdict
from .query_rewriter import QueryRewriter
from .refiner import Describer, Refiner, count_sentences
from .reranker import Reranker, render_candidates, resolve_title
from .solver_generator import SolverGenerator, findings_note

__all__ = [
    "AgentError",
    "AgentMetrics",
    "BaseAgent",
    "render_task",
    "LLMJudge",
    "parse_verdict",
    "QueryRewriter",
    "Describer",
    "Refiner",
    "count_sentences",
    "Reranker",
    "render_candidates",
    "resolve_title",
    "SolverGenerator",
    "findings_note",
]

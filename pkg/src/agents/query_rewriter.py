"""
Query rewriting: task prompt -> search queries for the literature sources.
"""

from src.errors import QuerySetError
from src.models import QuerySet, Stage, TaskPrompt
from .base_agent import BaseAgent, render_task


class QueryRewriter(BaseAgent):
    """
    Turns the task prompt into `n_queries` distinct search strings.

    The first query names the problem, then broad queries, then precise ones;
    keeping solution-method terms out is left to the prompt.
    """

    def __init__(self, gateway, config, prompts = None):
        super().__init__("rewriter", Stage.REWRITE, gateway, config, prompts)

    async def process(self, task: TaskPrompt) -> QuerySet:
        """
        Raises:
            ResponseParseError: no JSON object after the re-ask budget
            QuerySetError: wrong arity, empty or duplicate query
        """
        data, transcript = await self.ask_json(
            "rewrite",
            require = ["search_queries"],
            retries = self.config.parse_retries,
            task_prompt = render_task(task, self.prompts),
        )

        queries = data["search_queries"]
        if not isinstance(queries, list):
            raise QuerySetError(f"'search_queries' must be a list, got {type(queries).__name__}")

        query_set = QuerySet.build(queries, self.config.n_queries)
        self.logger.info(
            f"Rewrote task into {len(query_set)} queries",
            extra = {"stage": self.stage.value, "transcript": transcript.index},
        )
        return query_set

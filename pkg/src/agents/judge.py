"""
Pairwise LLM judge for the tournament.
"""

import random
from typing import Optional

from src.arena.judges import Verdict, assign_positions
from src.errors import ResponseParseError, VerdictError
from src.llm import extract_json_block
from src.models import CandidatePool, Stage, TaskPrompt
from .base_agent import BaseAgent

VERDICTS = {"algorithm a": 0, "algorithm b": 1}


def render_contestant(label: str, code: str) -> str:
    return f"### {label}\n```python\n{code}\n```"


def parse_verdict(response: str) -> int:
    """
    0 when the response names Algorithm A, 1 for Algorithm B.

    Raises:
        VerdictError: no `winner` key or a value outside the two labels
    """
    try:
        data = extract_json_block(response, require = ["winner"])
    except ResponseParseError as e:
        raise VerdictError(f"No verdict in judge response: {e}") from e

    label = " ".join(str(data["winner"]).split()).casefold()
    if label not in VERDICTS:
        raise VerdictError(f"Unrecognized verdict: {data['winner']!r}")
    return VERDICTS[label]


class LLMJudge(BaseAgent):
    """
    Compares two candidates' code for the task, with randomized A/B positions.

    An unparseable verdict is re-asked `judge_parse_retries` times; after that
    VerdictError aborts the match and the scheduler proposes again.
    """

    def __init__(self, gateway, config, pool: CandidatePool, task: TaskPrompt, prompts = None):
        super().__init__("judge", Stage.TOURNAMENT, gateway, config, prompts)
        self.pool = pool
        self.task = task

    async def process(self, a: str, b: str, rng: random.Random) -> Verdict:
        first, second = assign_positions(a, b, rng)
        bindings = {
            "desc": self.task.desc,
            "search_space": self.task.search_space,
            "dim": self.task.dim_label,
            "budget": self.task.budget,
            "code_a": render_contestant("Algorithm A", self.pool.get(first).source_text),
            "code_b": render_contestant("Algorithm B", self.pool.get(second).source_text),
        }

        last_error: Optional[VerdictError] = None
        for attempt in range(self.config.judge_parse_retries + 1):
            transcript = await self.ask("judge", **bindings)
            try:
                position = parse_verdict(transcript.response)
            except VerdictError as e:
                last_error = e
                self.logger.warning(
                    f"{first} vs {second}: {e} (attempt {attempt + 1})",
                    extra = {"stage": self.stage.value, "transcript": transcript.index},
                )
                continue
            winner = first if position == 0 else second
            return Verdict(
                winner = winner,
                first = first,
                second = second,
                judge_ref = f"transcript:{transcript.index}",
            )

        raise last_error or VerdictError("judge gave no verdict")

    async def judge(self, a: str, b: str, rng: random.Random) -> Verdict:
        return await self.execute(a, b, rng)

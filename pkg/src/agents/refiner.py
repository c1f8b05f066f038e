"""
One-step self-refinement: describe the initial solver, then sample C new
candidates from it.
"""

import asyncio
import re
from typing import List, Optional

from src.codegen import check_structure, class_name, extract_spans, marker_retention
from src.errors import DescriptionError, ResponseParseError, StructuralError
from src.llm import extract_code_block, has_code_fence
from src.models import ArtifactStage, SolverArtifact, Stage, TaskPrompt
from .base_agent import BaseAgent, render_task
from .solver_generator import findings_note

_SENTENCE_END = re.compile(r"(?<=[.!?])\s+(?=[A-Z0-9(\"'])")


def count_sentences(text: str) -> int:
    return len([s for s in _SENTENCE_END.split(text.strip()) if s.strip()])


class Describer(BaseAgent):
    """Reverse-engineers a short prose description of the initial solver."""

    def __init__(self, gateway, config, prompts = None):
        super().__init__("describer", Stage.DESCRIBE, gateway, config, prompts)

    async def process(self, init: SolverArtifact, task: TaskPrompt) -> str:
        """
        Raises:
            DescriptionError: blank response or response containing code
        """
        if init.stage != ArtifactStage.INITIAL:
            raise DescriptionError(f"only the initial solver is described, got {init.stage.value}")

        transcript = await self.ask("reverse", desc = task.desc, solver_code = init.source_text)
        description = transcript.response.strip()

        if not description:
            raise DescriptionError("Solver description is empty")
        if has_code_fence(description):
            raise DescriptionError("Solver description contains code")

        sentences = count_sentences(description)
        if not 3 <= sentences <= 5:
            self.logger.warning(
                f"Description has {sentences} sentence(s), expected 3-5",
                extra = {"stage": self.stage.value, "transcript": transcript.index},
            )
        return description


class Refiner(BaseAgent):
    """
    Generates `n_refined` candidates through independent calls.

    Each slot gets up to `refine_attempts` calls; after a failed attempt the
    next call carries the findings of the previous one. Marker retention
    against the parent is recorded, not enforced.
    """

    def __init__(self, gateway, config, prompts = None):
        super().__init__("refiner", Stage.REFINE, gateway, config, prompts)

    def _bindings(self, task: TaskPrompt, init: SolverArtifact, paper_title: str, venue: str) -> dict:
        return {
            "task_prompt": render_task(task, self.prompts),
            "algorithm_name": init.class_name,
            "description": init.description,
            "dim": task.dim_label,
            "budget": task.budget,
            "paper_title": paper_title,
            "venue": venue,
            "desc": task.desc,
            "search_space": task.search_space,
            "solver_code": init.source_text,
            "code_template": self.prompts.bind("code_template"),
        }

    async def refine_slot(self, slot: int, init: SolverArtifact, bindings: dict) -> SolverArtifact:
        """
        Raises:
            StructuralError: every attempt for the slot failed
        """
        artifact_id = f"refined-{slot:02d}"
        provenance: List[int] = []
        suffix = ""
        last_findings: List[str] = []

        for attempt in range(1, self.config.refine_attempts + 1):
            transcript = await self.ask("refine", suffix, **bindings)
            provenance.append(transcript.index)
            try:
                code = extract_code_block(transcript.response)
                last_findings = check_structure(code)
            except ResponseParseError as e:
                code, last_findings = "", [str(e)]

            if not last_findings:
                retention = marker_retention(init.source_text, code)
                if retention is not None and retention < 1.0:
                    self.logger.warning(
                        f"{artifact_id}: kept {retention:.0%} of the parent's marked lines",
                        extra = {"stage": self.stage.value, "candidate": artifact_id},
                    )
                return SolverArtifact(
                    id = artifact_id,
                    stage = ArtifactStage.REFINED,
                    source_text = code,
                    class_name = class_name(code),
                    important_spans = tuple(extract_spans(code)),
                    provenance = tuple(provenance),
                    marker_retention = retention,
                )

            self.logger.warning(
                f"{artifact_id}: attempt {attempt}/{self.config.refine_attempts} rejected: "
                f"{'; '.join(last_findings)}",
                extra = {"stage": self.stage.value, "transcript": transcript.index},
            )
            suffix = findings_note(last_findings)

        raise StructuralError(
            f"{artifact_id}: no conforming candidate after {self.config.refine_attempts} attempts",
            findings = last_findings,
        )

    async def process(
        self,
        task: TaskPrompt,
        init: SolverArtifact,
        paper_title: str = "unknown",
        venue: str = "unknown",
    ) -> List[SolverArtifact]:
        """
        Raises:
            DescriptionError: the initial solver has not been described
            StructuralError: a slot exhausted its attempts
        """
        if not init.description.strip():
            raise DescriptionError("initial solver has no description; run the describe stage first")

        bindings = self._bindings(task, init, paper_title, venue)
        semaphore = asyncio.Semaphore(self.config.max_concurrency)

        async def run(slot: int) -> SolverArtifact:
            async with semaphore:
                return await self.refine_slot(slot, init, bindings)

        candidates = await asyncio.gather(*(run(k) for k in range(1, self.config.n_refined + 1)))
        return list(candidates)


def mean_retention(candidates: List[SolverArtifact]) -> Optional[float]:
    values = [c.marker_retention for c in candidates if c.marker_retention is not None]
    if not values:
        return None
    return sum(values) / len(values)

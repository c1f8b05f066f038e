"""
Solver code generation.

Grounded path: the paper text goes in twice, first to reproduce the
algorithm (preliminary) and then to check that reproduction line by line
against the paper (initial). Ungrounded path: one meta-query with the task
prompt and the code template, no document.
"""

from typing import Any, List, Optional, Tuple

from src.codegen import check_structure, class_name, extract_spans, truncate_document
from src.errors import StructuralError
from src.llm import extract_code_block
from src.models import ArtifactStage, DocumentText, SolverArtifact, Stage, TaskPrompt
from .base_agent import BaseAgent, render_task


def findings_note(findings: List[str]) -> str:
    """Re-prompt suffix listing what the previous answer got wrong."""
    items = "\n".join(f"- {f}" for f in findings)
    return (
        "Your previous answer did not conform to the code template:\n"
        f"{items}\n"
        "Return the complete corrected code in a single ```python block."
    )


class SolverGenerator(BaseAgent):
    """
    Produces preliminary, initial and ungrounded solvers.

    Every generated program goes through the lexical structure check; a
    failing answer is re-prompted `structure_retries` times with the findings
    appended before the stage fails.
    """

    def __init__(self, gateway, config, prompts = None):
        super().__init__("generator", Stage.GEN1, gateway, config, prompts)

    async def process(self, task: TaskPrompt, doc: Optional[DocumentText] = None) -> SolverArtifact:
        """Preliminary solver from the document, or the ungrounded solver without one."""
        if doc is None:
            return await self.generate_ungrounded(task)
        return await self.generate_preliminary(task, doc)

    def _document(self, doc: DocumentText) -> str:
        return truncate_document(doc.text, self.config.document_char_budget)

    async def _generate(
        self,
        prompt: str,
        stage: Stage,
        expected_class: Optional[str] = None,
        **bindings: Any,
    ) -> Tuple[str, List[int]]:
        """
        Ask for code until it passes the structure check.

        Raises:
            ResponseParseError: a response without a fenced code block
            StructuralError: still failing after the re-prompt budget
        """
        self.stage = stage
        provenance: List[int] = []
        suffix = ""
        findings: List[str] = []

        for attempt in range(self.config.structure_retries + 1):
            transcript = await self.ask(prompt, suffix, **bindings)
            provenance.append(transcript.index)

            code = extract_code_block(transcript.response)
            findings = check_structure(code)
            if not findings and expected_class is not None:
                found = class_name(code)
                if found != expected_class:
                    findings = [f"class renamed from {expected_class} to {found}; keep the same class name"]

            if not findings:
                return code, provenance

            self.logger.warning(
                f"{prompt}: structure check failed (attempt {attempt + 1}): {'; '.join(findings)}",
                extra = {"stage": stage.value, "transcript": transcript.index},
            )
            suffix = findings_note(findings)

        raise StructuralError(
            f"{prompt}: generated code does not conform to the template: {'; '.join(findings)}",
            findings = findings,
        )

    def _artifact(
        self,
        artifact_id: str,
        stage: ArtifactStage,
        code: str,
        provenance: List[int],
    ) -> SolverArtifact:
        spans = extract_spans(code)
        if not spans and stage in (ArtifactStage.PRELIMINARY, ArtifactStage.INITIAL):
            self.logger.warning(
                f"{artifact_id}: no IMPORTANT COMPONENT markers in the generated code",
                extra = {"stage": self.stage.value},
            )
        return SolverArtifact(
            id = artifact_id,
            stage = stage,
            source_text = code,
            class_name = class_name(code),
            important_spans = tuple(spans),
            provenance = tuple(provenance),
        )

    async def generate_preliminary(self, task: TaskPrompt, doc: DocumentText) -> SolverArtifact:
        """First pass: reproduce the paper's algorithm in the code template."""
        code, provenance = await self._generate(
            "gen_stage1",
            Stage.GEN1,
            paper_title = doc.paper_title,
            venue = doc.venue,
            year = doc.year,
            dim = task.dim_label,
            budget = task.budget,
            desc = task.desc,
            search_space = task.search_space,
            document_text = self._document(doc),
            code_template = self.prompts.bind("code_template"),
        )
        return self._artifact("preliminary-00", ArtifactStage.PRELIMINARY, code, provenance)

    async def polish(self, pre: SolverArtifact, doc: DocumentText) -> SolverArtifact:
        """
        Second pass: cross-check the preliminary code against the paper.

        The class name must survive unchanged; markers are re-extracted from
        the polished text.
        """
        if pre.stage != ArtifactStage.PRELIMINARY:
            raise StructuralError(f"polish needs a preliminary solver, got {pre.stage.value}")

        code, provenance = await self._generate(
            "gen_stage2",
            Stage.GEN2,
            expected_class = pre.class_name,
            algorithm_name = pre.class_name,
            paper_title = doc.paper_title,
            document_text = self._document(doc),
            preliminary_code = pre.source_text,
        )
        return self._artifact(
            "initial-00", ArtifactStage.INITIAL, code, list(pre.provenance) + provenance
        )

    async def generate_ungrounded(self, task: TaskPrompt) -> SolverArtifact:
        """Single meta-query without retrieval; markers are optional here."""
        code, provenance = await self._generate(
            "meta_query",
            Stage.GEN1,
            task_prompt = render_task(task, self.prompts),
            code_template = self.prompts.bind("code_template"),
        )
        return self._artifact("ungrounded-00", ArtifactStage.UNGROUNDED, code, provenance)

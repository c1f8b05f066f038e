"""
Solver artifacts and the candidate pool handed to the tournament.
"""

from typing import Sequence

from pydantic import Field, model_validator

from src.errors import StructuralError
from .base import ArtifactStage, BaseModelWithConfig


class Span(BaseModelWithConfig):
    """Inclusive, 1-based line range."""

    start: int = Field(..., ge = 1)
    end: int = Field(..., ge = 1)

    @model_validator(mode = "after")
    def ordered(self) -> "Span":
        if self.end < self.start:
            raise ValueError(f"span end {self.end} before start {self.start}")
        return self


class SolverArtifact(BaseModelWithConfig):
    """
    Generated solver source plus its annotations.

    Attributes:
        provenance: indices of the transcripts that produced the artifact
        marker_retention: fraction of the parent's marked lines kept (refined only)
    """

    id: str
    stage: ArtifactStage
    source_text: str
    class_name: str = ""
    important_spans: tuple[Span, ...] = ()
    description: str = ""
    provenance: tuple[int, ...] = ()
    marker_retention: float | None = None

    @model_validator(mode = "after")
    def check_invariants(self) -> "SolverArtifact":
        if not self.source_text.strip():
            raise ValueError("source_text must not be empty")

        n_lines = self.line_count
        for span in self.important_spans:
            if span.end > n_lines:
                raise ValueError(f"span {span.start}-{span.end} exceeds {n_lines} lines")

        if self.stage == ArtifactStage.INITIAL and len(self.provenance) < 2:
            raise ValueError("initial artifacts need both generation transcripts")
        return self

    @property
    def line_count(self) -> int:
        return len(self.source_text.splitlines())

    def with_description(self, description: str) -> "SolverArtifact":
        return self.model_copy(update = {"description": description})


class CandidatePool(BaseModelWithConfig):
    """Initial solver followed by the refined candidates, in order."""

    members: tuple[SolverArtifact, ...]

    @property
    def ids(self) -> list[str]:
        return [m.id for m in self.members]

    def get(self, artifact_id: str) -> SolverArtifact:
        for member in self.members:
            if member.id == artifact_id:
                return member
        raise KeyError(artifact_id)

    def __len__(self) -> int:
        return len(self.members)


def assemble_pool(
    init: SolverArtifact,
    refined: Sequence[SolverArtifact],
    n_refined: int,
) -> CandidatePool:
    """
    Build the evaluation pool.

    Raises:
        StructuralError: wrong cardinality, wrong stage or duplicate ids
    """
    if init.stage != ArtifactStage.INITIAL:
        raise StructuralError(f"Pool head must be an initial solver, got {init.stage.value}")
    if len(refined) != n_refined:
        raise StructuralError(f"Expected {n_refined} refined candidates, got {len(refined)}")

    for artifact in refined:
        if artifact.stage != ArtifactStage.REFINED:
            raise StructuralError(f"Candidate {artifact.id} is not a refined solver")

    members = (init, *refined)
    ids = [m.id for m in members]
    if len(set(ids)) != len(ids):
        dupes = sorted({i for i in ids if ids.count(i) > 1})
        raise StructuralError(f"Duplicate candidate ids: {dupes}")

    return CandidatePool(members = members)

"""
Persisted checkpoint of one run.

RunState is the only mutable model: the orchestrator is its single writer.
"""

from typing import Optional

from pydantic import BaseModel, Field

from src.errors import ManifestError, PrerequisiteError
from .base import STAGE_ORDER, Stage, StageStatus

MANIFEST_VERSION = 1

_SATISFIED = (StageStatus.COMPLETE, StageStatus.SKIPPED)


class StageRecord(BaseModel):
    """Status of one stage and the files it produced (relative path -> sha256)."""

    status: StageStatus = StageStatus.PENDING
    artifacts: dict[str, str] = Field(default_factory = dict)
    error: Optional[str] = None
    started_at: Optional[str] = None
    finished_at: Optional[str] = None


class RunState(BaseModel):
    """
    Checkpoint manifest.

    Stage statuses follow STAGE_ORDER: a stage may only complete once every
    predecessor is complete or skipped. `extras` holds artifacts outside the
    stage graph (the ungrounded solver).
    """

    version: int = MANIFEST_VERSION
    seed: int
    config_sha256: str
    task_sha256: str
    from_text: bool = False
    judge: str = "llm"
    stages: dict[Stage, StageRecord] = Field(
        default_factory = lambda: {stage: StageRecord() for stage in STAGE_ORDER}
    )
    extras: dict[str, dict[str, str]] = Field(default_factory = dict)

    def record(self, stage: Stage) -> StageRecord:
        if stage not in self.stages:
            raise ManifestError(f"Manifest has no entry for stage '{stage.value}'")
        return self.stages[stage]

    def status(self, stage: Stage) -> StageStatus:
        return self.record(stage).status

    def is_satisfied(self, stage: Stage) -> bool:
        return self.status(stage) in _SATISFIED

    def predecessors(self, stage: Stage) -> tuple[Stage, ...]:
        return STAGE_ORDER[:STAGE_ORDER.index(stage)]

    def require_predecessors(self, stage: Stage) -> None:
        missing = [s.value for s in self.predecessors(stage) if not self.is_satisfied(s)]
        if missing:
            raise PrerequisiteError(
                f"Stage '{stage.value}' needs completed stage(s): {', '.join(missing)}"
            )

    def mark_running(self, stage: Stage, at: str) -> None:
        self.require_predecessors(stage)
        rec = self.record(stage)
        if rec.status in _SATISFIED:
            raise ManifestError(f"Stage '{stage.value}' already finished")
        self.stages[stage] = StageRecord(status = StageStatus.RUNNING, started_at = at)

    def mark_complete(self, stage: Stage, artifacts: dict[str, str], at: str) -> None:
        self.require_predecessors(stage)
        rec = self.record(stage)
        rec.status = StageStatus.COMPLETE
        rec.artifacts = dict(sorted(artifacts.items()))
        rec.error = None
        rec.finished_at = at

    def mark_failed(self, stage: Stage, error: str, at: str) -> None:
        rec = self.record(stage)
        rec.status = StageStatus.FAILED
        rec.error = error
        rec.finished_at = at

    def mark_skipped(self, stage: Stage, at: str) -> None:
        self.require_predecessors(stage)
        self.stages[stage] = StageRecord(status = StageStatus.SKIPPED, finished_at = at)

    def next_pending(self) -> Optional[Stage]:
        """First stage that is not complete or skipped."""
        for stage in STAGE_ORDER:
            if not self.is_satisfied(stage):
                return stage
        return None

    @property
    def is_complete(self) -> bool:
        return self.next_pending() is None

    def failed_stage(self) -> Optional[Stage]:
        for stage in STAGE_ORDER:
            if self.status(stage) == StageStatus.FAILED:
                return stage
        return None

    def check_order(self) -> None:
        """Reject manifests whose satisfied stages do not form a prefix of STAGE_ORDER."""
        seen_gap = False
        for stage in STAGE_ORDER:
            if stage not in self.stages:
                raise ManifestError(f"Manifest has no entry for stage '{stage.value}'")
            if self.is_satisfied(stage):
                if seen_gap:
                    raise ManifestError(
                        f"Stage '{stage.value}' is finished but an earlier stage is not"
                    )
            else:
                seen_gap = True

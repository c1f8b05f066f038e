"""
Base models and enums shared by every stage of the workflow.
"""

from enum import Enum

from pydantic import BaseModel, ConfigDict


class Stage(str, Enum):
    """
    Pipeline stages, in execution order.
    """

    REWRITE = "rewrite"
    SEARCH = "search"
    POOL = "pool"
    RERANK = "rerank"
    FULLTEXT = "fulltext"
    GEN1 = "gen1"
    GEN2 = "gen2"
    DESCRIBE = "describe"
    REFINE = "refine"
    TOURNAMENT = "tournament"


STAGE_ORDER: tuple[Stage, ...] = tuple(Stage)

# Stages bypassed when the document text is supplied directly.
RETRIEVAL_STAGES: tuple[Stage, ...] = (
    Stage.REWRITE,
    Stage.SEARCH,
    Stage.POOL,
    Stage.RERANK,
    Stage.FULLTEXT,
)


class StageStatus(str, Enum):
    """
    Checkpoint status of one stage.
    """

    PENDING = "pending"
    RUNNING = "running"
    COMPLETE = "complete"
    FAILED = "failed"
    SKIPPED = "skipped"


class ArtifactStage(str, Enum):
    """
    Which generation step produced a solver.
    """

    UNGROUNDED = "ungrounded"
    PRELIMINARY = "preliminary"
    INITIAL = "initial"
    REFINED = "refined"


class PaperSource(str, Enum):
    """
    Scholarly metadata source.
    """

    OPENALEX = "openalex"
    ARXIV = "arxiv"


class ExtractionMethod(str, Enum):
    """
    How the document text was obtained.
    """

    PROVIDED = "provided"
    PLAIN = "plain"
    PDFTOTEXT = "pdftotext"


class BaseModelWithConfig(BaseModel):
    """
    Base model with common configuration for domain models.

    Features -
    - Immutable (frozen); updates go through model_copy
    - Unknown fields rejected so persisted documents stay exact
    """

    model_config = ConfigDict(
        frozen = True,
        extra = "forbid",
    )

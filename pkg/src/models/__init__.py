"""
Data models for solver-forge.

This package contains all Pydantic models used throughout the application.
"""

from .base import (
    # Base Classes
    BaseModelWithConfig,

    # Enums
    Stage,
    StageStatus,
    ArtifactStage,
    PaperSource,
    ExtractionMethod,
    STAGE_ORDER,
    RETRIEVAL_STAGES,
)

from .task import (
    TaskPrompt,
    parse_task,
)

from .paper import (
    QuerySet,
    PaperRecord,
    RerankDecision,
    DocumentText,
)

from .solver import (
    Span,
    SolverArtifact,
    CandidatePool,
    assemble_pool,
)

from .elo import (
    EloState,
    MatchRecord,
    PairingProposal,
)

from .run_state import (
    RunState,
    StageRecord,
)

__all__ = [
    # Base
    "BaseModelWithConfig",

    # Enums
    "Stage",
    "StageStatus",
    "ArtifactStage",
    "PaperSource",
    "ExtractionMethod",
    "STAGE_ORDER",
    "RETRIEVAL_STAGES",

    # Task
    "TaskPrompt",
    "parse_task",

    # Literature
    "QuerySet",
    "PaperRecord",
    "RerankDecision",
    "DocumentText",

    # Solvers
    "Span",
    "SolverArtifact",
    "CandidatePool",
    "assemble_pool",

    # Elo
    "EloState",
    "MatchRecord",
    "PairingProposal",

    # Run state
    "RunState",
    "StageRecord",
]

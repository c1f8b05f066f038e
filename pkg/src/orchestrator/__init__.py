"""
Run orchestration: run directory, checkpoints and the stage pipeline.
"""

from .pipeline import DOCUMENT_DIR, STAGE_GROUPS, UNGROUNDED_DIR, JudgeSpec, Pipeline
from .run_store import MATCH_LOG, REPORT, STANDINGS, WINNER, RunStore, sha256_bytes

__all__ = [
    "DOCUMENT_DIR",
    "STAGE_GROUPS",
    "UNGROUNDED_DIR",
    "JudgeSpec",
    "Pipeline",
    "MATCH_LOG",
    "REPORT",
    "STANDINGS",
    "WINNER",
    "RunStore",
    "sha256_bytes",
]

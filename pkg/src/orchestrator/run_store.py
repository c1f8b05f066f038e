"""
Run directory.

Layout:

    config.snapshot        run hyperparameters as started
    task.snapshot          task file as started
    state.manifest         RunState (JSON)
    transcripts/NNN.json   one file per LLM exchange
    artifacts/<stage>/...  stage outputs
    elo/matches.log        one MatchRecord per line, append-only
    elo/standings          final standings, one JSON object per line
    report.json
    winner.txt
"""

import asyncio
import hashlib
import json
import logging
import os
import shutil
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Union

from pydantic import ValidationError

from config.pipeline import PipelineConfig, parse_config
from src.errors import ConfigMismatchError, ManifestError, TaskError
from src.llm import Transcript
from src.models import (
    EloState,
    MatchRecord,
    RunState,
    SolverArtifact,
    Stage,
    StageStatus,
    TaskPrompt,
)
from src.models.task import parse_task

logger = logging.getLogger(__name__)

CONFIG_SNAPSHOT = "config.snapshot"
TASK_SNAPSHOT = "task.snapshot"
MANIFEST = "state.manifest"
TRANSCRIPTS = "transcripts"
ARTIFACTS = "artifacts"
MATCH_LOG = "elo/matches.log"
STANDINGS = "elo/standings"
REPORT = "report.json"
WINNER = "winner.txt"


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sha256_file(path: Path) -> str:
    return sha256_bytes(path.read_bytes())


class RunStore:
    """
    Owns every file of one run; also the gateway's transcript sink.

    The orchestrator is the only writer of the manifest.
    """

    def __init__(self, root: Union[str, Path]):
        self.root = Path(root)
        self._lock = asyncio.Lock()
        self._next_transcript: Optional[int] = None

    # ------------------------------------------------------------------
    # Paths
    # ------------------------------------------------------------------

    def path(self, relpath: str) -> Path:
        return self.root / relpath

    def stage_dir(self, stage: Union[Stage, str]) -> str:
        name = stage.value if isinstance(stage, Stage) else stage
        return f"{ARTIFACTS}/{name}"

    @property
    def exists(self) -> bool:
        return self.path(MANIFEST).is_file()

    # ------------------------------------------------------------------
    # Manifest
    # ------------------------------------------------------------------

    def create(
        self,
        config: PipelineConfig,
        config_text: str,
        task_path: Union[str, Path],
        seed: int,
        from_text: bool = False,
        judge: str = "llm",
    ) -> RunState:
        """
        Initialize a fresh run directory.

        Raises:
            ManifestError: the directory already holds a run
            TaskError: invalid task file
        """
        if self.exists:
            raise ManifestError(f"{self.root} already holds a run; use 'resume'")

        parse_task(task_path)
        self.root.mkdir(parents = True, exist_ok = True)
        self.path(CONFIG_SNAPSHOT).write_text(config_text, encoding = "utf-8")
        shutil.copyfile(task_path, self.path(TASK_SNAPSHOT))

        state = RunState(
            seed = seed,
            config_sha256 = sha256_file(self.path(CONFIG_SNAPSHOT)),
            task_sha256 = sha256_file(self.path(TASK_SNAPSHOT)),
            from_text = from_text,
            judge = judge,
        )
        self.save(state)
        logger.info(f"Initialized run directory {self.root}", extra = {"run_dir": str(self.root)})
        return state

    def save(self, state: RunState) -> None:
        """Atomic manifest write."""
        target = self.path(MANIFEST)
        tmp = target.with_suffix(".tmp")
        tmp.write_text(state.model_dump_json(indent = 2), encoding = "utf-8")
        os.replace(tmp, target)

    def load(self) -> RunState:
        """
        Load and verify the manifest.

        Raises:
            ManifestError: missing or corrupted manifest, missing or altered stage artifacts
            ConfigMismatchError: config or task snapshot edited since the run started
        """
        if not self.exists:
            raise ManifestError(f"No run found in {self.root} (missing {MANIFEST})")
        try:
            state = RunState.model_validate_json(self.path(MANIFEST).read_text(encoding = "utf-8"))
        except (ValidationError, ValueError) as e:
            raise ManifestError(f"Corrupted manifest in {self.root}: {e}") from e

        for name, expected in ((CONFIG_SNAPSHOT, state.config_sha256), (TASK_SNAPSHOT, state.task_sha256)):
            path = self.path(name)
            if not path.is_file():
                raise ManifestError(f"Missing {name} in {self.root}")
            if sha256_file(path) != expected:
                raise ConfigMismatchError(f"{name} changed since the run started")

        state.check_order()
        for stage, record in state.stages.items():
            if record.status == StageStatus.COMPLETE:
                self.verify(record.artifacts, stage.value)
        for name, files in state.extras.items():
            self.verify(files, name)
        return state

    def verify(self, artifacts: Dict[str, str], owner: str) -> None:
        for relpath, digest in artifacts.items():
            path = self.path(relpath)
            if not path.is_file():
                raise ManifestError(f"{owner}: artifact {relpath} is missing")
            if sha256_file(path) != digest:
                raise ManifestError(f"{owner}: artifact {relpath} was modified")

    def load_config(self) -> PipelineConfig:
        path = self.path(CONFIG_SNAPSHOT)
        if not path.is_file():
            raise ManifestError(f"No run in {self.root}: {CONFIG_SNAPSHOT} is missing")
        return parse_config(path.read_text(encoding = "utf-8"), CONFIG_SNAPSHOT)

    def load_task(self) -> TaskPrompt:
        try:
            return parse_task(self.path(TASK_SNAPSHOT))
        except TaskError as e:
            raise ManifestError(f"Task snapshot is unreadable: {e}") from e

    # ------------------------------------------------------------------
    # Transcripts (TranscriptSink)
    # ------------------------------------------------------------------

    def transcript_count(self) -> int:
        directory = self.path(TRANSCRIPTS)
        if not directory.is_dir():
            return 0
        return len(list(directory.glob("*.json")))

    async def persist(self, transcript: Transcript) -> Transcript:
        async with self._lock:
            if self._next_transcript is None:
                self._next_transcript = self.transcript_count()
            index = self._next_transcript
            stored = transcript.model_copy(update = {"index": index})
            directory = self.path(TRANSCRIPTS)
            directory.mkdir(parents = True, exist_ok = True)
            (directory / f"{index:03d}.json").write_text(
                stored.model_dump_json(indent = 2), encoding = "utf-8"
            )
            self._next_transcript = index + 1
            return stored

    # ------------------------------------------------------------------
    # Artifacts
    # ------------------------------------------------------------------

    def write_text(self, relpath: str, text: str) -> tuple[str, str]:
        path = self.path(relpath)
        path.parent.mkdir(parents = True, exist_ok = True)
        data = text.encode("utf-8")
        path.write_bytes(data)
        return relpath, sha256_bytes(data)

    def write_json(self, relpath: str, payload: Any) -> tuple[str, str]:
        return self.write_text(relpath, json.dumps(payload, indent = 2, ensure_ascii = False) + "\n")

    def read_text(self, relpath: str) -> str:
        path = self.path(relpath)
        if not path.is_file():
            raise ManifestError(f"Artifact {relpath} is missing from {self.root}")
        return path.read_text(encoding = "utf-8")

    def read_json(self, relpath: str) -> Any:
        try:
            return json.loads(self.read_text(relpath))
        except json.JSONDecodeError as e:
            raise ManifestError(f"Artifact {relpath} is not valid JSON: {e}") from e

    def write_solver(self, directory: str, artifact: SolverArtifact) -> Dict[str, str]:
        """Source as `<id>.txt`, metadata sidecar as `<id>.json`."""
        code = self.write_text(f"{directory}/{artifact.id}.txt", artifact.source_text)
        meta = self.write_json(
            f"{directory}/{artifact.id}.json",
            artifact.model_dump(mode = "json", exclude = {"source_text"}),
        )
        return dict([code, meta])

    def read_solver(self, directory: str, artifact_id: str) -> SolverArtifact:
        meta = self.read_json(f"{directory}/{artifact_id}.json")
        source = self.read_text(f"{directory}/{artifact_id}.txt")
        try:
            return SolverArtifact(**meta, source_text = source)
        except (ValidationError, TypeError) as e:
            raise ManifestError(f"Solver artifact {directory}/{artifact_id} is invalid: {e}") from e

    def clear(self, relpaths: Iterable[str]) -> None:
        """Remove stage outputs before a stage is (re)started."""
        for relpath in relpaths:
            path = self.path(relpath)
            if path.is_dir():
                shutil.rmtree(path)
            elif path.exists():
                path.unlink()

    # ------------------------------------------------------------------
    # Tournament outputs
    # ------------------------------------------------------------------

    def append_match(self, record: MatchRecord) -> None:
        path = self.path(MATCH_LOG)
        path.parent.mkdir(parents = True, exist_ok = True)
        with open(path, "a", encoding = "utf-8") as f:
            f.write(record.model_dump_json() + "\n")

    def read_matches(self) -> list[MatchRecord]:
        path = self.path(MATCH_LOG)
        if not path.is_file():
            return []
        return [
            MatchRecord.model_validate_json(line)
            for line in path.read_text(encoding = "utf-8").splitlines()
            if line.strip()
        ]

    def write_standings(self, ranking: list[EloState]) -> tuple[str, str]:
        lines = [
            json.dumps({"rank": i, "id": s.id, "rating": s.rating, "rd": s.rd, "matches": s.matches})
            for i, s in enumerate(ranking, start = 1)
        ]
        return self.write_text(STANDINGS, "\n".join(lines) + "\n")

    def file_entry(self, relpath: str) -> tuple[str, str]:
        return relpath, sha256_file(self.path(relpath))

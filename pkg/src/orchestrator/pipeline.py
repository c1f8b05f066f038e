"""
End-to-end workflow: task prompt -> literature -> solver -> refined pool -> Elo winner.

Each stage reads only its predecessors' artifacts from the run directory and
records its own outputs (with hashes) in the manifest, so a failed or killed
run resumes at the first unfinished stage.
"""

import logging
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Awaitable, Callable, Dict, List, Optional, Sequence

from config import PipelineConfig, PromptLibrary, Settings, get_prompt_library, get_settings
from src.agents import Describer, LLMJudge, QueryRewriter, Refiner, Reranker, SolverGenerator
from src.arena import Judge, OracleJudge, TournamentResult, run_tournament
from src.errors import ConfigError, RetrievalError, SolverForgeError
from src.llm import LLMGateway
from src.models import (
    RETRIEVAL_STAGES,
    STAGE_ORDER,
    CandidatePool,
    DocumentText,
    MatchRecord,
    PaperRecord,
    QuerySet,
    RerankDecision,
    RunState,
    SolverArtifact,
    Stage,
    TaskPrompt,
    assemble_pool,
)
from src.retrieval import FulltextAcquirer, LiteratureSearch, PayloadFetcher, build_candidate_pool
from src.utils import Clock, SystemClock, derive_seed, isoformat
from .run_store import MATCH_LOG, REPORT, WINNER, RunStore

logger = logging.getLogger(__name__)

STAGE_GROUPS: Dict[str, tuple[Stage, ...]] = {
    "retrieve": RETRIEVAL_STAGES,
    "generate": (Stage.GEN1, Stage.GEN2),
    "refine": (Stage.DESCRIBE, Stage.REFINE),
    "tournament": (Stage.TOURNAMENT,),
}

DOCUMENT_DIR = "artifacts/document"
UNGROUNDED_DIR = "artifacts/ungrounded"


@dataclass(frozen = True)
class JudgeSpec:
    """
    Parsed `--judge` value: `llm` or `oracle:flip=<p>[,order=pool|reverse][,seed=<n>]`.
    """
    kind: str = "llm"
    flip: float = 0.0
    order: str = "pool"
    seed: Optional[int] = None

    @classmethod
    def parse(cls, text: str) -> "JudgeSpec":
        """
        Raises:
            ConfigError: unknown judge kind or option
        """
        text = (text or "llm").strip()
        if text == "llm":
            return cls()
        kind, _, options = text.partition(":")
        if kind != "oracle":
            raise ConfigError(f"Unknown judge '{text}'; use 'llm' or 'oracle:flip=<p>'")

        values: Dict[str, str] = {}
        for part in filter(None, (p.strip() for p in options.split(","))):
            key, sep, value = part.partition("=")
            if not sep:
                raise ConfigError(f"Judge option '{part}' must be key=value")
            values[key.strip()] = value.strip()

        unknown = set(values) - {"flip", "order", "seed"}
        if unknown:
            raise ConfigError(f"Unknown judge option(s): {', '.join(sorted(unknown))}")
        try:
            flip = float(values.get("flip", 0.0))
            seed = int(values["seed"]) if "seed" in values else None
        except ValueError as e:
            raise ConfigError(f"Invalid judge option in '{text}': {e}") from e
        order = values.get("order", "pool")
        if not 0.0 <= flip <= 1.0:
            raise ConfigError(f"Oracle flip probability must be in [0, 1], got {flip}")
        if order not in ("pool", "reverse"):
            raise ConfigError(f"Oracle order must be 'pool' or 'reverse', got '{order}'")
        return cls(kind = "oracle", flip = flip, order = order, seed = seed)


StageHandler = Callable[[], Awaitable[Dict[str, str]]]


class Pipeline:
    """
    Stage runner over one run directory.

    Example:
        >>> store = RunStore(out_dir)
        >>> pipeline = Pipeline(store, gateway = LLMGateway(sink = store))
        >>> winner = await pipeline.run()
    """

    def __init__(
        self,
        store: RunStore,
        gateway: LLMGateway,
        settings: Optional[Settings] = None,
        fetcher: Optional[PayloadFetcher] = None,
        prompts: Optional[PromptLibrary] = None,
        clock: Optional[Clock] = None,
        from_text: Optional[Path] = None,
    ):
        self.store = store
        self.state: RunState = store.load()
        self.config: PipelineConfig = store.load_config()
        self.task: TaskPrompt = store.load_task()
        self.gateway = gateway
        self.settings = settings or get_settings()
        self.fetcher = fetcher
        self.prompts = prompts or get_prompt_library(self.config.prompts_path)
        self.clock = clock or SystemClock()
        self.from_text = from_text
        self.judge_spec = JudgeSpec.parse(self.state.judge)

        self.handlers: Dict[Stage, StageHandler] = {
            Stage.REWRITE: self._rewrite,
            Stage.SEARCH: self._search,
            Stage.POOL: self._pool,
            Stage.RERANK: self._rerank,
            Stage.FULLTEXT: self._fulltext,
            Stage.GEN1: self._gen1,
            Stage.GEN2: self._gen2,
            Stage.DESCRIBE: self._describe,
            Stage.REFINE: self._refine,
            Stage.TOURNAMENT: self._tournament,
        }

    def _now(self) -> str:
        return isoformat(self.clock.now())

    def _agent_args(self) -> dict:
        return {"gateway": self.gateway, "config": self.config, "prompts": self.prompts}

    def _fetcher(self) -> PayloadFetcher:
        if self.fetcher is None:
            self.fetcher = PayloadFetcher(self.settings.retrieval)
        return self.fetcher

    # ------------------------------------------------------------------
    # Driving
    # ------------------------------------------------------------------

    def _outputs(self, stage: Stage) -> List[str]:
        if stage == Stage.TOURNAMENT:
            return [self.store.stage_dir(stage), "elo", REPORT, WINNER]
        return [self.store.stage_dir(stage)]

    async def prepare_from_text(self) -> None:
        """Store the supplied document and mark the retrieval stages skipped."""
        if "document" not in self.state.extras:
            if self.from_text is None:
                raise ConfigError("This run was started with --from-text but the document is missing")
            acquirer = FulltextAcquirer(self.settings.retrieval, self.config.fulltext_min_chars, self._fetcher())
            doc = await acquirer.from_text(self.from_text)
            self.state.extras["document"] = self._write_document(DOCUMENT_DIR, doc)
        for stage in RETRIEVAL_STAGES:
            if not self.state.is_satisfied(stage):
                self.state.mark_skipped(stage, self._now())
        self.store.save(self.state)

    async def run_stage(self, stage: Stage) -> None:
        """
        Run one stage and checkpoint it.

        Raises:
            PrerequisiteError: a predecessor has not finished
            SolverForgeError: the stage failed; the manifest records it
        """
        self.state.mark_running(stage, self._now())
        self.store.save(self.state)
        self.store.clear(self._outputs(stage))
        logger.info(f"Stage {stage.value} started", extra = {"stage": stage.value, "run_dir": str(self.store.root)})

        try:
            artifacts = await self.handlers[stage]()
        except SolverForgeError as e:
            self.state.mark_failed(stage, f"{type(e).__name__}: {e}", self._now())
            self.store.save(self.state)
            logger.error(f"Stage {stage.value} failed: {e}", extra = {"stage": stage.value})
            raise
        except Exception as e:
            self.state.mark_failed(stage, f"{type(e).__name__}: {e}", self._now())
            self.store.save(self.state)
            logger.error(f"Stage {stage.value} crashed: {e}", extra = {"stage": stage.value}, exc_info = True)
            raise

        self.state.mark_complete(stage, artifacts, self._now())
        self.store.save(self.state)
        logger.info(
            f"Stage {stage.value} complete ({len(artifacts)} artifact(s))",
            extra = {"stage": stage.value},
        )

    async def run(
        self,
        stages: Optional[Sequence[Stage]] = None,
        until: Optional[Stage] = None,
    ) -> Optional[Path]:
        """
        Run every unfinished stage in order (or just `stages`), stopping after `until`.

        Returns:
            Path of the winner file once the tournament has completed
        """
        if self.state.from_text:
            await self.prepare_from_text()

        wanted = set(stages) if stages is not None else set(STAGE_ORDER)
        try:
            for stage in STAGE_ORDER:
                if stage in wanted and not self.state.is_satisfied(stage):
                    await self.run_stage(stage)
                if stage == until:
                    break
        finally:
            if self.fetcher is not None:
                await self.fetcher.aclose()

        if self.state.is_satisfied(Stage.TOURNAMENT):
            return self.store.path(WINNER)
        return None

    # ------------------------------------------------------------------
    # Loading predecessors
    # ------------------------------------------------------------------

    def load_queries(self) -> QuerySet:
        data = self.store.read_json(f"{self.store.stage_dir(Stage.REWRITE)}/queries.json")
        return QuerySet(queries = tuple(data["queries"]))

    def load_records(self, stage: Stage, name: str) -> List[PaperRecord]:
        data = self.store.read_json(f"{self.store.stage_dir(stage)}/{name}")
        return [PaperRecord(**r) for r in data["records"]]

    def load_decision(self) -> RerankDecision:
        data = self.store.read_json(f"{self.store.stage_dir(Stage.RERANK)}/decision.json")
        return RerankDecision(**data)

    def load_document(self) -> DocumentText:
        directory = DOCUMENT_DIR if self.state.from_text else self.store.stage_dir(Stage.FULLTEXT)
        meta = self.store.read_json(f"{directory}/document.json")
        text = self.store.read_text(f"{directory}/document.txt")
        return DocumentText(**meta, text = text)

    def load_initial(self) -> SolverArtifact:
        init = self.store.read_solver(self.store.stage_dir(Stage.GEN2), "initial-00")
        description_path = f"{self.store.stage_dir(Stage.DESCRIBE)}/description.txt"
        if self.state.is_satisfied(Stage.DESCRIBE):
            init = init.with_description(self.store.read_text(description_path))
        return init

    def load_pool(self) -> CandidatePool:
        directory = self.store.stage_dir(Stage.REFINE)
        ids = self.store.read_json(f"{directory}/pool.json")["members"]
        init = self.load_initial()
        refined = [self.store.read_solver(directory, cid) for cid in ids[1:]]
        return assemble_pool(init, refined, self.config.n_refined)

    def _write_document(self, directory: str, doc: DocumentText) -> Dict[str, str]:
        return dict([
            self.store.write_text(f"{directory}/document.txt", doc.text),
            self.store.write_json(f"{directory}/document.json", doc.model_dump(mode = "json", exclude = {"text"})),
        ])

    # ------------------------------------------------------------------
    # Stages
    # ------------------------------------------------------------------

    async def _rewrite(self) -> Dict[str, str]:
        queries = await QueryRewriter(**self._agent_args()).execute(self.task)
        relpath, digest = self.store.write_json(
            f"{self.store.stage_dir(Stage.REWRITE)}/queries.json", {"queries": list(queries.queries)}
        )
        return {relpath: digest}

    async def _search(self) -> Dict[str, str]:
        search = LiteratureSearch(self.settings.retrieval, self._fetcher(), self.config.max_concurrency)
        records = await search.search_all(self.load_queries(), self.config)
        relpath, digest = self.store.write_json(
            f"{self.store.stage_dir(Stage.SEARCH)}/records.json",
            {
                "records": [r.model_dump(mode = "json") for r in records],
                "failures": [
                    {"source": s.value, "query": q, "error": err} for s, q, err in search.failures
                ],
            },
        )
        return {relpath: digest}

    async def _pool(self) -> Dict[str, str]:
        records = self.load_records(Stage.SEARCH, "records.json")
        pool = build_candidate_pool(records, self.config)
        if not pool:
            raise RetrievalError("Candidate pool is empty: every search returned nothing or failed")
        logger.info(f"Candidate pool: {len(pool)} of {len(records)} raw record(s)")
        relpath, digest = self.store.write_json(
            f"{self.store.stage_dir(Stage.POOL)}/pool.json",
            {"records": [r.model_dump(mode = "json") for r in pool]},
        )
        return {relpath: digest}

    async def _rerank(self) -> Dict[str, str]:
        pool = self.load_records(Stage.POOL, "pool.json")
        decision = await Reranker(**self._agent_args()).execute(self.task, pool)
        relpath, digest = self.store.write_json(
            f"{self.store.stage_dir(Stage.RERANK)}/decision.json", decision.model_dump(mode = "json")
        )
        return {relpath: digest}

    async def _fulltext(self) -> Dict[str, str]:
        acquirer = FulltextAcquirer(self.settings.retrieval, self.config.fulltext_min_chars, self._fetcher())
        doc = await acquirer.acquire(self.load_decision())
        return self._write_document(self.store.stage_dir(Stage.FULLTEXT), doc)

    async def _gen1(self) -> Dict[str, str]:
        generator = SolverGenerator(**self._agent_args())
        pre = await generator.execute(self.task, self.load_document())
        return self.store.write_solver(self.store.stage_dir(Stage.GEN1), pre)

    async def _gen2(self) -> Dict[str, str]:
        pre = self.store.read_solver(self.store.stage_dir(Stage.GEN1), "preliminary-00")
        init = await SolverGenerator(**self._agent_args()).polish(pre, self.load_document())
        return self.store.write_solver(self.store.stage_dir(Stage.GEN2), init)

    async def _describe(self) -> Dict[str, str]:
        init = self.load_initial()
        description = await Describer(**self._agent_args()).execute(init, self.task)
        relpath, digest = self.store.write_text(
            f"{self.store.stage_dir(Stage.DESCRIBE)}/description.txt", description
        )
        return {relpath: digest}

    async def _refine(self) -> Dict[str, str]:
        init = self.load_initial()
        doc = self.load_document()
        refined = await Refiner(**self._agent_args()).execute(self.task, init, doc.paper_title, doc.venue)
        pool = assemble_pool(init, refined, self.config.n_refined)

        directory = self.store.stage_dir(Stage.REFINE)
        artifacts: Dict[str, str] = {}
        for artifact in refined:
            artifacts.update(self.store.write_solver(directory, artifact))
        relpath, digest = self.store.write_json(f"{directory}/pool.json", {"members": pool.ids})
        artifacts[relpath] = digest
        return artifacts

    def build_judge(self, pool: CandidatePool) -> Judge:
        spec = self.judge_spec
        if spec.kind == "oracle":
            order = pool.ids if spec.order == "pool" else list(reversed(pool.ids))
            seed = spec.seed if spec.seed is not None else derive_seed(self.state.seed, "oracle")
            return OracleJudge(order, flip_prob = spec.flip, seed = seed)
        return LLMJudge(pool = pool, task = self.task, **self._agent_args())

    async def _tournament(self) -> Dict[str, str]:
        pool = self.load_pool()
        judge = self.build_judge(pool)
        rng = random.Random(derive_seed(self.state.seed, "tournament"))

        async def on_match(record: MatchRecord) -> None:
            self.store.append_match(record)

        result = await run_tournament(pool, judge, self.config, rng, on_match = on_match)

        winner = pool.get(result.winner)
        artifacts = dict([
            self.store.write_text(WINNER, winner.source_text),
            self.store.write_standings(result.ranking),
            self.store.file_entry(MATCH_LOG),
        ])
        report = self.build_report(pool, result)
        artifacts.update([self.store.write_json(REPORT, report)])
        logger.info(
            f"Winner {result.winner} after {result.match_count} matches",
            extra = {"stage": Stage.TOURNAMENT.value, "winner": result.winner},
        )
        return artifacts

    def build_report(self, pool: CandidatePool, result: TournamentResult) -> dict:
        top1 = None
        raw_records = None
        pool_size = None
        if not self.state.from_text:
            decision = self.load_decision()
            top1 = {
                "algorithm_name": decision.algorithm_name,
                "paper_title": decision.paper_title,
                "venue": decision.venue,
                "year": decision.year,
            }
            raw_records = len(self.load_records(Stage.SEARCH, "records.json"))
            pool_size = len(self.load_records(Stage.POOL, "pool.json"))

        n = len(pool)
        return {
            "task": self.task.name or self.task.desc,
            "seed": self.state.seed,
            "top1": top1,
            "raw_records": raw_records,
            "pool_size": pool_size,
            "candidates": pool.ids,
            "match_count": result.match_count,
            "exhaustive_pairs": n * (n - 1) // 2,
            "aborted_matches": result.aborted,
            "llm_calls": self.store.transcript_count(),
            "winner": {"id": result.winner, "path": WINNER},
            "standings": [
                {"id": s.id, "rating": s.rating, "rd": s.rd, "matches": s.matches}
                for s in result.ranking
            ],
        }

    # ------------------------------------------------------------------
    # Ablation path
    # ------------------------------------------------------------------

    async def run_ungrounded(self) -> Path:
        """Generate the ungrounded solver; kept outside the stage graph."""
        self.store.clear([UNGROUNDED_DIR])
        artifact = await SolverGenerator(**self._agent_args()).generate_ungrounded(self.task)
        self.state.extras["ungrounded"] = self.store.write_solver(UNGROUNDED_DIR, artifact)
        self.store.save(self.state)
        return self.store.path(f"{UNGROUNDED_DIR}/{artifact.id}.txt")

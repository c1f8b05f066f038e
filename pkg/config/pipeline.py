"""
Run hyperparameters.

A run is configured by one YAML document. Every field has a compiled-in default,
so an empty file is a valid configuration. Unknown keys are rejected.
"""

from pathlib import Path
from typing import Optional, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from src.errors import ConfigError

RD_FLOOR = 30.0


class SamplingParams(BaseModel):
    """Sampling parameters for one prompt."""

    model_config = ConfigDict(frozen = True, extra = "forbid")

    temperature: float = Field(default = 0.0, ge = 0.0, le = 2.0, description = "Sampling temperature")
    max_tokens: int = Field(default = 8192, ge = 1, description = "Maximum output tokens")


def _sampling(temperature: float, max_tokens: int):
    return lambda: SamplingParams(temperature = temperature, max_tokens = max_tokens)


class SamplingConfig(BaseModel):
    """Per-prompt sampling; parsing-heavy prompts lean deterministic, refinement leans diverse."""

    model_config = ConfigDict(frozen = True, extra = "forbid")

    rewrite: SamplingParams = Field(default_factory = _sampling(0.2, 1024))
    rerank: SamplingParams = Field(default_factory = _sampling(0.0, 8192))
    meta_query: SamplingParams = Field(default_factory = _sampling(0.2, 16000))
    gen_stage1: SamplingParams = Field(default_factory = _sampling(0.2, 16000))
    gen_stage2: SamplingParams = Field(default_factory = _sampling(0.0, 16000))
    reverse: SamplingParams = Field(default_factory = _sampling(0.2, 1024))
    refine: SamplingParams = Field(default_factory = _sampling(0.9, 16000))
    judge: SamplingParams = Field(default_factory = _sampling(0.0, 4096))

    def for_prompt(self, name: str) -> SamplingParams:
        return getattr(self, name)


class PipelineConfig(BaseModel):
    """
    Hyperparameters of one run.

    Defaults reproduce the reference configuration: 8 queries, 30/10 recalls per
    query, 25/15 retained per source, 40 reranked, 10 refined candidates, Elo
    1500/350, prune gap 400, 3 then 6 matches per solver, lambda 10.
    """

    model_config = ConfigDict(frozen = True, extra = "forbid")

    # Retrieval
    n_queries: int = Field(default = 8, ge = 1, description = "Rewritten search queries (K)")
    recall_openalex: int = Field(default = 30, ge = 1, description = "Per-query recall cap, OpenAlex")
    recall_arxiv: int = Field(default = 10, ge = 1, description = "Per-query recall cap, arXiv")
    keep_openalex: int = Field(default = 25, ge = 1, description = "Retained after dedup, OpenAlex")
    keep_arxiv: int = Field(default = 15, ge = 1, description = "Retained after dedup, arXiv")
    rerank_pool: int = Field(default = 40, ge = 1, description = "Candidates shown to the reranker")

    # Refinement
    n_refined: int = Field(default = 10, ge = 1, description = "Refined candidates per run (C)")

    # Elo arena
    elo_initial_rating: float = Field(default = 1500.0, description = "Initial rating")
    elo_initial_rd: float = Field(default = 350.0, description = "Initial rating deviation")
    elo_prune_gap: float = Field(default = 400.0, ge = 0.0, description = "Rating gap for pruning")
    matches_phase1: int = Field(default = 3, ge = 1, description = "Minimum matches per solver in phase 1")
    matches_total: int = Field(default = 6, ge = 1, description = "Target matches per solver")
    phase2_lambda: float = Field(default = 10.0, ge = 0.0, description = "Scarcity weight in phase 2")

    rng_seed: int = Field(default = 0, description = "Root seed for every random draw of the run")

    # Backend and plumbing
    model: Optional[str] = Field(None, description = "Override of the provider's model name")
    prompts_path: Optional[str] = Field(None, description = "Alternative prompt library file")
    sampling: SamplingConfig = Field(default_factory = SamplingConfig)
    fulltext_min_chars: int = Field(default = 2000, ge = 1, description = "Minimum extracted document length")
    document_char_budget: int = Field(default = 300000, ge = 1000, description = "Document characters sent per prompt")
    max_concurrency: int = Field(default = 4, ge = 1, description = "Concurrent requests within a stage")
    parse_retries: int = Field(default = 1, ge = 0, description = "Re-asks after a response without the expected JSON")
    structure_retries: int = Field(default = 1, ge = 0, description = "Re-prompts after a structural failure")
    refine_attempts: int = Field(default = 3, ge = 1, description = "Generation attempts per refined slot")
    judge_parse_retries: int = Field(default = 2, ge = 0, description = "Re-asks after an unparseable verdict")
    max_aborted_matches: int = Field(default = 5, ge = 1, description = "Consecutive aborted matches tolerated")

    @model_validator(mode = "after")
    def check_invariants(self) -> "PipelineConfig":
        if self.rerank_pool != self.keep_openalex + self.keep_arxiv:
            raise ValueError(
                f"rerank_pool ({self.rerank_pool}) must equal keep_openalex + keep_arxiv "
                f"({self.keep_openalex} + {self.keep_arxiv})"
            )
        if self.matches_total < self.matches_phase1:
            raise ValueError(
                f"matches_total ({self.matches_total}) must be >= matches_phase1 "
                f"({self.matches_phase1})"
            )
        if self.elo_initial_rd < RD_FLOOR:
            raise ValueError(f"elo_initial_rd must be >= {RD_FLOOR}")
        return self

    @property
    def raw_recall_cap(self) -> int:
        return self.n_queries * (self.recall_openalex + self.recall_arxiv)


def _describe(e: ValidationError) -> str:
    parts = []
    for err in e.errors():
        loc = ".".join(str(p) for p in err["loc"]) or "config"
        parts.append(f"{loc}: {err['msg']}")
    return "; ".join(parts)


def parse_config(text: str, source: str = "<string>") -> PipelineConfig:
    """Parse a YAML document into a validated PipelineConfig."""
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"{source}: not valid YAML: {e}") from e

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{source}: expected a mapping at top level")

    try:
        return PipelineConfig(**data)
    except ValidationError as e:
        raise ConfigError(f"{source}: {_describe(e)}") from e


def load_config(path: Union[str, Path]) -> PipelineConfig:
    """
    Load a run configuration.

    Raises:
        ConfigError: missing file, YAML error, unknown key or violated invariant
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Config file not found: {path}")
    return parse_config(path.read_text(encoding = "utf-8"), source = str(path))


def dump_config(config: PipelineConfig) -> str:
    """Serialize a config to YAML; parse_config(dump_config(c)) == c."""
    return yaml.safe_dump(config.model_dump(mode = "json"), sort_keys = False)

#!/usr/bin/env python3
"""
Validate settings, a run configuration, prompts and task files.

Run this before starting a long run:

    python scripts/validate_config.py [--config run.yaml] [--task tasks/bbob.yaml ...]
"""

import argparse
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import LLMProvider, PipelineConfig, get_prompt_library, get_settings, load_config
from src.errors import SolverForgeError
from src.models.task import parse_task


def print_header(text: str) -> None:
    """Print a section header."""
    print(f"\n{'=' * 60}")
    print(f"  {text}")
    print('=' * 60)


def print_success(text: str) -> None:
    print(f"✅ {text}")


def print_error(text: str) -> None:
    print(f"❌ {text}")


def print_warning(text: str) -> None:
    print(f"⚠️  {text}")


def validate_settings() -> bool:
    """Environment settings: backend credentials and retrieval endpoints."""
    print_header("Validating Settings")
    settings = get_settings()
    all_valid = True

    print(f"\n🤖 LLM Provider: {settings.llm.provider.value}")
    print(f"   Model: {settings.backend_model()}")
    print(f"   Retries: {settings.llm.max_retries}")

    if settings.llm.provider == LLMProvider.CLAUDE:
        if settings.llm.claude.api_key is None:
            print_error("Claude API key not configured (LLM__CLAUDE__API_KEY)")
            all_valid = False
        else:
            print_success("Claude API key configured")
    elif settings.llm.provider == LLMProvider.OPENAI:
        if settings.llm.openai.api_key is None:
            print_error("OpenAI API key not configured (LLM__OPENAI__API_KEY)")
            all_valid = False
        else:
            print_success("OpenAI API key configured")
        if settings.llm.openai.base_url:
            print(f"   Base URL: {settings.llm.openai.base_url}")
    else:
        fixture = settings.llm.scripted.fixture_path
        if fixture is None or not Path(fixture).is_file():
            print_error(f"Scripted fixture not found: {fixture}")
            all_valid = False
        else:
            print_success(f"Scripted fixture: {fixture}")

    print(f"\n📚 Retrieval:")
    print(f"   OpenAlex: {settings.retrieval.openalex_url}")
    print(f"   arXiv: {settings.retrieval.arxiv_url}")
    if settings.retrieval.fixture_dir:
        print(f"   Replaying payloads from {settings.retrieval.fixture_dir}")
    if not settings.retrieval.mailto:
        print_warning("RETRIEVAL__MAILTO not set; OpenAlex requests go to the common pool")

    print(f"\n📝 Logging:")
    print(f"   Level: {settings.logging.level}")
    print(f"   Format: {settings.logging.format.value}")
    return all_valid


def validate_run_config(path: Path | None) -> PipelineConfig | None:
    print_header("Validating Run Configuration")
    try:
        config = load_config(path) if path else PipelineConfig()
    except SolverForgeError as e:
        print_error(str(e))
        return None

    print_success(f"Configuration loaded: {path or 'defaults'}")
    print(f"   Queries: {config.n_queries}  pool: {config.rerank_pool}  candidates: {config.n_refined}")
    print(f"   Elo: R0={config.elo_initial_rating} rd0={config.elo_initial_rd} "
          f"gap={config.elo_prune_gap} matches={config.matches_phase1}/{config.matches_total}")
    return config


def validate_prompts(config: PipelineConfig) -> bool:
    print_header("Validating Prompts")
    library = get_prompt_library(config.prompts_path)
    issues = library.validate()
    if not issues:
        print_success(f"{len(library.templates)} templates loaded")
        return True
    for kind, names in issues.items():
        for name in names:
            print_error(f"{kind}: {name}")
    return "load_errors" not in issues and "empty_templates" not in issues


def validate_tasks(paths: list[Path], config: PipelineConfig) -> bool:
    if not paths:
        return True
    print_header("Validating Tasks")
    library = get_prompt_library(config.prompts_path)
    all_valid = True
    for path in paths:
        try:
            task = parse_task(path)
            library.bind("task", **task.slots())
        except SolverForgeError as e:
            print_error(f"{path}: {e}")
            all_valid = False
            continue
        print_success(f"{path}: {task.dim_label}, budget {task.budget}")
    return all_valid


def main() -> int:
    parser = argparse.ArgumentParser(description = __doc__.strip().splitlines()[0])
    parser.add_argument("--config", type = Path)
    parser.add_argument("--task", type = Path, action = "append", default = [])
    args = parser.parse_args()

    ok = validate_settings()
    config = validate_run_config(args.config)
    if config is None:
        return 1
    ok = validate_prompts(config) and ok
    ok = validate_tasks(args.task, config) and ok

    print_header("Result")
    if ok:
        print_success("All checks passed")
        return 0
    print_error("Some checks failed")
    return 1


if __name__ == "__main__":
    sys.exit(main())

"""
Command-line interface.

    solver-forge run --task T --config C --out D [--seed N] [--from-text F] [--judge J]
    solver-forge resume --out D
    solver-forge retrieve|generate|refine|tournament --out D [--task T --config C ...]
    solver-forge generate --ungrounded --out D --task T
    solver-forge simulate [--candidates 11] [--seeds 100] [--flip 0.1] [--config C]

Exit status: 0 on success, otherwise the failing error's exit code
(2 input, 3 network, 4 parse, 5 structural, 6 tournament, 1 anything else).
"""

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from config import LLMProvider, PipelineConfig, dump_config, get_settings, load_config
from src.arena import simulate_tournaments
from src.errors import SolverForgeError, TaskError
from src.llm import LLMGateway
from src.orchestrator import STAGE_GROUPS, WINNER, JudgeSpec, Pipeline, RunStore
from src.utils import LogicalClock, configure_logging

logger = logging.getLogger("solver_forge.cli")


def _add_run_inputs(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--task", type = Path, required = required, help = "Task file (YAML)")
    parser.add_argument("--config", type = Path, help = "Run configuration (YAML); defaults apply when omitted")
    parser.add_argument("--seed", type = int, help = "Root seed (default: rng_seed from the config)")
    parser.add_argument("--from-text", type = Path, help = "Paper text or PDF; skips retrieval")
    parser.add_argument("--judge", default = "llm", help = "llm | oracle:flip=<p>[,order=pool|reverse][,seed=<n>]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog = "solver-forge",
        description = "Generate a literature-grounded solver for an expensive optimization task.",
    )
    parser.add_argument("--log-level", help = "Override LOGGING__LEVEL")
    sub = parser.add_subparsers(dest = "command", required = True)

    run = sub.add_parser("run", help = "Run every stage")
    _add_run_inputs(run, required = True)
    run.add_argument("--out", type = Path, required = True, help = "Run directory")

    resume = sub.add_parser("resume", help = "Continue an interrupted run")
    resume.add_argument("--out", type = Path, required = True, help = "Run directory")

    for name, help_text in (
        ("retrieve", "Query rewrite, search, pool, rerank and full text"),
        ("generate", "Preliminary and initial solver"),
        ("refine", "Description and refined candidates"),
        ("tournament", "Elo tournament over the candidate pool"),
    ):
        stage = sub.add_parser(name, help = help_text)
        _add_run_inputs(stage, required = False)
        stage.add_argument("--out", type = Path, required = True, help = "Run directory")
        if name == "generate":
            stage.add_argument("--ungrounded", action = "store_true", help = "Generate without retrieval")

    simulate = sub.add_parser("simulate", help = "Oracle-judged tournaments, no backend")
    simulate.add_argument("--config", type = Path, help = "Run configuration (YAML)")
    simulate.add_argument("--candidates", type = int, default = 11)
    simulate.add_argument("--seeds", type = int, default = 100, help = "Number of seeded tournaments")
    simulate.add_argument("--flip", type = float, default = 0.0, help = "Oracle flip probability")
    return parser


def _config(path: Optional[Path]) -> tuple[PipelineConfig, str]:
    if path is None:
        config = PipelineConfig()
        return config, dump_config(config)
    config = load_config(path)
    return config, path.read_text(encoding = "utf-8")


def open_store(args: argparse.Namespace) -> RunStore:
    """Existing run directory, or a new one initialized from --task/--config."""
    store = RunStore(args.out)
    if store.exists:
        return store
    task = getattr(args, "task", None)
    if task is None:
        raise TaskError("--task is required to start a new run")
    config, text = _config(getattr(args, "config", None))
    JudgeSpec.parse(args.judge)
    seed = args.seed if args.seed is not None else config.rng_seed
    store.create(
        config,
        text,
        task,
        seed = seed,
        from_text = args.from_text is not None,
        judge = args.judge,
    )
    return store


def make_pipeline(store: RunStore, from_text: Optional[Path] = None) -> Pipeline:
    settings = get_settings()
    config = store.load_config()
    clock = None
    if settings.llm.provider == LLMProvider.SCRIPTED:
        # Two clock reads per exchange; continue where the previous session stopped.
        clock = LogicalClock(start_tick = 2 * store.transcript_count())
    gateway = LLMGateway(sink = store, clock = clock, settings = settings, model = config.model)
    return Pipeline(store, gateway, settings = settings, from_text = from_text)


async def _run(args: argparse.Namespace) -> int:
    if args.command == "simulate":
        config, _ = _config(args.config)
        report = await simulate_tournaments(args.candidates, range(args.seeds), args.flip, config)
        print(json.dumps(report.model_dump(exclude = {"match_counts"}), indent = 2))
        return 0

    if args.command == "resume":
        store = RunStore(args.out)
        pipeline = make_pipeline(store)
        if pipeline.state.is_complete:
            print(store.path(WINNER))
            return 0
        winner = await pipeline.run()
        print(winner)
        return 0

    store = open_store(args)
    pipeline = make_pipeline(store, getattr(args, "from_text", None))

    if args.command == "run":
        print(await pipeline.run())
        return 0

    if args.command == "generate" and args.ungrounded:
        print(await pipeline.run_ungrounded())
        return 0

    winner = await pipeline.run(stages = STAGE_GROUPS[args.command])
    if winner is not None:
        print(winner)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    configure_logging(settings.logging, level = args.log_level)

    try:
        return asyncio.run(_run(args))
    except SolverForgeError as e:
        logger.error(f"{e.category} error: {e}")
        print(f"error ({e.category}): {e}", file = sys.stderr)
        return e.exit_code
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())

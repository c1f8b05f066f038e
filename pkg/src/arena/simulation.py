"""
Seeded tournament simulations with the oracle judge.

Used to check match efficiency and ranking recovery without any backend.
"""

import random
import statistics
from typing import Iterable, List

from pydantic import BaseModel, Field

from config.pipeline import PipelineConfig
from src.utils.seeding import derive_seed
from .judges import OracleJudge
from .tournament import run_tournament


class SimulationReport(BaseModel):
    """Aggregate over seeded tournaments."""

    n_candidates: int
    flip_prob: float
    runs: int
    match_counts: List[int] = Field(default_factory = list)
    mean_matches: float
    min_matches: int
    max_matches: int
    exhaustive_pairs: int
    exhaustive_fraction: float
    winner_recovered: int

    @property
    def recovery_rate(self) -> float:
        return self.winner_recovered / self.runs if self.runs else 0.0


def candidate_ids(n: int) -> List[str]:
    """Simulation ids; index 0 is the true best."""
    return [f"cand-{i:02d}" for i in range(n)]


async def simulate_tournaments(
    n_candidates: int,
    seeds: Iterable[int],
    flip_prob: float,
    config: PipelineConfig,
) -> SimulationReport:
    """
    One tournament per seed over a known truth order.

    Each seed drives the tournament rng and the oracle's noise through
    separately derived streams.
    """
    ids = candidate_ids(n_candidates)
    counts: List[int] = []
    recovered = 0

    for seed in seeds:
        judge = OracleJudge(ids, flip_prob = flip_prob, seed = derive_seed(seed, "oracle"))
        rng = random.Random(derive_seed(seed, "tournament"))
        result = await run_tournament(ids, judge, config, rng)
        counts.append(result.match_count)
        if result.winner == ids[0]:
            recovered += 1

    if not counts:
        raise ValueError("at least one seed is required")

    pairs = n_candidates * (n_candidates - 1) // 2
    mean = statistics.fmean(counts)
    return SimulationReport(
        n_candidates = n_candidates,
        flip_prob = flip_prob,
        runs = len(counts),
        match_counts = counts,
        mean_matches = mean,
        min_matches = min(counts),
        max_matches = max(counts),
        exhaustive_pairs = pairs,
        exhaustive_fraction = mean / pairs,
        winner_recovered = recovered,
    )

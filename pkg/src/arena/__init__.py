"""
Instance-free evaluation: Elo ratings, two-phase pairing and the tournament.

Usage:
    from src.arena import run_tournament, OracleJudge

    result = await run_tournament(pool, judge, config, rng)
    print(result.winner)
"""

from .elo import (
    apply_match,
    confidence_interval,
    decay_rd,
    expected_score,
    initial_states,
    k_multiplier,
    rank_candidates,
    should_prune,
)
from .judges import ORACLE_REF, Judge, OracleJudge, Verdict, assign_positions
from .scheduler import phase1_priority, phase2_priority, select_next_pair
from .simulation import SimulationReport, candidate_ids, simulate_tournaments
from .tournament import Tournament, TournamentResult, run_tournament

__all__ = [
    "apply_match",
    "confidence_interval",
    "decay_rd",
    "expected_score",
    "initial_states",
    "k_multiplier",
    "rank_candidates",
    "should_prune",
    "ORACLE_REF",
    "Judge",
    "OracleJudge",
    "Verdict",
    "assign_positions",
    "phase1_priority",
    "phase2_priority",
    "select_next_pair",
    "SimulationReport",
    "candidate_ids",
    "simulate_tournaments",
    "Tournament",
    "TournamentResult",
    "run_tournament",
]

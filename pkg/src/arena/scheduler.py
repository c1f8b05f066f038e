"""
Two-phase pairing.

Phase 1 spreads matches: the pair with the fewest combined matches goes
next, small random jitter breaking ties, unplayed pairs first. Phase 2 mixes
rating proximity with match scarcity and skips pairs whose outcome is
already clear.
"""

import itertools
import logging
import random
from typing import Dict, Iterable, List, Optional

from config.pipeline import PipelineConfig
from src.models import EloState, MatchRecord, PairingProposal
from .elo import should_prune

logger = logging.getLogger(__name__)

JITTER = 0.1


def phase1_priority(m_i: int, m_j: int, epsilon: float) -> float:
    return -(m_i + m_j) + epsilon


def phase2_priority(r_i: float, r_j: float, m_i: int, m_j: int, config: PipelineConfig) -> float:
    proximity = 1000.0 / (abs(r_i - r_j) + 1.0)
    scarcity = config.phase2_lambda * (config.matches_total - (m_i + m_j) / 2.0)
    return proximity + scarcity


def _pairs(states: Dict[str, EloState]) -> List[tuple[str, str]]:
    return list(itertools.combinations(sorted(states), 2))


def _played(records: Iterable[MatchRecord]) -> set[frozenset]:
    return {frozenset((r.first, r.second)) for r in records}


def phase1_proposals(
    states: Dict[str, EloState],
    records: Iterable[MatchRecord],
    config: PipelineConfig,
    rng: random.Random,
) -> List[PairingProposal]:
    """Eligible phase-1 pairs; unplayed ones only, when any remain."""
    target = config.matches_phase1
    eligible = [
        (a, b) for a, b in _pairs(states)
        if states[a].matches < target or states[b].matches < target
    ]
    played = _played(records)
    unplayed = [p for p in eligible if frozenset(p) not in played]
    proposals = []
    for a, b in unplayed or eligible:
        epsilon = rng.random() * JITTER
        proposals.append(PairingProposal(
            pair = (a, b),
            priority = phase1_priority(states[a].matches, states[b].matches, epsilon),
            phase = 1,
            epsilon = epsilon,
        ))
    return proposals


def phase2_proposals(states: Dict[str, EloState], config: PipelineConfig) -> List[PairingProposal]:
    target = config.matches_total
    proposals = []
    for a, b in _pairs(states):
        sa, sb = states[a], states[b]
        if sa.matches >= target and sb.matches >= target:
            continue
        proposals.append(PairingProposal(
            pair = (a, b),
            priority = phase2_priority(sa.rating, sb.rating, sa.matches, sb.matches, config),
            phase = 2,
            pruned = should_prune(sa, sb, config.elo_prune_gap),
        ))
    return proposals


def _best(proposals: List[PairingProposal]) -> Optional[PairingProposal]:
    if not proposals:
        return None
    # max() keeps the first of equal priorities, i.e. sorted-id order.
    return max(proposals, key = lambda p: p.priority)


def select_next_pair(
    states: Dict[str, EloState],
    records: Iterable[MatchRecord],
    phase: int,
    config: PipelineConfig,
    rng: random.Random,
) -> Optional[PairingProposal]:
    """
    Highest-priority eligible pair for the phase, or None when the phase is done.

    In phase 2, when every eligible pair is pruned, the prune flag is ignored
    for that step so every candidate still reaches its match target.
    """
    if phase == 1:
        return _best(phase1_proposals(states, records, config, rng))

    proposals = phase2_proposals(states, config)
    kept = [p for p in proposals if not p.pruned]
    if proposals and not kept:
        logger.debug("All eligible phase-2 pairs pruned; ignoring the prune flag for this step")
        return _best(proposals)
    return _best(kept)

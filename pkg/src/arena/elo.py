"""
Elo math: expected score, dynamic K, rating deviation and pruning.
"""

from typing import Dict, Iterable, Tuple

from config.pipeline import RD_FLOOR, PipelineConfig
from src.errors import TournamentError
from src.models import EloState, MatchRecord

K_BASE = 32.0
RD_DECAY = 0.95
Z_95 = 1.96


def expected_score(r_self: float, r_other: float) -> float:
    """Probability that a player rated `r_self` beats one rated `r_other`."""
    return 1.0 / (1.0 + 10.0 ** ((r_other - r_self) / 400.0))


def k_multiplier(matches: int) -> float:
    """K = 32 (1 + 50 / (m + 10)); 192 for a fresh candidate, tending to 32."""
    return K_BASE * (1.0 + 50.0 / (matches + 10.0))


def decay_rd(rd: float) -> float:
    return max(RD_FLOOR, RD_DECAY * rd)


def confidence_interval(state: EloState) -> Tuple[float, float]:
    """Approximate 95% interval R +/- 1.96 rd."""
    half = Z_95 * state.rd
    return (state.rating - half, state.rating + half)


def should_prune(a: EloState, b: EloState, gap: float) -> bool:
    """True when the ratings are more than `gap` apart and the intervals do not overlap."""
    if abs(a.rating - b.rating) <= gap:
        return False
    low, high = (a, b) if a.rating < b.rating else (b, a)
    return confidence_interval(low)[1] < confidence_interval(high)[0]


def initial_states(ids: Iterable[str], config: PipelineConfig) -> Dict[str, EloState]:
    return {
        cid: EloState(id = cid, rating = config.elo_initial_rating, rd = config.elo_initial_rd)
        for cid in ids
    }


def apply_match(
    states: Dict[str, EloState],
    winner: str,
    loser: str,
    *,
    index: int,
    phase: int,
    first: str,
    second: str,
    judge_ref: str = "",
) -> Tuple[Dict[str, EloState], MatchRecord]:
    """
    Update both contestants from their pre-match values.

    E and K use pre-match ratings and counts; both deviations decay and both
    counts increase by one.

    Raises:
        TournamentError: unknown id or self-match
    """
    if winner == loser:
        raise TournamentError(f"{winner} cannot play itself")
    for cid in (winner, loser):
        if cid not in states:
            raise TournamentError(f"Unknown candidate: {cid}")

    w, l = states[winner], states[loser]
    e_w = expected_score(w.rating, l.rating)
    e_l = expected_score(l.rating, w.rating)
    delta_w = k_multiplier(w.matches) * (1.0 - e_w)
    delta_l = -k_multiplier(l.matches) * e_l

    record = MatchRecord(
        index = index,
        phase = phase,
        first = first,
        second = second,
        winner = winner,
        loser = loser,
        winner_rating = w.rating,
        loser_rating = l.rating,
        winner_rd = w.rd,
        loser_rd = l.rd,
        winner_matches = w.matches,
        loser_matches = l.matches,
        expected_winner = e_w,
        delta_winner = delta_w,
        delta_loser = delta_l,
        judge_ref = judge_ref,
    )

    updated = dict(states)
    updated[winner] = EloState(id = winner, rating = w.rating + delta_w, rd = decay_rd(w.rd), matches = w.matches + 1)
    updated[loser] = EloState(id = loser, rating = l.rating + delta_l, rd = decay_rd(l.rd), matches = l.matches + 1)
    return updated, record


def rank_candidates(states: Dict[str, EloState]) -> list[EloState]:
    """Standings: rating descending, then fewer matches, then id."""
    return sorted(states.values(), key = lambda s: (-s.rating, s.matches, s.id))

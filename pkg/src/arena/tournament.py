"""
Sequential Elo tournament over a candidate pool.
"""

import logging
import random
from dataclasses import dataclass, field
from typing import Awaitable, Callable, Dict, List, Optional, Sequence, Union

from config.pipeline import PipelineConfig
from src.errors import TournamentError, VerdictError
from src.models import CandidatePool, EloState, MatchRecord
from .elo import apply_match, initial_states, rank_candidates
from .judges import Judge
from .scheduler import select_next_pair

logger = logging.getLogger(__name__)

MatchCallback = Callable[[MatchRecord], Awaitable[None]]


@dataclass
class TournamentResult:
    """Final states, the match log and the standings (winner first)."""
    states: Dict[str, EloState]
    records: List[MatchRecord]
    ranking: List[EloState]
    aborted: int = 0
    phase1_matches: int = 0

    @property
    def winner(self) -> str:
        return self.ranking[0].id

    @property
    def match_count(self) -> int:
        return len(self.records)

    def exhaustive_fraction(self) -> float:
        n = len(self.states)
        return self.match_count / (n * (n - 1) / 2)


@dataclass
class Tournament:
    """
    Runs phase 1 then phase 2 until no eligible pair remains.

    Matches run one at a time so each pairing sees the latest ratings. An
    aborted match (no usable verdict) changes nothing; more than
    `max_aborted_matches` aborts in a row fail the tournament.
    """
    ids: Sequence[str]
    judge: Judge
    config: PipelineConfig
    rng: random.Random
    on_match: Optional[MatchCallback] = None
    states: Dict[str, EloState] = field(init = False, default_factory = dict)
    records: List[MatchRecord] = field(init = False, default_factory = list)

    def __post_init__(self) -> None:
        if len(self.ids) < 2:
            raise TournamentError(f"A tournament needs at least 2 candidates, got {len(self.ids)}")
        if len(set(self.ids)) != len(self.ids):
            raise TournamentError("Candidate ids must be distinct")
        self.states = initial_states(self.ids, self.config)

    async def _play_phase(self, phase: int) -> int:
        aborted = 0
        consecutive = 0
        while True:
            proposal = select_next_pair(self.states, self.records, phase, self.config, self.rng)
            if proposal is None:
                return aborted

            a, b = proposal.pair
            try:
                verdict = await self.judge.judge(a, b, self.rng)
            except VerdictError as e:
                aborted += 1
                consecutive += 1
                logger.warning(f"Match {a} vs {b} aborted: {e}", extra = {"phase": phase})
                if consecutive > self.config.max_aborted_matches:
                    raise TournamentError(
                        f"{consecutive} consecutive matches without a usable verdict"
                    ) from e
                continue

            consecutive = 0
            self.states, record = apply_match(
                self.states,
                verdict.winner,
                verdict.loser,
                index = len(self.records),
                phase = phase,
                first = verdict.first,
                second = verdict.second,
                judge_ref = verdict.judge_ref,
            )
            self.records.append(record)
            logger.debug(
                f"Match {record.index}: {record.winner} beat {record.loser}",
                extra = {"phase": phase, "match": record.index},
            )
            if self.on_match is not None:
                await self.on_match(record)

    async def run(self) -> TournamentResult:
        aborted = await self._play_phase(1)
        phase1 = len(self.records)
        aborted += await self._play_phase(2)

        ranking = rank_candidates(self.states)
        logger.info(
            f"Tournament finished: {len(self.records)} matches "
            f"({phase1} in phase 1, {aborted} aborted), winner {ranking[0].id}"
        )
        return TournamentResult(
            states = dict(self.states),
            records = list(self.records),
            ranking = ranking,
            aborted = aborted,
            phase1_matches = phase1,
        )


async def run_tournament(
    pool: Union[CandidatePool, Sequence[str]],
    judge: Judge,
    config: PipelineConfig,
    rng: random.Random,
    on_match: Optional[MatchCallback] = None,
) -> TournamentResult:
    """Run a full tournament over a pool (or plain ids)."""
    ids = pool.ids if isinstance(pool, CandidatePool) else list(pool)
    return await Tournament(ids, judge, config, rng, on_match).run()

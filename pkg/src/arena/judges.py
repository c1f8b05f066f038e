"""
Judge interface and the simulated oracle judge.
"""

import random
from dataclasses import dataclass
from typing import Protocol, Sequence

ORACLE_REF = "oracle"


@dataclass(frozen = True)
class Verdict:
    """
    Outcome of one comparison.

    Attributes:
        first: candidate presented as "Algorithm A"
        second: candidate presented as "Algorithm B"
        judge_ref: transcript index of the verdict, or the oracle tag
    """
    winner: str
    first: str
    second: str
    judge_ref: str = ""

    @property
    def loser(self) -> str:
        return self.second if self.winner == self.first else self.first


class Judge(Protocol):
    """Decides a match; `rng` draws the A/B position assignment."""

    async def judge(self, a: str, b: str, rng: random.Random) -> Verdict: ...


def assign_positions(a: str, b: str, rng: random.Random) -> tuple[str, str]:
    """Uniform A/B assignment."""
    return (a, b) if rng.random() < 0.5 else (b, a)


class OracleJudge:
    """
    Ground-truth judge with symmetric noise.

    Picks the candidate ranked better in `truth_order` (index 0 is best),
    flipped with probability `flip_prob` using its own seeded rng.
    """

    def __init__(self, truth_order: Sequence[str], flip_prob: float = 0.0, seed: int = 0):
        if not 0.0 <= flip_prob <= 1.0:
            raise ValueError(f"flip_prob must be in [0, 1], got {flip_prob}")
        self.rank = {cid: i for i, cid in enumerate(truth_order)}
        self.flip_prob = flip_prob
        self.rng = random.Random(seed)
        self.calls = 0

    async def judge(self, a: str, b: str, rng: random.Random) -> Verdict:
        first, second = assign_positions(a, b, rng)
        better, worse = (a, b) if self.rank[a] < self.rank[b] else (b, a)
        self.calls += 1
        winner = worse if self.rng.random() < self.flip_prob else better
        return Verdict(winner = winner, first = first, second = second, judge_ref = ORACLE_REF)

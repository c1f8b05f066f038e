"""
Rating state and match records of the tournament.
"""

from typing import Optional

from pydantic import Field, model_validator

from .base import BaseModelWithConfig


class EloState(BaseModelWithConfig):
    """Rating, deviation and match count of one candidate."""

    id: str
    rating: float
    rd: float = Field(..., ge = 30.0)
    matches: int = Field(default = 0, ge = 0)

    @property
    def interval(self) -> tuple[float, float]:
        half = 1.96 * self.rd
        return (self.rating - half, self.rating + half)


class MatchRecord(BaseModelWithConfig):
    """
    One adjudicated match. Pre-match fields are enough to recompute the deltas.

    Attributes:
        first: candidate shown as "Algorithm A"
        second: candidate shown as "Algorithm B"
        judge_ref: transcript reference of the verdict, or the oracle tag
    """

    index: int = Field(..., ge = 0)
    phase: int = Field(..., ge = 1, le = 2)
    first: str
    second: str
    winner: str
    loser: str
    winner_rating: float
    loser_rating: float
    winner_rd: float
    loser_rd: float
    winner_matches: int = Field(..., ge = 0)
    loser_matches: int = Field(..., ge = 0)
    expected_winner: float = Field(..., gt = 0.0, lt = 1.0)
    delta_winner: float = Field(..., ge = 0.0)
    delta_loser: float = Field(..., le = 0.0)
    judge_ref: str = ""

    @model_validator(mode = "after")
    def check_contestants(self) -> "MatchRecord":
        if self.first == self.second:
            raise ValueError("a candidate cannot play itself")
        if {self.winner, self.loser} != {self.first, self.second}:
            raise ValueError("winner and loser must be the two contestants")
        return self

    def involves(self, candidate_id: str) -> bool:
        return candidate_id in (self.first, self.second)


class PairingProposal(BaseModelWithConfig):
    """A scheduling candidate: pair, priority and the jitter used (phase 1 only)."""

    pair: tuple[str, str]
    priority: float
    phase: int = Field(..., ge = 1, le = 2)
    epsilon: Optional[float] = Field(None, ge = 0.0, lt = 0.1)
    pruned: bool = False

    @model_validator(mode = "after")
    def distinct(self) -> "PairingProposal":
        if self.pair[0] == self.pair[1]:
            raise ValueError("pair members must be distinct")
        return self

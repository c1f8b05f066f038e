"""
Unit tests for two-phase pairing.
"""

import random

import pytest

from src.arena import initial_states, phase1_priority, phase2_priority, select_next_pair
from src.arena.scheduler import JITTER, phase1_proposals
from src.models import EloState
from tests.helpers import match_record as played


def state(cid: str, rating: float = 1500.0, rd: float = 350.0, matches: int = 0) -> EloState:
    return EloState(id = cid, rating = rating, rd = rd, matches = matches)


class TestPriorities:
    """Tests for the priority formulas."""

    def test_jitter_cannot_flip_combined_count(self):
        assert phase1_priority(1, 1, JITTER - 1e-9) < phase1_priority(1, 0, 0.0)

    def test_phase2_formula(self, default_config):
        # proximity 1000 / 1, scarcity 10 * (6 - 0)
        assert phase2_priority(1500, 1500, 0, 0, default_config) == pytest.approx(1060.0)
        assert phase2_priority(1600, 1500, 6, 4, default_config) == pytest.approx(1000 / 101 + 10.0)

    def test_phase2_prefers_close_ratings(self, default_config):
        close = phase2_priority(1500, 1510, 3, 3, default_config)
        far = phase2_priority(1500, 1700, 3, 3, default_config)
        assert close > far


class TestPhase1:
    """Tests for phase-1 selection."""

    def test_first_pick(self, default_config):
        states = initial_states(["a", "b", "c"], default_config)

        proposal = select_next_pair(states, [], 1, default_config, random.Random(0))

        assert proposal.phase == 1
        assert proposal.pair[0] < proposal.pair[1]
        assert 0.0 <= proposal.epsilon < JITTER

    def test_fewest_matches_first(self, default_config):
        states = {
            "a": state("a", matches = 2),
            "b": state("b", matches = 2),
            "c": state("c", matches = 0),
            "d": state("d", matches = 1),
        }
        for seed in range(20):
            proposal = select_next_pair(states, [], 1, default_config, random.Random(seed))
            assert proposal.pair == ("c", "d")

    def test_unplayed_pairs_first(self, default_config):
        states = initial_states(["a", "b", "c"], default_config)
        proposals = phase1_proposals(states, [played("a", "b")], default_config, random.Random(0))
        assert {p.pair for p in proposals} == {("a", "c"), ("b", "c")}

    def test_repeat_when_every_pair_played(self, default_config):
        states = {"a": state("a", matches = 1), "b": state("b", matches = 1)}

        proposal = select_next_pair(states, [played("a", "b")], 1, default_config, random.Random(0))

        assert proposal.pair == ("a", "b")

    def test_done_when_everyone_reached_target(self, default_config):
        states = {cid: state(cid, matches = 3) for cid in "abc"}
        assert select_next_pair(states, [], 1, default_config, random.Random(0)) is None

    def test_pair_with_one_short_candidate_eligible(self, default_config):
        states = {"a": state("a", matches = 5), "b": state("b", matches = 2), "c": state("c", matches = 4)}
        proposal = select_next_pair(states, [], 1, default_config, random.Random(0))
        assert "b" in proposal.pair

    def test_deterministic_for_seed(self, default_config):
        states = initial_states([f"c{i}" for i in range(6)], default_config)
        picks = {
            select_next_pair(states, [], 1, default_config, random.Random(42)).pair
            for _ in range(5)
        }
        assert len(picks) == 1


class TestPhase2:
    """Tests for phase-2 selection."""

    def test_pruned_pair_skipped(self, default_config):
        states = {
            "a": state("a", 2000, 30, 3),
            "b": state("b", 1500, 30, 3),
            "c": state("c", 1510, 30, 3),
        }

        proposal = select_next_pair(states, [], 2, default_config, random.Random(0))

        assert proposal.pair == ("b", "c")
        assert not proposal.pruned

    def test_all_pruned_still_plays(self, default_config):
        states = {"a": state("a", 2000, 30, 3), "b": state("b", 1500, 30, 3)}

        proposal = select_next_pair(states, [], 2, default_config, random.Random(0))

        assert proposal.pair == ("a", "b")
        assert proposal.pruned

    def test_pairs_at_target_ineligible(self, default_config):
        states = {
            "a": state("a", matches = 6),
            "b": state("b", matches = 6),
            "c": state("c", 1800, matches = 5),
        }
        proposal = select_next_pair(states, [], 2, default_config, random.Random(0))
        assert "c" in proposal.pair

    def test_done(self, default_config):
        states = {cid: state(cid, matches = 6) for cid in "abc"}
        assert select_next_pair(states, [], 2, default_config, random.Random(0)) is None

    def test_scarcity_breaks_equal_proximity(self, default_config):
        states = {
            "a": state("a", matches = 5),
            "b": state("b", matches = 5),
            "c": state("c", matches = 3),
            "d": state("d", matches = 3),
        }
        proposal = select_next_pair(states, [], 2, default_config, random.Random(0))
        assert proposal.pair == ("c", "d")

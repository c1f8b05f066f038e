"""
Unit tests for data models.

Tests model creation, validation, and helper methods.
"""

import pytest
from pydantic import ValidationError

from src.errors import ManifestError, PrerequisiteError, QuerySetError, StructuralError, TaskError
from src.models import (
    ArtifactStage,
    CandidatePool,
    EloState,
    MatchRecord,
    PairingProposal,
    PaperRecord,
    PaperSource,
    QuerySet,
    RunState,
    SolverArtifact,
    Span,
    Stage,
    StageStatus,
    STAGE_ORDER,
    TaskPrompt,
    assemble_pool,
    parse_task,
)

SOLVER = """class Foo:
    def __init__(self, budget, dim):
        self.budget = budget

    def __call__(self, func):
        return func(0)
"""


def make_artifact(artifact_id: str, stage: ArtifactStage, **kwargs) -> SolverArtifact:
    provenance = kwargs.pop("provenance", (0, 1) if stage == ArtifactStage.INITIAL else (0,))
    return SolverArtifact(
        id = artifact_id, stage = stage, source_text = SOLVER, class_name = "Foo",
        provenance = provenance, **kwargs,
    )


class TestTaskPrompt:
    """Tests for TaskPrompt model."""

    def test_parse_bbob(self, fixtures_dir):
        task = parse_task(fixtures_dir / "tasks" / "bbob.yaml")

        assert task.dim == 20
        assert task.budget == 300
        assert task.dim_label == "20D"
        assert task.name == "BBOB"

    def test_budget_per_dimension(self, fixtures_dir):
        """'11d' resolves against the task's dimensionality."""
        task = parse_task(fixtures_dir / "tasks" / "cec2013.yaml")
        assert task.budget == 11000

    def test_missing_component(self, tmp_path):
        path = tmp_path / "task.yaml"
        path.write_text("desc: x\ndim: 2\nbudget: 10\n", encoding = "utf-8")

        with pytest.raises(TaskError, match = "search_space"):
            parse_task(path)

    def test_blank_description(self):
        with pytest.raises(ValidationError):
            TaskPrompt(desc = "   ", dim = 2, budget = 10, search_space = "[0, 1]")

    def test_non_positive_dimension(self, tmp_path):
        path = tmp_path / "task.yaml"
        path.write_text("desc: x\ndim: 0\nbudget: 10\nsearch_space: '[0, 1]'\n", encoding = "utf-8")

        with pytest.raises(TaskError, match = "dim"):
            parse_task(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(TaskError, match = "not found"):
            parse_task(tmp_path / "none.yaml")

    def test_slots(self, bbob_task):
        assert set(bbob_task.slots()) == {"desc", "dim", "budget", "search_space"}


class TestQuerySet:
    """Tests for QuerySet validation."""

    def test_build(self):
        qs = QuerySet.build([" TuRBO ", "trust region BO"], 2)
        assert qs.queries == ("TuRBO", "trust region BO")
        assert len(qs) == 2

    def test_wrong_arity(self):
        with pytest.raises(QuerySetError, match = "exactly 8"):
            QuerySet.build(["a"] * 3, 8)

    def test_empty_entry(self):
        with pytest.raises(QuerySetError, match = "empty"):
            QuerySet.build(["a", "  "], 2)

    def test_duplicates_ignore_case_and_spacing(self):
        with pytest.raises(QuerySetError, match = "Duplicate"):
            QuerySet.build(["Trust Region", "trust  region"], 2)


class TestPaperRecord:
    """Tests for PaperRecord normalization."""

    def test_doi_normalized(self):
        record = PaperRecord(
            source = PaperSource.OPENALEX, title = "A", year = 2020, rank = 1,
            doi = "https://doi.org/10.1109/TEVC.2021.0001",
        )
        assert record.doi == "10.1109/tevc.2021.0001"

    def test_title_whitespace_collapsed(self):
        record = PaperRecord(source = PaperSource.ARXIV, title = "  A \n  title ", year = 2020, rank = 1)
        assert record.title == "A title"

    def test_year_out_of_range(self):
        with pytest.raises(ValidationError):
            PaperRecord(source = PaperSource.ARXIV, title = "A", year = 1800, rank = 1)

    def test_rank_is_one_based(self):
        with pytest.raises(ValidationError):
            PaperRecord(source = PaperSource.ARXIV, title = "A", year = 2020, rank = 0)


class TestSolverArtifact:
    """Tests for SolverArtifact invariants."""

    def test_span_inside_source(self):
        artifact = make_artifact("x", ArtifactStage.PRELIMINARY, important_spans = (Span(start = 2, end = 3),))
        assert artifact.line_count == 6

    def test_span_beyond_source(self):
        with pytest.raises(ValidationError):
            make_artifact("x", ArtifactStage.PRELIMINARY, important_spans = (Span(start = 2, end = 40),))

    def test_reversed_span(self):
        with pytest.raises(ValidationError):
            Span(start = 4, end = 2)

    def test_initial_needs_two_transcripts(self):
        with pytest.raises(ValidationError, match = "both generation transcripts"):
            make_artifact("initial-00", ArtifactStage.INITIAL, provenance = (3,))

    def test_with_description(self):
        init = make_artifact("initial-00", ArtifactStage.INITIAL)
        described = init.with_description("It is a trust region method.")
        assert described.description.startswith("It is")
        assert init.description == ""


class TestCandidatePool:
    """Tests for pool assembly."""

    def test_assemble(self):
        init = make_artifact("initial-00", ArtifactStage.INITIAL)
        refined = [make_artifact(f"refined-{k:02d}", ArtifactStage.REFINED) for k in (1, 2)]

        pool = assemble_pool(init, refined, 2)

        assert isinstance(pool, CandidatePool)
        assert pool.ids == ["initial-00", "refined-01", "refined-02"]
        assert pool.get("refined-02").id == "refined-02"

    def test_wrong_cardinality(self):
        init = make_artifact("initial-00", ArtifactStage.INITIAL)
        with pytest.raises(StructuralError, match = "Expected 10"):
            assemble_pool(init, [make_artifact("refined-01", ArtifactStage.REFINED)], 10)

    def test_head_must_be_initial(self):
        pre = make_artifact("preliminary-00", ArtifactStage.PRELIMINARY)
        with pytest.raises(StructuralError):
            assemble_pool(pre, [], 0)

    def test_duplicate_ids(self):
        init = make_artifact("initial-00", ArtifactStage.INITIAL)
        refined = [make_artifact("refined-01", ArtifactStage.REFINED)] * 2
        with pytest.raises(StructuralError, match = "Duplicate"):
            assemble_pool(init, refined, 2)


class TestEloModels:
    """Tests for rating and match records."""

    def test_interval(self):
        state = EloState(id = "a", rating = 1500.0, rd = 100.0)
        low, high = state.interval
        assert low == pytest.approx(1304.0)
        assert high == pytest.approx(1696.0)

    def test_rd_floor(self):
        with pytest.raises(ValidationError):
            EloState(id = "a", rating = 1500.0, rd = 10.0)

    def test_match_contestants(self):
        with pytest.raises(ValidationError):
            MatchRecord(
                index = 0, phase = 1, first = "a", second = "b", winner = "a", loser = "c",
                winner_rating = 1500, loser_rating = 1500, winner_rd = 350, loser_rd = 350,
                winner_matches = 0, loser_matches = 0, expected_winner = 0.5,
                delta_winner = 16, delta_loser = -16,
            )

    def test_proposal_pair_distinct(self):
        with pytest.raises(ValidationError):
            PairingProposal(pair = ("a", "a"), priority = 1.0, phase = 2)


class TestRunState:
    """Tests for the checkpoint manifest model."""

    @pytest.fixture
    def state(self):
        return RunState(seed = 0, config_sha256 = "c", task_sha256 = "t")

    def test_all_pending(self, state):
        assert all(state.status(s) == StageStatus.PENDING for s in STAGE_ORDER)
        assert state.next_pending() == Stage.REWRITE
        assert not state.is_complete

    def test_order_enforced(self, state):
        with pytest.raises(PrerequisiteError, match = "rewrite"):
            state.mark_running(Stage.SEARCH, "t0")

    def test_complete_and_advance(self, state):
        state.mark_running(Stage.REWRITE, "t0")
        state.mark_complete(Stage.REWRITE, {"b": "2", "a": "1"}, "t1")

        assert state.is_satisfied(Stage.REWRITE)
        assert list(state.record(Stage.REWRITE).artifacts) == ["a", "b"]
        assert state.next_pending() == Stage.SEARCH

    def test_finished_stage_not_rerun(self, state):
        state.mark_running(Stage.REWRITE, "t0")
        state.mark_complete(Stage.REWRITE, {}, "t1")
        with pytest.raises(ManifestError):
            state.mark_running(Stage.REWRITE, "t2")

    def test_failed_stage_reported(self, state):
        state.mark_running(Stage.REWRITE, "t0")
        state.mark_failed(Stage.REWRITE, "boom", "t1")
        assert state.failed_stage() == Stage.REWRITE

    def test_check_order_rejects_gap(self, state):
        state.stages[Stage.SEARCH].status = StageStatus.COMPLETE
        with pytest.raises(ManifestError, match = "earlier stage"):
            state.check_order()

    def test_json_roundtrip(self, state):
        state.mark_skipped(Stage.REWRITE, "t0")
        loaded = RunState.model_validate_json(state.model_dump_json())
        assert loaded.status(Stage.REWRITE) == StageStatus.SKIPPED

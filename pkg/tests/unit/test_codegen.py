"""
Unit tests for solver code checks and document truncation.
"""

import re

import pytest

from src.codegen import (
    FINDING_INIT,
    MARKER,
    TRUNCATION_NOTE,
    check_structure,
    class_name,
    extract_spans,
    marked_lines,
    marker_retention,
    is_dense,
    truncate_document,
)
from src.errors import StructuralError
from src.llm import extract_code_block

SOLVER = f"""class TrustRegionBO:
    def __init__(self, budget, dim):
        self.length = 0.8  {MARKER}

    def _update(self, improved):  {MARKER}
        if improved:
            self.length *= 2
        else:
            self.length /= 2

    def __call__(self, func):
        return func(0)
"""


class TestStructure:
    """Tests for the entry-point and class checks."""

    def test_code_template_skeleton_conforms(self, prompts):
        skeleton = extract_code_block(prompts.bind("code_template"))
        assert check_structure(skeleton) == []

    def test_conforming_solver(self):
        assert check_structure(SOLVER) == []
        assert class_name(SOLVER) == "TrustRegionBO"

    def test_annotated_signatures(self):
        code = "class A:\n    def __init__(self, budget: int, dim: int):\n        pass\n    def __call__(self, func: Callable):\n        pass\n"
        assert check_structure(code) == []

    @pytest.mark.parametrize("signature", [
        "def __init__(self, budget=100, dim=2)",
        "def __init__(self, budget: int = 10000, dim: int = 10)",
        "def __init__(self, budget = 11 * 20, dim: int = 20, seed=None)",
        "def __init__(\n        self,\n        budget: int = 300,\n        dim: int = 20,\n    )",
    ])
    def test_defaults_accepted(self, signature):
        code = SOLVER.replace("def __init__(self, budget, dim)", signature)
        assert check_structure(code) == []

    def test_similar_parameter_name_rejected(self):
        code = SOLVER.replace("def __init__(self, budget, dim)", "def __init__(self, budget_scale=1, dim=2)")
        assert check_structure(code) == [FINDING_INIT]

    @pytest.mark.parametrize("old, new, finding", [
        ("def __init__(self, budget, dim)", "def __init__(self, dim)", "__init__"),
        ("def __init__(self, budget, dim)", "def setup(self, budget, dim)", "__init__"),
        ("def __call__(self, func)", "def run(self, func)", "__call__"),
        ("def __call__(self, func)", "def __call__(self)", "__call__"),
    ])
    def test_single_omission_fails(self, old, new, finding):
        findings = check_structure(SOLVER.replace(old, new))
        assert len(findings) == 1
        assert finding in findings[0]

    def test_second_class_fails(self):
        findings = check_structure(SOLVER + "\nclass Helper:\n    pass\n")
        assert any("exactly one" in f for f in findings)

    def test_nested_class_allowed(self):
        code = SOLVER.replace("    def _update", "    class _State:\n        pass\n\n    def _update")
        assert check_structure(code) == []

    def test_no_class(self):
        with pytest.raises(StructuralError) as excinfo:
            class_name("def __init__(self, budget, dim): pass")
        assert excinfo.value.findings


class TestMarkers:
    """Tests for important-component spans and retention."""

    def test_spans(self):
        spans = extract_spans(SOLVER)
        assert [(s.start, s.end) for s in spans] == [(3, 3), (5, 9)]

    def test_block_marker_at_end_of_file(self):
        code = f"class A:\n    def f(self):  {MARKER}\n        return 1\n"
        assert [(s.start, s.end) for s in extract_spans(code)] == [(2, 3)]

    def test_no_markers(self):
        assert extract_spans("class A:\n    pass\n") == []

    def test_marked_lines_normalized(self):
        lines = marked_lines(SOLVER.replace("self.length = 0.8", "self.length   =   0.8"))
        assert lines[0] == f"self.length = 0.8 {MARKER}"

    def test_full_retention(self):
        refined = SOLVER.replace("return func(0)", "return func(1)")
        assert marker_retention(SOLVER, refined) == 1.0

    def test_partial_retention(self):
        refined = SOLVER.replace(f"0.8  {MARKER}", "0.5")
        assert marker_retention(SOLVER, refined) == 0.5

    def test_parent_without_markers(self):
        assert marker_retention(SOLVER.replace(MARKER, ""), SOLVER) is None


class TestTruncation:
    """Tests for fitting a document into the prompt budget."""

    @pytest.mark.parametrize("line", [
        "x_{t+1} = x_t - eta * grad f(x_t)    (3)",
        "Algorithm 1: Trust region update",
        "4: for each restart do",
        "Input: budget N, dimension d",
        "L <- min(2L, L_max) if s_c >= tau_s",
    ])
    def test_dense_lines(self, line):
        assert is_dense(line)

    @pytest.mark.parametrize("line", [
        "We evaluate the method on twenty benchmark functions.",
        "",
        "Related work is discussed next (see Section 2).",
    ])
    def test_prose_lines(self, line):
        assert not is_dense(line)

    def test_fits_unchanged(self, document_text):
        assert truncate_document(document_text, len(document_text)) == document_text

    def test_dense_kept_tail_dropped(self):
        prose = [f"Paragraph {i}: " + "lorem ipsum " * 7 for i in range(30)]
        equation = "x_{t+1} = x_t - eta * grad f(x_t)    (3)"
        lines = prose[:25] + [equation] + prose[25:]

        result = truncate_document("\n".join(lines), 500)

        assert len(result) <= 500
        assert result.endswith(TRUNCATION_NOTE)
        assert equation in result
        assert "Paragraph 0:" in result
        assert "Paragraph 29:" not in result

    def test_fixture_document(self, document_text):
        result = truncate_document(document_text, 1500)

        assert len(result) <= 1500
        kept = result.splitlines()[:-1]
        # kept lines are a subsequence of the original
        original = iter(document_text.splitlines())
        assert all(line in original for line in kept)
        assert any(re.match(r"\s*Algorithm 1:", line) for line in kept)

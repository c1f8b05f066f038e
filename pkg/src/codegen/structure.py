"""
Lexical checks on generated solver code.

Nothing here parses or executes the payload: conformance is a scan for the
entry-point signatures and the number of top-level classes.
"""

import logging
import re
from typing import List, Optional

from src.errors import StructuralError
from src.models import Span

logger = logging.getLogger(__name__)

MARKER = "# **IMPORTANT COMPONENT**"

_CLASS = re.compile(r"^class\s+([A-Za-z_<][\w<>]*)", re.MULTILINE)
_PARAM_TAIL = r"\s*(?::[^,=]+?)?\s*(?:=[^,]+?)?\s*"
_INIT = re.compile(r"def\s+__init__\s*\(\s*self\s*,\s*budget" + _PARAM_TAIL + r",\s*dim\b")
_CALL = re.compile(r"def\s+__call__\s*\(\s*self\s*,\s*func\b")

FINDING_INIT = "missing entry point `__init__(self, budget, dim)`"
FINDING_CALL = "missing entry point `__call__(self, func)`"


def top_level_classes(code: str) -> List[str]:
    return _CLASS.findall(code)


def check_structure(code: str) -> List[str]:
    """Findings; empty iff both entry points exist and exactly one top-level class is defined."""
    findings: List[str] = []
    if not _INIT.search(code):
        findings.append(FINDING_INIT)
    if not _CALL.search(code):
        findings.append(FINDING_CALL)

    classes = top_level_classes(code)
    if not classes:
        findings.append("no top-level class defined")
    elif len(classes) > 1:
        findings.append(f"expected exactly one top-level class, found {len(classes)}: {', '.join(classes)}")
    return findings


def class_name(code: str) -> str:
    """
    Name of the single top-level class.

    Raises:
        StructuralError: zero or several top-level classes
    """
    classes = top_level_classes(code)
    if len(classes) != 1:
        raise StructuralError(
            f"expected exactly one top-level class, found {len(classes)}",
            findings = check_structure(code),
        )
    return classes[0]


def _indent(line: str) -> int:
    return len(line) - len(line.lstrip(" \t"))


def _opens_block(line: str) -> bool:
    head = line.split(MARKER, 1)[0].split("#", 1)[0].rstrip()
    return head.endswith(":") and bool(head.strip())


def _block_end(lines: List[str], opener: int) -> int:
    """Index of the last line of the block opened at `opener` (0-based)."""
    base = _indent(lines[opener])
    last = opener
    for i in range(opener + 1, len(lines)):
        line = lines[i]
        if not line.strip():
            continue
        if _indent(line) <= base:
            break
        last = i
    return last


def extract_spans(code: str) -> List[Span]:
    """
    One span per marked line, 1-based inclusive.

    A marker trailing a block opener (`def ...:`, `for ...:`) covers the whole
    indented block; anywhere else it covers its own line.
    """
    lines = code.splitlines()
    spans: List[Span] = []
    for i, line in enumerate(lines):
        if MARKER not in line:
            continue
        end = _block_end(lines, i) if _opens_block(line) else i
        spans.append(Span(start = i + 1, end = end + 1))
    return spans


def marked_lines(code: str) -> List[str]:
    """Marked lines, whitespace-normalized, in order."""
    return [" ".join(line.split()) for line in code.splitlines() if MARKER in line]


def marker_retention(parent: str, child: str) -> Optional[float]:
    """Fraction of the parent's marked lines found marked in the child; None when the parent has none."""
    expected = marked_lines(parent)
    if not expected:
        return None
    present = set(marked_lines(child))
    kept = sum(1 for line in expected if line in present)
    return kept / len(expected)

"""
Fit a paper's text into a prompt budget.

Lines are dropped from the tail first, but lines that look like equations or
pseudo-code are kept wherever they occur.
"""

import logging
import re

logger = logging.getLogger(__name__)

TRUNCATION_NOTE = "[... text truncated to fit the prompt budget ...]"

_MATH_CHARS = set("=+-*/^_\\{}()[]<>|∑∏∫√∈∀∃≤≥≈←→∇∂λμσαβγδεθπρτφψω")
_PSEUDO = re.compile(
    r"^\s*(algorithm\s+\d+|input\s*:|output\s*:|require\s*:|ensure\s*:|"
    r"\d+\s*:\s*(for|while|if|end|return|repeat|until|set|update|compute)\b|"
    r"(for|while)\b.*\b(do)\s*$|end\s+(for|while|if)\b|return\b)",
    re.IGNORECASE,
)
_EQUATION_TAG = re.compile(r"\(\s*\d{1,3}\s*\)\s*$")


def is_dense(line: str) -> bool:
    """True for lines that read like an equation or an algorithm step."""
    stripped = line.strip()
    if not stripped:
        return False
    if _PSEUDO.match(stripped) or _EQUATION_TAG.search(stripped):
        return True
    symbols = sum(1 for ch in stripped if ch in _MATH_CHARS)
    return symbols >= 4 and symbols / len(stripped) >= 0.12


def truncate_document(text: str, budget: int) -> str:
    """Return `text` unchanged when it fits, otherwise a subset of its lines within `budget` characters."""
    if len(text) <= budget:
        return text

    lines = text.splitlines()
    room = budget - len(TRUNCATION_NOTE) - 1
    keep = [False] * len(lines)

    # Dense lines first, in document order, then fill from the head.
    for pass_dense in (True, False):
        for i, line in enumerate(lines):
            if keep[i] or is_dense(line) != pass_dense:
                continue
            cost = len(line) + 1
            if cost > room:
                if pass_dense:
                    continue
                break
            keep[i] = True
            room -= cost

    kept = [line for line, k in zip(lines, keep) if k]
    result = "\n".join(kept + [TRUNCATION_NOTE])
    logger.info(
        f"Document truncated from {len(text)} to {len(result)} characters "
        f"({sum(keep)} of {len(lines)} lines kept)"
    )
    return result

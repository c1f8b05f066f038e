"""
Response parsing: JSON objects and fenced code blocks embedded in model output.
"""

import json
import re
from typing import Any, Iterable, Optional

from src.errors import ResponseParseError

_FENCE = re.compile(r"^[ \t]*```[^\n`]*\n(.*?)^[ \t]*```[ \t]*$", re.MULTILINE | re.DOTALL)


def _iter_objects(text: str):
    decoder = json.JSONDecoder()
    pos = text.find("{")
    while pos != -1:
        try:
            value, _ = decoder.raw_decode(text, pos)
        except json.JSONDecodeError:
            value = None
        if isinstance(value, dict):
            yield value
        pos = text.find("{", pos + 1)


def extract_json_block(response: str, require: Optional[Iterable[str]] = None) -> dict[str, Any]:
    """
    Return the first well-formed JSON object in a response.

    Surrounding prose and code fences are tolerated. With `require`, objects
    lacking any of the named keys are skipped.

    Raises:
        ResponseParseError: no (matching) object found
    """
    keys = tuple(require or ())
    for value in _iter_objects(response or ""):
        if all(k in value for k in keys):
            return value

    if keys:
        raise ResponseParseError(f"No JSON object with keys {list(keys)} found in response")
    raise ResponseParseError("No JSON object found in response")


def extract_code_block(response: str) -> str:
    """
    Return the content of the longest fenced code block.

    Content is returned byte-exact apart from the newline before the closing
    fence. Ties go to the earliest block.

    Raises:
        ResponseParseError: no fenced block found
    """
    blocks = [m.group(1) for m in _FENCE.finditer(response or "")]
    blocks = [b[:-1] if b.endswith("\n") else b for b in blocks]
    blocks = [b for b in blocks if b.strip()]
    if not blocks:
        raise ResponseParseError("No fenced code block found in response")

    best = blocks[0]
    for block in blocks[1:]:
        if len(block.splitlines()) > len(best.splitlines()):
            best = block
    return best


def has_code_fence(text: str) -> bool:
    """True when the text carries a fenced block or a quoted python block."""
    return "```" in text or '"""python' in text

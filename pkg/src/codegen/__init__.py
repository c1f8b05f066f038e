"""
Lexical helpers for generated solvers: structure check, marker spans, document truncation.
"""

from .structure import (
    FINDING_INIT,
    MARKER,
    check_structure,
    class_name,
    extract_spans,
    marked_lines,
    marker_retention,
    top_level_classes,
)
from .truncation import TRUNCATION_NOTE, is_dense, truncate_document

__all__ = [
    "FINDING_INIT",
    "MARKER",
    "check_structure",
    "class_name",
    "extract_spans",
    "marked_lines",
    "marker_retention",
    "top_level_classes",
    "TRUNCATION_NOTE",
    "is_dense",
    "truncate_document",
]

"""
Prompt library loading and template binding.

Handles loading prompts from YAML, slot validation at load time, and binding.
"""

import string
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from src.errors import TemplateError

TEMPLATE_NAMES = (
    "task",
    "meta_query",
    "rewrite",
    "rerank",
    "gen_stage1",
    "code_template",
    "gen_stage2",
    "reverse",
    "refine",
    "judge",
)


@dataclass(frozen=True)
class PromptTemplate:
    """A named template and the slots it declares."""

    name: str
    text: str
    slots: frozenset[str]


def parse_slots(name: str, text: str) -> frozenset[str]:
    """Collect the named placeholders of a template, rejecting anything but plain names."""
    found = set()
    try:
        parsed = list(string.Formatter().parse(text))
    except ValueError as e:
        raise TemplateError(f"Template '{name}' is malformed: {e}") from e

    for _, field, spec, conversion in parsed:
        if field is None:
            continue
        if not field.isidentifier():
            raise TemplateError(
                f"Template '{name}' uses unsupported placeholder '{{{field}}}'; "
                "use named slots and double literal braces"
            )
        if spec or conversion:
            raise TemplateError(f"Template '{name}' slot '{field}' carries a format spec")
        found.add(field)
    return frozenset(found)


def bind_template(template: PromptTemplate, bindings: Mapping[str, Any]) -> str:
    """
    Render a template with exactly its declared slots.

    Raises:
        TemplateError: a declared slot is missing or empty, or an unknown slot is supplied
    """
    supplied = set(bindings)
    missing = template.slots - supplied
    if missing:
        raise TemplateError(
            f"Missing slots for '{template.name}': {sorted(missing)}. "
            f"Template requires: {sorted(template.slots)}"
        )
    unknown = supplied - template.slots
    if unknown:
        raise TemplateError(f"Unknown slots for '{template.name}': {sorted(unknown)}")

    values = {}
    for key, value in bindings.items():
        text = str(value)
        if not text.strip():
            raise TemplateError(f"Slot '{key}' of '{template.name}' is empty")
        values[key] = text

    return template.text.format(**values)


class PromptLibrary:
    """
    Loads system prompts and user templates from a YAML file.

    Every template declares its `slots:`; the declared set must equal the set of
    placeholders found in the text, otherwise loading fails.

    Example:
        library = PromptLibrary()
        text = library.bind("task", desc="...", dim=20, budget=300, search_space="...")
    """

    def __init__(self, prompts_path: Optional[Path] = None):
        if prompts_path is None:
            prompts_path = Path(__file__).parent / "prompts.yaml"

        self.prompts_path = Path(prompts_path)
        self._templates: Optional[Dict[str, PromptTemplate]] = None
        self._system: Optional[Dict[str, str]] = None

    def _load(self) -> None:
        if not self.prompts_path.exists():
            raise TemplateError(f"Prompts file not found: {self.prompts_path}")

        try:
            with open(self.prompts_path, 'r', encoding='utf-8') as f:
                raw = yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise TemplateError(f"Prompts file is not valid YAML: {e}") from e

        entries = raw.get("templates") or {}
        templates: Dict[str, PromptTemplate] = {}
        for name in TEMPLATE_NAMES:
            entry = entries.get(name)
            if not isinstance(entry, dict) or not isinstance(entry.get("text"), str):
                raise TemplateError(f"Template '{name}' is missing from {self.prompts_path}")

            # Block scalars end with a newline; drop it so concatenation stays exact.
            text = entry["text"].rstrip("\n")
            declared = frozenset(entry.get("slots") or [])
            found = parse_slots(name, text)
            if declared != found:
                raise TemplateError(
                    f"Template '{name}' declares {sorted(declared)} "
                    f"but references {sorted(found)}"
                )
            templates[name] = PromptTemplate(name=name, text=text, slots=declared)

        system = {k: v.strip() for k, v in (raw.get("system_prompts") or {}).items()}
        self._templates = templates
        self._system = system

    @property
    def templates(self) -> Dict[str, PromptTemplate]:
        """Lazy-load and cache templates."""
        if self._templates is None:
            self._load()
        return self._templates

    def reload(self) -> None:
        """Reload prompts from file."""
        self._templates = None
        self._system = None

    def get(self, name: str) -> PromptTemplate:
        if name not in self.templates:
            raise TemplateError(f"Template not found: {name}")
        return self.templates[name]

    def bind(self, name: str, **bindings: Any) -> str:
        """Bind a named template; see bind_template."""
        return bind_template(self.get(name), bindings)

    def system_prompt(self, name: str) -> str:
        """System prompt paired with a template, empty when none is defined."""
        if self._system is None:
            self._load()
        return self._system.get(name, "")

    def validate(self) -> Dict[str, list[str]]:
        """
        Report load problems without raising.

        Returns:
            Dictionary of issues found (empty if all valid)
        """
        issues: Dict[str, list[str]] = {}
        try:
            self.reload()
            templates = self.templates
        except TemplateError as e:
            issues.setdefault("load_errors", []).append(str(e))
            return issues

        for name in TEMPLATE_NAMES:
            # task and code_template are embedded in other prompts, never sent alone
            if name not in ("task", "code_template") and not self.system_prompt(name):
                issues.setdefault("missing_system_prompt", []).append(name)
            if not templates[name].text.strip():
                issues.setdefault("empty_templates", []).append(name)
        return issues


# ============================================================================
# GLOBAL INSTANCE
# ============================================================================

_library: Optional[PromptLibrary] = None


def get_prompt_library(prompts_path: Optional[Path] = None) -> PromptLibrary:
    """
    Get the prompt library.

    A custom path returns a fresh library; the default one is shared.
    """
    global _library
    if prompts_path is not None:
        return PromptLibrary(prompts_path)
    if _library is None:
        _library = PromptLibrary()
    return _library


def reload_prompts() -> None:
    """Reload the shared library from file."""
    get_prompt_library().reload()

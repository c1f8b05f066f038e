"""
Scripted provider: replays canned responses from a YAML fixture.

Fixture layout:

    stages:
      <prompt name or stage tag>:
        fingerprints:          # optional, sha256 prefix of (system, user)
          3fa9c1: "response"
        sequence:              # consumed in order
          - "first response"
          - "second response"
        fallback: "used once the sequence is exhausted"

A request is looked up under its prompt name first, then its stage tag.
"""

import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from src.errors import FixtureExhaustedError, GatewayError
from ..base import BaseProvider, ChatRequest, LLMResponse

logger = logging.getLogger(__name__)


class ScriptedProvider(BaseProvider):
    """Deterministic backend for offline runs and tests."""

    def __init__(self, fixture: Union[str, Path, Dict[str, Any]], **kwargs):
        if isinstance(fixture, dict):
            data = fixture
            source = "<inline>"
        else:
            path = Path(fixture)
            if not path.is_file():
                raise GatewayError(f"Scripted fixture not found: {path}")
            try:
                data = yaml.safe_load(path.read_text(encoding = "utf-8")) or {}
            except yaml.YAMLError as e:
                raise GatewayError(f"Scripted fixture is not valid YAML: {e}") from e
            source = str(path)

        super().__init__(None, "scripted", source = source, **kwargs)
        self.entries: Dict[str, Dict[str, Any]] = data.get("stages") or {}
        self._cursor: Dict[str, int] = {}

    @property
    def provider_name(self) -> str:
        return "scripted"

    def _entry_for(self, request: ChatRequest) -> tuple[str, Dict[str, Any]]:
        for key in (request.prompt, request.stage.value):
            if key in self.entries:
                return key, self.entries[key] or {}
        raise FixtureExhaustedError(
            f"Fixture has no entry for prompt '{request.prompt}' or stage '{request.stage.value}'"
        )

    def lookup(self, request: ChatRequest) -> str:
        key, entry = self._entry_for(request)

        fingerprint = request.fingerprint()
        for prefix, text in (entry.get("fingerprints") or {}).items():
            if fingerprint.startswith(str(prefix)):
                return str(text)

        sequence = entry.get("sequence") or []
        position = self._cursor.get(key, 0)
        if position < len(sequence):
            self._cursor[key] = position + 1
            return str(sequence[position])

        fallback: Optional[str] = entry.get("fallback")
        if fallback is not None:
            return str(fallback)

        raise FixtureExhaustedError(
            f"Fixture entry '{key}' exhausted after {len(sequence)} response(s)"
        )

    async def generate(self, request: ChatRequest) -> LLMResponse:
        content = self.lookup(request)
        logger.debug(f"Scripted response for {request.prompt} ({len(content)} chars)")
        return LLMResponse(
            content = content,
            model = self.model,
            provider = self.provider_name,
            finish_reason = "scripted",
        )

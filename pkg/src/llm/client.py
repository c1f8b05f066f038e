"""
LLM gateway.

This is the single entry point for every LLM call in the workflow: it retries
transient failures, stamps timestamps from an injectable clock, and persists a
transcript before the response is handed back.
"""

import asyncio
import logging
import time
from typing import Any, Dict, Optional, Protocol

from tenacity import (
    AsyncRetrying,
    RetryCallState,
    retry_if_exception_type,
    stop_after_attempt,
    wait_exponential_jitter,
)

from config import LLMProvider, Settings, get_settings
from src.errors import CredentialError, GatewayError, TransientLLMError
from src.utils.clock import Clock, LogicalClock, SystemClock, isoformat
from .base import BaseProvider, ChatRequest, LLMResponse, Transcript
from .providers.claude import ClaudeProvider
from .providers.openai import OpenAIProvider
from .providers.scripted import ScriptedProvider

logger = logging.getLogger(__name__)


class TranscriptSink(Protocol):
    """Stores transcripts and assigns their indices."""

    async def persist(self, transcript: Transcript) -> Transcript: ...


class MemoryTranscriptSink:
    """Keeps transcripts in memory; used when no run directory is attached."""

    def __init__(self) -> None:
        self.transcripts: list[Transcript] = []
        self._lock = asyncio.Lock()

    async def persist(self, transcript: Transcript) -> Transcript:
        async with self._lock:
            stored = transcript.model_copy(update = {"index": len(self.transcripts)})
            self.transcripts.append(stored)
            return stored


def create_provider(cfg: Optional[Settings] = None, model: Optional[str] = None) -> BaseProvider:
    """
    Create the configured provider.

    Raises:
        CredentialError: the selected live provider has no API key
    """
    cfg = cfg or get_settings()
    llm = cfg.llm

    if llm.provider == LLMProvider.CLAUDE:
        if llm.claude.api_key is None:
            raise CredentialError("LLM__CLAUDE__API_KEY is not set")
        return ClaudeProvider(
            api_key = llm.claude.api_key.get_secret_value(),
            model = model or llm.claude.model,
            timeout = llm.claude.timeout,
        )

    if llm.provider == LLMProvider.OPENAI:
        if llm.openai.api_key is None:
            raise CredentialError("LLM__OPENAI__API_KEY is not set")
        return OpenAIProvider(
            api_key = llm.openai.api_key.get_secret_value(),
            model = model or llm.openai.model,
            base_url = llm.openai.base_url,
            timeout = llm.openai.timeout,
        )

    if llm.provider == LLMProvider.SCRIPTED:
        if llm.scripted.fixture_path is None:
            raise GatewayError("LLM__SCRIPTED__FIXTURE_PATH is not set")
        return ScriptedProvider(llm.scripted.fixture_path)

    raise GatewayError(f"Unknown provider: {llm.provider}")


class LLMGateway:
    """
    Uniform chat interface with retry, transcripts and usage tracking.

    The provider is created on the first call, so a missing credential
    surfaces as a CredentialError from the first stage that talks to the LLM.

    Example:
        >>> gateway = LLMGateway(provider = ScriptedProvider("fixture.yaml"))
        >>> transcript = await gateway.chat(request)
        >>> print(transcript.response)
    """

    def __init__(
        self,
        provider: Optional[BaseProvider] = None,
        sink: Optional[TranscriptSink] = None,
        clock: Optional[Clock] = None,
        settings: Optional[Settings] = None,
        model: Optional[str] = None,
    ):
        self.settings = settings or get_settings()
        self._provider = provider
        self._model_override = model
        self.sink: TranscriptSink = sink or MemoryTranscriptSink()

        if clock is None:
            scripted = isinstance(provider, ScriptedProvider) or (
                provider is None and self.settings.llm.provider == LLMProvider.SCRIPTED
            )
            clock = LogicalClock() if scripted else SystemClock()
        self.clock = clock

        # Tracking
        self.total_calls = 0
        self.total_tokens = 0
        self.total_latency = 0.0
        self.retry_count = 0
        self.calls_by_stage: Dict[str, int] = {}

    @property
    def provider(self) -> BaseProvider:
        if self._provider is None:
            self._provider = create_provider(self.settings, self._model_override)
            logger.info(
                f"LLM gateway initialized: provider={self._provider.provider_name}, "
                f"model={self._provider.model}"
            )
        return self._provider

    def _log_retry(self, request: ChatRequest):
        def before_sleep(state: RetryCallState) -> None:
            self.retry_count += 1
            error = state.outcome.exception() if state.outcome else None
            logger.warning(
                f"Retrying {request.prompt} after attempt {state.attempt_number}: {error}",
                extra = {"stage": request.stage.value, "prompt": request.prompt},
            )
        return before_sleep

    async def _generate(self, request: ChatRequest) -> tuple[LLMResponse, int]:
        llm = self.settings.llm
        attempts = 0
        try:
            async for attempt in AsyncRetrying(
                stop = stop_after_attempt(llm.max_retries),
                wait = wait_exponential_jitter(initial = llm.retry_delay, max = llm.retry_max_delay),
                retry = retry_if_exception_type(TransientLLMError),
                before_sleep = self._log_retry(request),
                reraise = True,
            ):
                with attempt:
                    attempts = attempt.retry_state.attempt_number
                    response = await self.provider.generate(request)
        except TransientLLMError as e:
            raise TransientLLMError(
                f"{request.prompt}: backend still failing after {attempts} attempt(s): {e}"
            ) from e
        return response, attempts

    async def chat(self, request: ChatRequest) -> Transcript:
        """
        Send one request and persist its transcript.

        Returns:
            The stored transcript, index assigned

        Raises:
            CredentialError: missing or rejected credential
            TransientLLMError: retries exhausted
            FixtureExhaustedError: scripted backend has no response left
        """
        started = self.clock.now()
        t0 = time.perf_counter()

        response, attempts = await self._generate(request)

        latency = time.perf_counter() - t0
        finished = self.clock.now()

        transcript = Transcript(
            backend = self.provider.provider_name,
            model = response.model,
            stage = request.stage,
            prompt = request.prompt,
            system = request.system,
            user = request.user,
            temperature = request.temperature,
            max_tokens = request.max_tokens,
            response = response.content,
            attempts = attempts,
            started_at = isoformat(started),
            finished_at = isoformat(finished),
            prompt_tokens = response.prompt_tokens,
            completion_tokens = response.completion_tokens,
            finish_reason = response.finish_reason,
        )
        stored = await self.sink.persist(transcript)

        self._record(stored, response, latency)
        return stored

    def _record(self, transcript: Transcript, response: LLMResponse, latency: float) -> None:
        self.total_calls += 1
        self.total_tokens += response.total_tokens
        self.total_latency += latency
        stage = transcript.stage.value
        self.calls_by_stage[stage] = self.calls_by_stage.get(stage, 0) + 1

        if self.settings.logging.log_llm_calls:
            logger.info(
                f"LLM call: provider={transcript.backend}, prompt={transcript.prompt}, "
                f"attempts={transcript.attempts}, chars={len(transcript.response)}",
                extra = {
                    "stage": stage,
                    "transcript": transcript.index,
                    "duration": round(latency, 3),
                },
            )

    def get_stats(self) -> Dict[str, Any]:
        """
        Get usage statistics.

        Returns:
            Dictionary with usage stats
        """
        return {
            "total_calls": self.total_calls,
            "total_tokens": self.total_tokens,
            "total_latency": round(self.total_latency, 3),
            "retries": self.retry_count,
            "calls_by_stage": dict(sorted(self.calls_by_stage.items())),
        }

    def __repr__(self) -> str:
        name = self._provider.provider_name if self._provider else self.settings.llm.provider.value
        return f"LLMGateway(provider={name}, calls={self.total_calls})"

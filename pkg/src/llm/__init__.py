"""
LLM gateway module.

Provides one chat interface over Claude, OpenAI-compatible endpoints and a
scripted fixture backend, with retry, transcripts and response parsing.

Usage:
    from src.llm import LLMGateway, ChatRequest

    gateway = LLMGateway()
    transcript = await gateway.chat(request)
"""

from .base import BaseProvider, ChatRequest, LLMMessage, LLMResponse, Transcript
from .client import LLMGateway, MemoryTranscriptSink, TranscriptSink, create_provider
from .parsing import extract_code_block, extract_json_block, has_code_fence
from .providers import ClaudeProvider, OpenAIProvider, ScriptedProvider

__all__ = [
    "BaseProvider",
    "ChatRequest",
    "LLMMessage",
    "LLMResponse",
    "Transcript",
    "LLMGateway",
    "MemoryTranscriptSink",
    "TranscriptSink",
    "create_provider",
    "extract_code_block",
    "extract_json_block",
    "has_code_fence",
    "ClaudeProvider",
    "OpenAIProvider",
    "ScriptedProvider",
]

"""
LLM provider implementations.

Available providers:
- Claude (Anthropic)
- OpenAI (or any chat-completions compatible endpoint)
- Scripted (YAML fixture replay)
"""

from ..base import BaseProvider, LLMResponse, LLMMessage
from .claude import ClaudeProvider
from .openai import OpenAIProvider
from .scripted import ScriptedProvider

__all__ = [
    "BaseProvider",
    "LLMResponse",
    "LLMMessage",
    "ClaudeProvider",
    "OpenAIProvider",
    "ScriptedProvider",
]

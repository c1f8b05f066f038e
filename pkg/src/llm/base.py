"""
Base LLM provider interface and the request/transcript types.

All LLM providers must implement this interface.
"""

import hashlib
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.models import Stage


@dataclass(frozen = True)
class ChatRequest:
    """
    One chat-completion request.

    Attributes:
        stage: pipeline stage that issued the request
        prompt: template name the user text was rendered from
    """
    system: str
    user: str
    stage: Stage
    prompt: str
    temperature: float = 0.0
    max_tokens: int = 4096

    def __post_init__(self) -> None:
        if not self.system.strip() or not self.user.strip():
            raise ValueError("system and user texts must be non-empty")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")
        if self.max_tokens < 1:
            raise ValueError("max_tokens must be positive")
        if not isinstance(self.stage, Stage):
            raise ValueError(f"unknown stage tag: {self.stage!r}")

    def fingerprint(self) -> str:
        """sha256 of system and user text; keys scripted responses."""
        payload = f"{self.system}\x00{self.user}".encode("utf-8")
        return hashlib.sha256(payload).hexdigest()


@dataclass
class LLMResponse:
    """
    Standardized LLM response format.

    All providers return this format for consistency.
    """
    content: str
    model: str
    provider: str
    prompt_tokens: int = 0
    completion_tokens: int = 0
    total_tokens: int = 0
    finish_reason: str = ""
    metadata: Dict[str, Any] = field(default_factory = dict)


@dataclass
class LLMMessage:
    """
    Message format for LLM conversations.

    Attributes:
        role: Message role (user, assistant, system)
        content: Message content
    """
    role: str
    content: str


class Transcript(BaseModel):
    """
    Persisted record of one exchange.

    `index` is assigned by the sink that stores it; it is what artifacts cite
    as provenance.
    """

    model_config = ConfigDict(frozen = True)

    index: Optional[int] = None
    backend: str
    model: str
    stage: Stage
    prompt: str
    system: str
    user: str
    temperature: float
    max_tokens: int
    response: str
    attempts: int = Field(..., ge = 1)
    started_at: str
    finished_at: str
    prompt_tokens: int = 0
    completion_tokens: int = 0
    finish_reason: str = ""


class BaseProvider(ABC):
    """
    Abstract base class for LLM providers.

    All provider implementations (Claude, OpenAI, scripted) inherit from this.
    """
    def __init__(self, api_key: Optional[str], model: str, **kwargs):
        """
        Initialize provider.

        Args:
            api_key: Provider API Key (None for the scripted backend)
            model: Model identifier
            **kwargs: Provider specific settings
        """
        self.api_key = api_key
        self.model = model
        self.settings = kwargs

    @property
    @abstractmethod
    def provider_name(self) -> str:
        """ Return provider name (e.g. 'claude', 'openai', 'scripted'). """

    @abstractmethod
    async def generate(self, request: ChatRequest) -> LLMResponse:
        """
        Generate a completion for one request.

        Raises:
            CredentialError: credential missing or rejected (not retried)
            TransientLLMError: retryable failure
            GatewayError: any other backend failure
        """

    @staticmethod
    def to_messages(request: ChatRequest) -> List[LLMMessage]:
        return [
            LLMMessage(role = "system", content = request.system),
            LLMMessage(role = "user", content = request.user),
        ]

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(model = {self.model})"

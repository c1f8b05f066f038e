"""
OpenAI provider implementation.

Also serves any chat-completions compatible endpoint through `base_url`.
"""

from typing import Optional

import openai

from src.errors import CredentialError, GatewayError, TransientLLMError
from ..base import BaseProvider, ChatRequest, LLMResponse


class OpenAIProvider(BaseProvider):
    """
    OpenAI LLM provider.

    Implements the BaseProvider interface for chat-completions models.
    """

    def __init__(
        self,
        api_key: str,
        model: str,
        base_url: Optional[str] = None,
        timeout: float = 300,
        **kwargs
    ):
        """Initialize OpenAI provider."""
        super().__init__(api_key, model, base_url = base_url, timeout = timeout, **kwargs)
        self.client = openai.AsyncOpenAI(
            api_key = api_key,
            base_url = base_url,
            timeout = timeout,
            max_retries = 0,
        )

    @property
    def provider_name(self) -> str:
        return "openai"

    async def generate(self, request: ChatRequest) -> LLMResponse:
        """
        Generate completion using the chat-completions API.
        """
        messages = [
            {"role": msg.role, "content": msg.content}
            for msg in self.to_messages(request)
        ]

        try:
            response = await self.client.chat.completions.create(
                model = self.model,
                messages = messages,
                temperature = request.temperature,
                max_tokens = request.max_tokens,
            )
        except (openai.AuthenticationError, openai.PermissionDeniedError) as e:
            raise CredentialError(f"Endpoint rejected the credential: {e}") from e
        except (
            openai.APITimeoutError,
            openai.APIConnectionError,
            openai.RateLimitError,
            openai.InternalServerError,
        ) as e:
            raise TransientLLMError(f"Endpoint transient failure: {e}") from e
        except openai.APIStatusError as e:
            if e.status_code >= 500:
                raise TransientLLMError(f"Endpoint server error {e.status_code}: {e}") from e
            raise GatewayError(f"Endpoint request failed ({e.status_code}): {e}") from e

        if not response.choices:
            raise TransientLLMError("Endpoint returned no choices")
        choice = response.choices[0]
        content = choice.message.content or ""
        if not content.strip():
            raise TransientLLMError("Endpoint returned an empty response")

        usage = response.usage
        return LLMResponse(
            content = content,
            model = response.model,
            provider = self.provider_name,
            prompt_tokens = usage.prompt_tokens if usage else 0,
            completion_tokens = usage.completion_tokens if usage else 0,
            total_tokens = usage.total_tokens if usage else 0,
            finish_reason = choice.finish_reason or "",
            metadata = {
                "id": response.id,
                "created": response.created
            }
        )

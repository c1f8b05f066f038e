"""
Anthropic Claude provider implementation.
"""

import anthropic

from src.errors import CredentialError, GatewayError, TransientLLMError
from ..base import BaseProvider, ChatRequest, LLMResponse


class ClaudeProvider(BaseProvider):
    """
    Anthropic Claude LLM provider.

    Implements the BaseProvider interface for Claude Models.
    """

    def __init__(self, api_key: str, model: str, timeout: float = 300, **kwargs):
        """ Initialize Claude Provider. """
        super().__init__(api_key, model, timeout = timeout, **kwargs)
        # Retries are owned by the gateway.
        self.client = anthropic.AsyncAnthropic(api_key = api_key, timeout = timeout, max_retries = 0)

    @property
    def provider_name(self) -> str:
        return "claude"

    async def generate(self, request: ChatRequest) -> LLMResponse:
        """
        Generate completion using Claude.

        The system text goes in the dedicated `system` parameter.
        """
        try:
            response = await self.client.messages.create(
                model = self.model,
                system = request.system,
                messages = [{"role": "user", "content": request.user}],
                temperature = request.temperature,
                max_tokens = request.max_tokens,
            )
        except (anthropic.AuthenticationError, anthropic.PermissionDeniedError) as e:
            raise CredentialError(f"Claude rejected the credential: {e}") from e
        except (
            anthropic.APITimeoutError,
            anthropic.APIConnectionError,
            anthropic.RateLimitError,
            anthropic.InternalServerError,
        ) as e:
            raise TransientLLMError(f"Claude transient failure: {e}") from e
        except anthropic.APIStatusError as e:
            if e.status_code >= 500:
                raise TransientLLMError(f"Claude server error {e.status_code}: {e}") from e
            raise GatewayError(f"Claude request failed ({e.status_code}): {e}") from e

        text = "".join(
            block.text for block in response.content if getattr(block, "type", "") == "text"
        )
        if not text.strip():
            raise TransientLLMError("Claude returned an empty response")

        return LLMResponse(
            content = text,
            model = response.model,
            provider = self.provider_name,
            prompt_tokens = response.usage.input_tokens,
            completion_tokens = response.usage.output_tokens,
            total_tokens = response.usage.input_tokens + response.usage.output_tokens,
            finish_reason = response.stop_reason or "",
            metadata = {
                "id": response.id,
                "type": response.type
            }
        )

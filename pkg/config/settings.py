"""
Environment settings for solver-forge.

This module provides type-safe, validated configuration management using Pydantic Settings.
Everything that depends on the machine the tool runs on (credentials, endpoints, log sinks)
lives here; run hyperparameters live in config/pipeline.py.

Usage :
    from config import settings

    api_key = settings.llm.claude.api_key
    mailto = settings.retrieval.mailto

"""

import os
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import EmailStr, Field, SecretStr, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# ============================================================
# ENUMS
# ============================================================

class LLMProvider(str, Enum):
    """ LLM backend options. """
    CLAUDE = "claude"
    OPENAI = "openai"
    SCRIPTED = "scripted" # replays a YAML fixture, no network

class LogFormat(str, Enum):
    """ Log output format. """
    JSON = "json"
    TEXT = "text"

_PLACEHOLDERS = ["xxxxx", "your-key", "placeholder", "change-me"]


def _check_key(v: Optional[SecretStr], env_name: str, prefix: str) -> Optional[SecretStr]:
    """Reject placeholder keys; a missing key is only an error when the key is used."""
    if v is None:
        return v

    # Skip validation in test mode
    if os.getenv('SKIP_API_KEY_VALIDATION') == 'true':
        return v

    key = v.get_secret_value()
    if not key.strip():
        return None

    if any(p in key.lower() for p in _PLACEHOLDERS):
        raise ValueError(
            f"API key appears to be a placeholder. Set {env_name} in .env"
        )
    if prefix and not key.startswith(prefix):
        raise ValueError(f"Invalid API key format (should start with '{prefix}')")
    return v

# ============================================================
# LLM Configuration
# ============================================================

class ClaudeSettings(BaseSettings):
    """ Anthropic Claude configuration. """

    api_key: Optional[SecretStr] = Field(
        None,
        description = "Anthropic API Key"
    )
    model: str = Field(
        default = "claude-sonnet-4-20250514",
        description = "Claude model to use"
    )
    timeout: int = Field(
        default = 300,
        ge = 1,
        description = "Request timeout in seconds"
    )

    model_config = SettingsConfigDict(
        env_prefix = "LLM__CLAUDE__",
        case_sensitive = False
    )

    @field_validator('api_key', mode='after')
    @classmethod
    def validate_api_key(cls, v: Optional[SecretStr]) -> Optional[SecretStr]:
        """Validate Claude API key format."""
        return _check_key(v, "LLM__CLAUDE__API_KEY", "sk-ant-")


class OpenAISettings(BaseSettings):
    """ OpenAI (or any chat-completions compatible endpoint) configuration """

    api_key: Optional[SecretStr] = Field(
        None,
        description = "OpenAI API key"
    )
    model: str = Field(
        default = "gpt-4o",
        description = "Model name sent to the endpoint"
    )
    base_url: Optional[str] = Field(
        None,
        description = "Override for chat-completions compatible endpoints"
    )
    timeout: int = Field(
        default = 300,
        ge = 1,
        description = "Request timeout in seconds"
    )

    model_config = SettingsConfigDict(
        env_prefix = "LLM__OPENAI__",
        case_sensitive = False
    )

    @field_validator('api_key', mode = 'after')
    @classmethod
    def validate_api_key(cls, v: Optional[SecretStr]) -> Optional[SecretStr]:
        """Validate OpenAI API key format."""
        # Compatible endpoints use arbitrary key shapes.
        return _check_key(v, "LLM__OPENAI__API_KEY", "")


class ScriptedSettings(BaseSettings):
    """ Scripted backend used for offline replay and tests. """

    fixture_path: Optional[Path] = Field(
        None,
        description = "YAML fixture mapping stage/prompt keys to canned responses"
    )

    model_config = SettingsConfigDict(
        env_prefix = "LLM__SCRIPTED__",
        case_sensitive = False
    )


class LLMSettings(BaseSettings):
    """ LLM provider configuration. """

    provider: LLMProvider = Field(
        default = LLMProvider.CLAUDE,
        description = "Which LLM backend to use"
    )
    claude: ClaudeSettings = Field(default_factory = ClaudeSettings)
    openai: OpenAISettings = Field(default_factory = OpenAISettings)
    scripted: ScriptedSettings = Field(default_factory = ScriptedSettings)

    max_retries: int = Field(
        default = 3,
        ge = 1,
        description = "Maximum attempts per LLM call"
    )
    retry_delay: float = Field(
        default = 1.0,
        ge = 0.0,
        description = "Initial backoff between attempts in seconds"
    )
    retry_max_delay: float = Field(
        default = 10.0,
        ge = 0.0,
        description = "Backoff ceiling in seconds"
    )

    model_config = SettingsConfigDict(
        env_prefix = "LLM__",
        case_sensitive = False
    )

# ============================================================
# Retrieval Configuration
# ============================================================

class RetrievalSettings(BaseSettings):
    """ Scholarly metadata sources and full-text acquisition. """

    mailto: Optional[EmailStr] = Field(
        None,
        description = "Contact address sent to OpenAlex (polite pool)"
    )
    openalex_url: str = Field(
        default = "https://api.openalex.org/works",
        description = "OpenAlex works endpoint"
    )
    arxiv_url: str = Field(
        default = "https://export.arxiv.org/api/query",
        description = "arXiv query endpoint"
    )
    timeout: float = Field(
        default = 30.0,
        gt = 0.0,
        description = "HTTP timeout in seconds"
    )
    max_retries: int = Field(
        default = 3,
        ge = 1,
        description = "Maximum attempts per HTTP request"
    )
    min_interval: float = Field(
        default = 1.0,
        ge = 0.0,
        description = "Minimum gap between requests to the same host, seconds"
    )
    fixture_dir: Optional[Path] = Field(
        None,
        description = "Replay recorded payloads from this directory instead of the network"
    )
    record_dir: Optional[Path] = Field(
        None,
        description = "Write every live payload under this directory"
    )
    pdftotext: str = Field(
        default = "pdftotext",
        description = "External PDF text extractor command"
    )

    model_config = SettingsConfigDict(
        env_prefix = "RETRIEVAL__",
        case_sensitive = False
    )

# ============================================================================
# Logging Configuration
# ============================================================================

class LoggingSettings(BaseSettings):
    """ Logging configuration. """

    level: str = Field(
        default = "INFO",
        description = "Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)"
    )
    format: LogFormat = Field(
        default = LogFormat.JSON,
        description = "Log format (json or text)"
    )
    log_file: Optional[str] = Field(
        None,
        description = "Log file path (None for stderr only)"
    )
    log_llm_calls: bool = Field(
        default = True,
        description = "Log every LLM exchange"
    )

    model_config = SettingsConfigDict(
        env_prefix = "LOGGING__",
        case_sensitive = False
    )

    @field_validator('level', mode = 'after')
    @classmethod
    def validate_level(cls, v: str) -> str:
        level = v.upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"Unknown log level: {v}")
        return level

# ============================================================================
# Main Settings
# ============================================================================

class Settings(BaseSettings):
    """
    Main application settings.

    All settings can be overridden via environment variables using the double
    underscore notation. (e.g. LLM__CLAUDE__API_KEY).

    Example:
        export LLM__PROVIDER="scripted"
        export LLM__SCRIPTED__FIXTURE_PATH="tests/fixtures/scripted.yaml"
    """

    # Component Settings
    llm: LLMSettings = Field(default_factory = LLMSettings)
    retrieval: RetrievalSettings = Field(default_factory = RetrievalSettings)
    logging: LoggingSettings = Field(default_factory = LoggingSettings)

    model_config = SettingsConfigDict(
        env_file = ".env",
        env_file_encoding = "utf-8",
        env_nested_delimiter = "__",
        case_sensitive = False,
        extra = "ignore"
    )

    def backend_model(self) -> str:
        """ Model identifier of the configured provider. """
        if self.llm.provider == LLMProvider.OPENAI:
            return self.llm.openai.model
        if self.llm.provider == LLMProvider.SCRIPTED:
            return "scripted"
        return self.llm.claude.model

# ===================================================================
# SETTINGS INSTANCE
# ===================================================================

# Global settings instance - import this throughout the app
settings = Settings()


def get_settings() -> Settings:
    """
    Get the settings instance.

    Reload with ``reload_settings()`` after changing the environment (tests do this).
    """
    return settings


def reload_settings() -> Settings:
    """ Rebuild the global settings from the current environment. """
    global settings
    settings = Settings()
    return settings

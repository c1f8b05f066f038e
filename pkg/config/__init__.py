"""
Configuration package for solver-forge.

Provides centralized access to environment settings, run hyperparameters and prompts.

Usage:
    from config import settings, load_config, get_prompt_library

    provider = settings.llm.provider
    cfg = load_config("run.yaml")
    text = get_prompt_library().bind("task", desc="...", dim=20, budget=300, search_space="...")
"""

from .settings import (
    # Settings instance
    settings,
    get_settings,
    reload_settings,

    # Settings classes (for type hints)
    Settings,
    LLMSettings,
    ClaudeSettings,
    OpenAISettings,
    ScriptedSettings,
    RetrievalSettings,
    LoggingSettings,

    # Enums
    LLMProvider,
    LogFormat,
)

from .pipeline import (
    PipelineConfig,
    SamplingConfig,
    SamplingParams,
    RD_FLOOR,
    load_config,
    parse_config,
    dump_config,
)

from .prompt_loader import (
    PromptLibrary,
    PromptTemplate,
    TEMPLATE_NAMES,
    bind_template,
    get_prompt_library,
    reload_prompts,
)

__all__ = [
    # Settings
    "settings",
    "get_settings",
    "reload_settings",
    "Settings",
    "LLMSettings",
    "ClaudeSettings",
    "OpenAISettings",
    "ScriptedSettings",
    "RetrievalSettings",
    "LoggingSettings",

    # Enums
    "LLMProvider",
    "LogFormat",

    # Run configuration
    "PipelineConfig",
    "SamplingConfig",
    "SamplingParams",
    "RD_FLOOR",
    "load_config",
    "parse_config",
    "dump_config",

    # Prompts
    "PromptLibrary",
    "PromptTemplate",
    "TEMPLATE_NAMES",
    "bind_template",
    "get_prompt_library",
    "reload_prompts",
]

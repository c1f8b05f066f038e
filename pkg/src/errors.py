"""
Exception hierarchy for the solver generation workflow.

Every error carries an exit code and a category so the CLI can map a failed
stage to a distinct process status:

    0  success
    1  unexpected failure
    2  input (config, task, templates, run directory)
    3  network / backend
    4  parse (LLM responses, source payloads)
    5  structural (generated code does not match the template)
    6  tournament
"""

from typing import Optional


class SolverForgeError(Exception):
    """Base class for all workflow errors."""

    exit_code: int = 1
    category: str = "internal"


# ============================================================================
# INPUT
# ============================================================================

class InputError(SolverForgeError):
    """Invalid user-supplied input."""

    exit_code = 2
    category = "input"


class ConfigError(InputError):
    """Config file failed to parse or violates an invariant."""


class TaskError(InputError):
    """Task file is missing a component or holds an invalid value."""


class TemplateError(InputError, ValueError):
    """Prompt template is malformed or was bound with the wrong slots."""


class PrerequisiteError(InputError):
    """A stage was requested before the stages it reads from completed."""


class ManifestError(InputError):
    """Run directory manifest is missing, corrupted or inconsistent."""


class ConfigMismatchError(ManifestError):
    """Config snapshot on disk no longer matches the one the run started with."""


# ============================================================================
# NETWORK / BACKEND
# ============================================================================

class NetworkError(SolverForgeError):
    """Remote service or backend failure."""

    exit_code = 3
    category = "network"


class GatewayError(NetworkError):
    """LLM call failed after the retry budget was spent."""


class CredentialError(GatewayError):
    """Backend credential missing or rejected."""


class TransientLLMError(GatewayError):
    """Retryable backend failure (timeout, connection drop, rate limit, 5xx)."""


class FixtureExhaustedError(GatewayError):
    """Scripted backend has no response left for a request."""


class RetrievalError(NetworkError):
    """Literature source request failed after retries, or the pool ended empty."""


class DocumentError(NetworkError):
    """Full text could not be downloaded, extracted, or is too short."""


# ============================================================================
# PARSE
# ============================================================================

class ResponseParseError(SolverForgeError):
    """LLM response does not contain the expected JSON object or code block."""

    exit_code = 4
    category = "parse"


class QuerySetError(ResponseParseError):
    """Rewritten query list has the wrong arity or repeats an entry."""


class MalformedPayloadError(ResponseParseError):
    """Source payload (OpenAlex JSON, arXiv Atom XML) could not be parsed."""


class UnresolvableTitleError(ResponseParseError):
    """Reranker named a paper that is not in the candidate pool."""


class DescriptionError(ResponseParseError):
    """Reverse-engineered description is empty or contains code."""


class VerdictError(ResponseParseError):
    """Judge verdict could not be mapped to one of the two contestants."""


# ============================================================================
# STRUCTURAL / TOURNAMENT
# ============================================================================

class StructuralError(SolverForgeError):
    """Generated solver failed the template conformance check."""

    exit_code = 5
    category = "structural"

    def __init__(self, message: str, findings: Optional[list] = None):
        self.findings = findings or []
        super().__init__(message)


class TournamentError(SolverForgeError):
    """Tournament could not run to completion."""

    exit_code = 6
    category = "tournament"

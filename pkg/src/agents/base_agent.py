"""
Base agent class for all LLM-driven steps.

All agents inherit from BaseAgent and implement the process() method.
"""

import logging
import time
from abc import ABC, abstractmethod
from typing import Any, Dict, Iterable, Optional, Tuple

from config import PipelineConfig, PromptLibrary, get_prompt_library
from src.errors import ResponseParseError, SolverForgeError
from src.llm import ChatRequest, LLMGateway, Transcript, extract_json_block
from src.models import Stage, TaskPrompt


def render_task(task: TaskPrompt, prompts: Optional[PromptLibrary] = None) -> str:
    """Render the task prompt from its four components."""
    return (prompts or get_prompt_library()).bind("task", **task.slots())


class AgentMetrics:
    """
    Tracks agent execution metrics.

    Attributes:
        total_executions: Total number of executions
        successful_executions: Number of successful executions
        failed_executions: Number of failed executions
        total_time: Total execution time in seconds
        llm_calls: Gateway calls issued by the agent
    """

    def __init__(self):
        self.total_executions = 0
        self.successful_executions = 0
        self.failed_executions = 0
        self.total_time = 0.0
        self.llm_calls = 0

    @property
    def average_time(self) -> float:
        """ Calculate average execution time. """
        if self.total_executions == 0:
            return 0.0
        return self.total_time / self.total_executions

    def record_success(self, execution_time: float) -> None:
        self.total_executions += 1
        self.successful_executions += 1
        self.total_time += execution_time

    def record_failure(self, execution_time: float) -> None:
        self.total_executions += 1
        self.failed_executions += 1
        self.total_time += execution_time

    def to_dict(self) -> Dict[str, Any]:
        """ Convert metrics to dictionary. """
        return {
            "total_executions": self.total_executions,
            "successful_executions": self.successful_executions,
            "failed_executions": self.failed_executions,
            "llm_calls": self.llm_calls,
            "total_time": round(self.total_time, 2),
            "average_time": round(self.average_time, 3),
        }


class BaseAgent(ABC):
    """
    Abstract base class for all agents.

    Subclasses implement process(); execute() wraps it with timing, logging
    and metrics. Workflow errors propagate unchanged so the orchestrator can
    fail the stage with the right exit code; anything else is wrapped in
    AgentError.

    Attributes:
        name: Agent name (e.g. "rewriter", "judge")
        stage: Pipeline stage the agent's requests are tagged with
        gateway: LLM gateway
        config: Run hyperparameters (sampling, retry budgets)
        prompts: Prompt library

    Example:
        >> class MyAgent(BaseAgent):
        ...     async def process(self, task):
        ...         transcript = await self.ask("rewrite", task_prompt = render_task(task))
        ...         return transcript.response

        >> agent = MyAgent("my_agent", Stage.REWRITE, gateway, config)
        >> result = await agent.execute(task)
    """

    def __init__(
        self,
        name: str,
        stage: Stage,
        gateway: LLMGateway,
        config: PipelineConfig,
        prompts: Optional[PromptLibrary] = None,
    ):
        self.name = name
        self.stage = stage
        self.gateway = gateway
        self.config = config
        self.prompts = prompts or get_prompt_library(config.prompts_path)
        self.logger = logging.getLogger(f"agent.{name}")
        self.metrics = AgentMetrics()

    @abstractmethod
    async def process(self, *args: Any, **kwargs: Any) -> Any:
        """
        Agent logic. Must be implemented by subclasses.

        Raises:
            NotImplementedError: If not implemented by subclass
        """
        raise NotImplementedError(f"{self.__class__.__name__} must implement process()")

    async def execute(self, *args: Any, **kwargs: Any) -> Any:
        """
        Run process() with timing, logging and metrics.

        Raises:
            SolverForgeError: workflow failures, unchanged
            AgentError: any other failure
        """
        start_time = time.time()
        self._log_start()

        try:
            result = await self.process(*args, **kwargs)
        except Exception as e:
            execution_time = time.time() - start_time
            self.metrics.record_failure(execution_time)
            self._log_error(e, execution_time)
            if isinstance(e, SolverForgeError):
                raise
            raise AgentError(self.name, str(e), e) from e

        execution_time = time.time() - start_time
        self.metrics.record_success(execution_time)
        self._log_success(execution_time)
        return result

    # ------------------------------------------------------------------
    # LLM helpers
    # ------------------------------------------------------------------

    def build_request(self, prompt: str, suffix: str = "", **bindings: Any) -> ChatRequest:
        user = self.prompts.bind(prompt, **bindings)
        if suffix:
            user = f"{user}\n\n{suffix}"
        sampling = self.config.sampling.for_prompt(prompt)
        return ChatRequest(
            system = self.prompts.system_prompt(prompt).strip(),
            user = user,
            stage = self.stage,
            prompt = prompt,
            temperature = sampling.temperature,
            max_tokens = sampling.max_tokens,
        )

    async def ask(self, prompt: str, suffix: str = "", **bindings: Any) -> Transcript:
        """Bind a template and send it through the gateway."""
        request = self.build_request(prompt, suffix, **bindings)
        self.metrics.llm_calls += 1
        return await self.gateway.chat(request)

    async def ask_json(
        self,
        prompt: str,
        require: Iterable[str],
        retries: int,
        **bindings: Any,
    ) -> Tuple[Dict[str, Any], Transcript]:
        """
        Ask until the response carries a JSON object with the required keys.

        Raises:
            ResponseParseError: still no object after `retries` re-asks
        """
        keys = tuple(require)
        last_error: Optional[ResponseParseError] = None
        for attempt in range(retries + 1):
            transcript = await self.ask(prompt, **bindings)
            try:
                return extract_json_block(transcript.response, require = keys), transcript
            except ResponseParseError as e:
                last_error = e
                self.logger.warning(
                    f"{prompt}: no usable JSON in response (attempt {attempt + 1}/{retries + 1})",
                    extra = {"stage": self.stage.value, "transcript": transcript.index},
                )
        raise ResponseParseError(f"{prompt}: {last_error}")

    # ------------------------------------------------------------------
    # Logging
    # ------------------------------------------------------------------

    def _log_start(self) -> None:
        self.logger.info(f"Starting {self.name} agent", extra = {"stage": self.stage.value})

    def _log_success(self, execution_time: float) -> None:
        self.logger.info(
            f"Completed {self.name} agent successfully",
            extra = {
                "stage": self.stage.value,
                "execution_time": round(execution_time, 3),
                "llm_calls": self.metrics.llm_calls,
            },
        )

    def _log_error(self, error: Exception, execution_time: float) -> None:
        self.logger.error(
            f"Error in {self.name} agent: {error}",
            extra = {
                "stage": self.stage.value,
                "execution_time": round(execution_time, 3),
                "error_type": type(error).__name__,
            },
            exc_info = not isinstance(error, SolverForgeError),
        )

    def __repr__(self) -> str:
        return (
            f"{self.__class__.__name__}(name='{self.name}', stage={self.stage.value}, "
            f"executions={self.metrics.total_executions})"
        )

    def __str__(self) -> str:
        return f"{self.name} Agent"


class AgentError(SolverForgeError):
    """
    Unexpected failure inside an agent.

    Workflow errors (parse, structural, network) are raised as themselves;
    this wraps everything else with the agent's name.
    """

    def __init__(self, agent_name: str, message: str, original_error: Optional[Exception] = None):
        self.agent_name = agent_name
        self.original_error = original_error
        super().__init__(f"[{agent_name}] {message}")

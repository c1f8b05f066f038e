"""
Unit tests for base agent class.

Tests abstract base, metrics tracking, error handling, request building and JSON re-asks.
"""

import pytest
from unittest.mock import Mock

from src.agents import AgentError, AgentMetrics, BaseAgent, render_task
from src.errors import QuerySetError, ResponseParseError
from src.llm import LLMGateway
from src.models import Stage
from tests.helpers import make_gateway


class EchoAgent(BaseAgent):
    """Returns its input."""

    async def process(self, value):
        return value


class CrashingAgent(BaseAgent):
    """Raises a plain exception."""

    async def process(self):
        raise ValueError("Intentional test error")


class WorkflowFailingAgent(BaseAgent):
    """Raises a workflow error."""

    async def process(self):
        raise QuerySetError("bad queries")


class TestAgentMetrics:
    """Tests for AgentMetrics class."""

    def test_initialization(self):
        metrics = AgentMetrics()

        assert metrics.total_executions == 0
        assert metrics.successful_executions == 0
        assert metrics.failed_executions == 0
        assert metrics.llm_calls == 0
        assert metrics.average_time == 0.0

    def test_record_success_and_failure(self):
        metrics = AgentMetrics()

        metrics.record_success(1.0)
        metrics.record_success(2.0)
        metrics.record_failure(3.0)

        assert metrics.total_executions == 3
        assert metrics.successful_executions == 2
        assert metrics.failed_executions == 1
        assert metrics.average_time == 2.0

    def test_to_dict(self):
        metrics = AgentMetrics()
        metrics.record_success(1.5)

        result = metrics.to_dict()

        assert result['total_executions'] == 1
        assert result['llm_calls'] == 0
        assert 'average_time' in result


class TestBaseAgent:
    """Tests for BaseAgent class."""

    @pytest.fixture
    def mock_gateway(self):
        return Mock(spec = LLMGateway)

    def test_agent_initialization(self, mock_gateway, default_config):
        agent = EchoAgent("echo", Stage.REWRITE, mock_gateway, default_config)

        assert agent.name == "echo"
        assert agent.stage == Stage.REWRITE
        assert agent.gateway is mock_gateway
        assert agent.metrics.total_executions == 0

    def test_abstract_process_method(self, mock_gateway, default_config):
        with pytest.raises(TypeError, match = "abstract"):
            BaseAgent("abstract", Stage.REWRITE, mock_gateway, default_config)

    async def test_successful_execution(self, mock_gateway, default_config):
        agent = EchoAgent("echo", Stage.REWRITE, mock_gateway, default_config)

        assert await agent.execute(42) == 42
        assert agent.metrics.successful_executions == 1

    async def test_unexpected_error_wrapped(self, mock_gateway, default_config):
        agent = CrashingAgent("crash", Stage.REWRITE, mock_gateway, default_config)

        with pytest.raises(AgentError, match = "crash") as excinfo:
            await agent.execute()

        assert isinstance(excinfo.value.original_error, ValueError)
        assert agent.metrics.failed_executions == 1

    async def test_workflow_error_passes_through(self, mock_gateway, default_config):
        agent = WorkflowFailingAgent("rewriter", Stage.REWRITE, mock_gateway, default_config)

        with pytest.raises(QuerySetError):
            await agent.execute()
        assert agent.metrics.failed_executions == 1

    def test_build_request_uses_prompt_sampling(self, mock_gateway, default_config, bbob_task, prompts):
        agent = EchoAgent("echo", Stage.REWRITE, mock_gateway, default_config)

        request = agent.build_request("rewrite", task_prompt = render_task(bbob_task, prompts))

        assert request.prompt == "rewrite"
        assert request.stage == Stage.REWRITE
        assert request.system == prompts.system_prompt("rewrite")
        assert request.temperature == default_config.sampling.rewrite.temperature
        assert bbob_task.desc in request.user

    def test_build_request_appends_suffix(self, mock_gateway, default_config):
        agent = EchoAgent("echo", Stage.DESCRIBE, mock_gateway, default_config)

        request = agent.build_request("reverse", "Fix this.", desc = "d", solver_code = "code")

        assert request.user.endswith("\n\nFix this.")

    async def test_ask_json_reasks_once(self, default_config):
        gateway = make_gateway({"rewrite": ["no json at all", '{"search_queries": ["a"]}']})
        agent = EchoAgent("echo", Stage.REWRITE, gateway, default_config)

        data, transcript = await agent.ask_json("rewrite", ["search_queries"], retries = 1, task_prompt = "t")

        assert data == {"search_queries": ["a"]}
        assert transcript.index == 1
        assert agent.metrics.llm_calls == 2

    async def test_ask_json_gives_up(self, default_config):
        gateway = make_gateway({"rewrite": ["nothing", "still nothing"]})
        agent = EchoAgent("echo", Stage.REWRITE, gateway, default_config)

        with pytest.raises(ResponseParseError, match = "rewrite"):
            await agent.ask_json("rewrite", ["search_queries"], retries = 1, task_prompt = "t")

    def test_repr_and_str(self, mock_gateway, default_config):
        agent = EchoAgent("echo", Stage.REWRITE, mock_gateway, default_config)

        assert "EchoAgent" in repr(agent)
        assert "rewrite" in repr(agent)
        assert str(agent) == "echo Agent"


class TestAgentError:
    """Tests for AgentError exception."""

    def test_agent_error_creation(self):
        error = AgentError("test_agent", "Something went wrong")

        assert error.agent_name == "test_agent"
        assert "test_agent" in str(error)
        assert "Something went wrong" in str(error)
        assert error.exit_code == 1

    def test_agent_error_with_original(self):
        original = ValueError("Original error")
        error = AgentError("test_agent", "Wrapped error", original_error = original)

        assert error.original_error is original


if __name__ == "__main__":
    pytest.main([__file__, "-v"])

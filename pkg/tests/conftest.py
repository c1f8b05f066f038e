"""
Pytest configuration and fixtures.

Every test runs offline: the scripted LLM backend replays tests/fixtures/scripted.yaml
and retrieval replays payloads from a per-test directory.
"""

import os
import shutil
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# Skip API key validation in tests
os.environ['SKIP_API_KEY_VALIDATION'] = 'true'

# Offline backend, fast retries
os.environ['LLM__PROVIDER'] = 'scripted'
os.environ['LLM__SCRIPTED__FIXTURE_PATH'] = str(FIXTURES / "scripted.yaml")
os.environ['LLM__RETRY_DELAY'] = '0'
os.environ['LLM__RETRY_MAX_DELAY'] = '0'
os.environ['RETRIEVAL__MIN_INTERVAL'] = '0'
os.environ.pop('LLM__CLAUDE__API_KEY', None)
os.environ.pop('LLM__OPENAI__API_KEY', None)

from config import PipelineConfig, RetrievalSettings, get_prompt_library, load_config  # noqa: E402
from src.llm import LLMGateway, ScriptedProvider  # noqa: E402
from src.models import parse_task  # noqa: E402
from src.retrieval import FixtureStore, PayloadFetcher  # noqa: E402
from tests.helpers import SCRIPTED_QUERIES, TOP1_PDF  # noqa: E402


@pytest.fixture(autouse=True)
def setup_test_env():
    """Setup test environment before each test."""
    # Ensure validation is skipped
    os.environ['SKIP_API_KEY_VALIDATION'] = 'true'
    yield


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def bbob_task_path() -> Path:
    return FIXTURES / "tasks" / "bbob.yaml"


@pytest.fixture
def bbob_task(bbob_task_path):
    return parse_task(bbob_task_path)


@pytest.fixture
def small_config() -> PipelineConfig:
    """2 queries, 5 pooled papers, 3 refined candidates."""
    return load_config(FIXTURES / "run.yaml")


@pytest.fixture
def default_config() -> PipelineConfig:
    return PipelineConfig()


@pytest.fixture
def prompts():
    return get_prompt_library()


@pytest.fixture
def scripted_provider() -> ScriptedProvider:
    return ScriptedProvider(FIXTURES / "scripted.yaml")


@pytest.fixture
def gateway(scripted_provider) -> LLMGateway:
    return LLMGateway(provider = scripted_provider)


@pytest.fixture
def document_text() -> str:
    return (FIXTURES / "documents" / "trust_region_bo.txt").read_text(encoding = "utf-8")


@pytest.fixture
def replay_dir(tmp_path) -> Path:
    """Recorded payloads for the scripted queries and the Top-1 PDF locator."""
    root = tmp_path / "replay"
    store = FixtureStore(root)
    openalex = (FIXTURES / "openalex" / "sample.json").read_bytes()
    arxiv = (FIXTURES / "arxiv" / "sample.xml").read_bytes()
    for query in SCRIPTED_QUERIES:
        store.write("openalex", query, "json", openalex)
        store.write("arxiv", query, "xml", arxiv)
    store.write("fulltext", TOP1_PDF, "", (FIXTURES / "documents" / "trust_region_bo.txt").read_bytes())
    return root


@pytest.fixture
def replay_settings(replay_dir) -> RetrievalSettings:
    return RetrievalSettings(fixture_dir = replay_dir, min_interval = 0)


@pytest.fixture
def replay_fetcher(replay_settings) -> PayloadFetcher:
    return PayloadFetcher(replay_settings)


@pytest.fixture
def config_copy(tmp_path) -> Path:
    """Writable copy of the small run config."""
    target = tmp_path / "run.yaml"
    shutil.copyfile(FIXTURES / "run.yaml", target)
    return target

"""
Unit tests for literature retrieval.

Tests OpenAlex / arXiv parsing, the HTTP fetcher (retry, replay, recording)
and the dual-source search fan-out.
"""

import json
import pytest
import httpx
from unittest.mock import Mock

from config import PipelineConfig, RetrievalSettings
from src.errors import MalformedPayloadError, RetrievalError
from src.models import PaperSource, QuerySet
from src.retrieval import (
    ArxivClient,
    FixtureStore,
    LiteratureSearch,
    OpenAlexClient,
    PayloadFetcher,
    TransientHTTPError,
    parse_arxiv,
    parse_openalex,
    rebuild_abstract,
    slugify,
)
from tests.helpers import FIXTURES, TOP1_PDF, TOP1_TITLE


@pytest.fixture
def openalex_payload() -> bytes:
    return (FIXTURES / "openalex" / "sample.json").read_bytes()


@pytest.fixture
def arxiv_payload() -> bytes:
    return (FIXTURES / "arxiv" / "sample.xml").read_bytes()


@pytest.fixture
def no_backoff(monkeypatch):
    monkeypatch.setattr(PayloadFetcher, "_wait", lambda self, state: 0)


def mock_fetcher(handler, **settings) -> PayloadFetcher:
    cfg = RetrievalSettings(min_interval = 0, **settings)
    client = httpx.AsyncClient(transport = httpx.MockTransport(handler))
    return PayloadFetcher(cfg, client = client)


class TestOpenAlexParsing:
    """Tests for OpenAlex works parsing."""

    def test_parse_sample(self, openalex_payload):
        records = parse_openalex(openalex_payload, cap = 30, query_index = 2)

        # the undated work is dropped; ranks stay contiguous
        assert [r.rank for r in records] == [1, 2, 3, 4, 5]
        assert all(r.source == PaperSource.OPENALEX for r in records)
        assert all(r.query_index == 2 for r in records)

        turbo = records[0]
        assert turbo.title == TOP1_TITLE
        assert turbo.year == 2019
        assert turbo.venue == "Neural Information Processing Systems"
        assert turbo.arxiv_id == "1910.01739"
        assert turbo.fulltext_url == TOP1_PDF
        assert turbo.authors == ("David Eriksson", "Michael Pearce")
        assert turbo.abstract == "Bayesian optimization with local trust regions"

    def test_doi_and_open_access_url(self, openalex_payload):
        records = parse_openalex(openalex_payload, cap = 30)
        saea = records[2]

        assert saea.doi == "10.1109/tevc.2021.0001"
        assert saea.fulltext_url == "https://example.org/saea.pdf"

    def test_cap(self, openalex_payload):
        assert len(parse_openalex(openalex_payload, cap = 2)) == 2

    def test_cap_counts_usable_works(self, openalex_payload):
        records = parse_openalex(openalex_payload, cap = 5)

        # the undated fifth work does not use up a slot
        assert len(records) == 5
        assert records[-1].year == 2023
        assert [r.rank for r in records] == [1, 2, 3, 4, 5]

    def test_rebuild_abstract(self):
        assert rebuild_abstract({"world": [1], "hello": [0], "again": [2]}) == "hello world again"
        assert rebuild_abstract(None) == ""

    def test_not_json(self):
        with pytest.raises(MalformedPayloadError):
            parse_openalex(b"<html>", cap = 10)

    def test_no_results(self):
        with pytest.raises(MalformedPayloadError, match = "results"):
            parse_openalex(json.dumps({"meta": {}}).encode(), cap = 10)

    def test_params(self):
        client = OpenAlexClient(Mock(), RetrievalSettings(mailto = "lab@example.org"))
        params = client.params("trust region", 30)

        assert params["search"] == "trust region"
        assert params["per_page"] == 30
        assert params["sort"] == "relevance_score:desc"
        assert params["mailto"] == "lab@example.org"


class TestArxivParsing:
    """Tests for arXiv Atom parsing."""

    def test_parse_sample(self, arxiv_payload):
        records = parse_arxiv(arxiv_payload, cap = 10, query_index = 1)

        assert len(records) == 3
        turbo = records[0]
        assert turbo.title == TOP1_TITLE
        assert turbo.arxiv_id == "1910.01739"
        assert turbo.venue == "NeurIPS 2019"
        assert turbo.year == 2019
        assert turbo.fulltext_url == "http://arxiv.org/pdf/1910.01739v4"
        assert turbo.query_index == 1

    def test_defaults(self, arxiv_payload):
        records = parse_arxiv(arxiv_payload, cap = 10)

        assert records[1].venue == "arXiv"
        assert records[2].doi == "10.1000/batch.2022"
        assert records[2].fulltext_url == ""
        assert records[2].rank == 3

    def test_cap_counts_usable_entries(self, arxiv_payload):
        records = parse_arxiv(arxiv_payload, cap = 3)

        assert [r.year for r in records] == [2019, 2024, 2022]
        assert [r.rank for r in records] == [1, 2, 3]

    def test_malformed_xml(self):
        with pytest.raises(MalformedPayloadError):
            parse_arxiv(b"<feed><entry>", cap = 10)

    def test_not_a_feed(self):
        with pytest.raises(MalformedPayloadError, match = "Atom"):
            parse_arxiv(b"<html></html>", cap = 10)

    def test_params(self):
        params = ArxivClient(Mock(), RetrievalSettings()).params("trust region", 10)
        assert params["search_query"] == 'all:"trust region"'
        assert params["max_results"] == 10
        assert params["sortBy"] == "relevance"


class TestPayloadFetcher:
    """Tests for HTTP access, replay and recording."""

    async def test_transient_status_retried(self, no_backoff):
        calls = []

        def handler(request):
            calls.append(request)
            if len(calls) == 1:
                return httpx.Response(503)
            return httpx.Response(200, content = b"ok")

        fetcher = mock_fetcher(handler, max_retries = 3)
        payload = await fetcher.get("openalex", "q", "json", "https://api.openalex.org/works", {"search": "q"})

        assert payload == b"ok"
        assert len(calls) == 2
        assert calls[0].url.params["search"] == "q"

    async def test_retries_exhausted(self, no_backoff):
        fetcher = mock_fetcher(lambda request: httpx.Response(429), max_retries = 2)

        with pytest.raises(RetrievalError, match = "after retries"):
            await fetcher.get("arxiv", "q", "xml", "https://export.arxiv.org/api/query")
        assert fetcher.request_count == 2

    async def test_client_error_not_retried(self, no_backoff):
        fetcher = mock_fetcher(lambda request: httpx.Response(404), max_retries = 3)

        with pytest.raises(RetrievalError, match = "404"):
            await fetcher.get("arxiv", "q", "xml", "https://export.arxiv.org/api/query")
        assert fetcher.request_count == 1

    def test_retry_after_honored(self):
        fetcher = PayloadFetcher(RetrievalSettings())
        error = TransientHTTPError("slow down", retry_after = 5.0)
        state = Mock(attempt_number = 1, outcome = Mock(exception = Mock(return_value = error)))

        assert fetcher._wait(state) == 5.0

    async def test_replay(self, tmp_path):
        FixtureStore(tmp_path).write("openalex", "trust region", "json", b'{"results": []}')
        fetcher = PayloadFetcher(RetrievalSettings(fixture_dir = tmp_path))

        assert await fetcher.get("openalex", "trust region", "json", "unused") == b'{"results": []}'
        assert fetcher.request_count == 0

    async def test_replay_missing(self, tmp_path):
        fetcher = PayloadFetcher(RetrievalSettings(fixture_dir = tmp_path))
        with pytest.raises(RetrievalError, match = "No recorded"):
            await fetcher.get("openalex", "absent", "json", "unused")

    async def test_recording(self, tmp_path):
        fetcher = mock_fetcher(lambda request: httpx.Response(200, content = b"<feed/>"), record_dir = tmp_path)

        await fetcher.get("arxiv", "Trust Region BO", "xml", "https://export.arxiv.org/api/query")

        assert (tmp_path / "arxiv" / "trust-region-bo.xml").read_bytes() == b"<feed/>"

    def test_slugify(self):
        assert slugify("TuRBO: Trust-Region BO!") == "turbo-trust-region-bo"
        long = slugify("x" * 200)
        assert len(long) <= 80


class TestLiteratureSearch:
    """Tests for the dual-source fan-out."""

    async def test_order_and_caps(self, openalex_payload, arxiv_payload, no_backoff):
        def handler(request):
            if "openalex" in request.url.host:
                return httpx.Response(200, content = openalex_payload)
            return httpx.Response(200, content = arxiv_payload)

        config = PipelineConfig(
            n_queries = 2, recall_openalex = 4, recall_arxiv = 2,
            keep_openalex = 3, keep_arxiv = 2, rerank_pool = 5,
        )
        fetcher = mock_fetcher(handler)
        search = LiteratureSearch(fetcher.cfg, fetcher)

        records = await search.search_all(QuerySet(queries = ("q one", "q two")), config)

        # per query: OpenAlex block then arXiv block
        layout = [(r.query_index, r.source) for r in records]
        expected = []
        for qi in (0, 1):
            expected += [(qi, PaperSource.OPENALEX)] * 4 + [(qi, PaperSource.ARXIV)] * 2
        assert layout == expected
        assert len(records) <= config.raw_recall_cap
        assert search.failures == []

    async def test_failed_source_skipped(self, openalex_payload, no_backoff):
        def handler(request):
            if "openalex" in request.url.host:
                return httpx.Response(200, content = openalex_payload)
            return httpx.Response(503)

        fetcher = mock_fetcher(handler, max_retries = 2)
        search = LiteratureSearch(fetcher.cfg, fetcher)

        records = await search.search_all(QuerySet(queries = ("only",)), PipelineConfig(n_queries = 1))

        assert records
        assert all(r.source == PaperSource.OPENALEX for r in records)
        assert [(s, q) for s, q, _ in search.failures] == [(PaperSource.ARXIV, "only")]

    async def test_malformed_payload_skipped(self, arxiv_payload, no_backoff):
        def handler(request):
            if "openalex" in request.url.host:
                return httpx.Response(200, content = b"not json")
            return httpx.Response(200, content = arxiv_payload)

        fetcher = mock_fetcher(handler)
        search = LiteratureSearch(fetcher.cfg, fetcher)

        records = await search.search_all(QuerySet(queries = ("only",)), PipelineConfig(n_queries = 1))

        assert {r.source for r in records} == {PaperSource.ARXIV}
        assert search.failures[0][0] == PaperSource.OPENALEX

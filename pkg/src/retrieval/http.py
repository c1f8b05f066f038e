"""
HTTP access for literature sources.

PayloadFetcher is the only thing that touches the network: per-host politeness
gap, retries on transient failures (honoring Retry-After), and optional
fixture replay / recording so retrieval runs offline.
"""

import asyncio
import logging
import time
from typing import Any, Dict, Optional
from urllib.parse import urlsplit

import httpx
from tenacity import (
    AsyncRetrying,
    RetryCallState,
    retry_if_exception_type,
    stop_after_attempt,
    wait_exponential_jitter,
)

from config.settings import RetrievalSettings
from src.errors import RetrievalError
from .fixtures import FixtureStore

logger = logging.getLogger(__name__)

RETRY_STATUS = {429, 500, 502, 503, 504}


class TransientHTTPError(Exception):
    """Retryable HTTP failure."""

    def __init__(self, message: str, retry_after: Optional[float] = None):
        self.retry_after = retry_after
        super().__init__(message)


def _retry_after(response: httpx.Response) -> Optional[float]:
    value = response.headers.get("Retry-After")
    if value is None:
        return None
    try:
        return max(0.0, float(value))
    except ValueError:
        return None


class HostRateLimiter:
    """Keeps at least `min_interval` seconds between requests to the same host."""

    def __init__(self, min_interval: float):
        self.min_interval = min_interval
        self._locks: Dict[str, asyncio.Lock] = {}
        self._last: Dict[str, float] = {}

    async def wait(self, host: str) -> None:
        if self.min_interval <= 0:
            return
        lock = self._locks.setdefault(host, asyncio.Lock())
        async with lock:
            now = time.monotonic()
            last = self._last.get(host)
            if last is not None:
                delay = self.min_interval - (now - last)
                if delay > 0:
                    await asyncio.sleep(delay)
            self._last[host] = time.monotonic()


class PayloadFetcher:
    """
    Fetches raw payloads for the retrieval stages.

    Args:
        cfg: retrieval settings (timeouts, retries, fixture/record dirs)
        client: injected httpx.AsyncClient (tests pass one with a MockTransport)
    """

    def __init__(self, cfg: RetrievalSettings, client: Optional[httpx.AsyncClient] = None):
        self.cfg = cfg
        self._client = client
        self._owns_client = client is None
        self.limiter = HostRateLimiter(cfg.min_interval)
        self.replay = FixtureStore(cfg.fixture_dir) if cfg.fixture_dir else None
        self.recorder = FixtureStore(cfg.record_dir) if cfg.record_dir else None
        self.request_count = 0

    @property
    def client(self) -> httpx.AsyncClient:
        if self._client is None:
            self._client = httpx.AsyncClient(
                timeout = self.cfg.timeout,
                follow_redirects = True,
                headers = {"User-Agent": "solver-forge/0.1"},
            )
        return self._client

    async def aclose(self) -> None:
        if self._client is not None and self._owns_client:
            await self._client.aclose()
            self._client = None

    def _wait(self, state: RetryCallState) -> float:
        backoff = wait_exponential_jitter(initial = 1.0, max = 30.0)(state)
        error = state.outcome.exception() if state.outcome else None
        if isinstance(error, TransientHTTPError) and error.retry_after is not None:
            return max(backoff, error.retry_after)
        return backoff

    async def _request(self, url: str, params: Optional[Dict[str, Any]]) -> bytes:
        host = urlsplit(url).netloc
        await self.limiter.wait(host)
        self.request_count += 1
        try:
            response = await self.client.get(url, params = params)
        except (httpx.TimeoutException, httpx.TransportError) as e:
            raise TransientHTTPError(f"{host}: {type(e).__name__}: {e}") from e

        if response.status_code in RETRY_STATUS:
            raise TransientHTTPError(
                f"{host}: HTTP {response.status_code}", retry_after = _retry_after(response)
            )
        if response.status_code >= 400:
            raise RetrievalError(f"{host}: HTTP {response.status_code} for {url}")
        return response.content

    async def get(
        self,
        source: str,
        key: str,
        ext: str,
        url: str,
        params: Optional[Dict[str, Any]] = None,
    ) -> bytes:
        """
        Fetch one payload, from the fixture store when replaying.

        Args:
            source: fixture sub-directory ("openalex", "arxiv", "fulltext")
            key: text the fixture file name is derived from (query or URL)
            ext: fixture file extension

        Raises:
            RetrievalError: retries exhausted, non-retryable status, or missing fixture
        """
        if self.replay is not None:
            payload = self.replay.read(source, key, ext)
            if payload is None:
                raise RetrievalError(
                    f"No recorded {source} payload for {key!r} "
                    f"({self.replay.path_for(source, key, ext)})"
                )
            return payload

        try:
            async for attempt in AsyncRetrying(
                stop = stop_after_attempt(self.cfg.max_retries),
                wait = self._wait,
                retry = retry_if_exception_type(TransientHTTPError),
                reraise = True,
            ):
                with attempt:
                    payload = await self._request(url, params)
        except TransientHTTPError as e:
            raise RetrievalError(f"{source} request failed after retries: {e}") from e

        if self.recorder is not None:
            self.recorder.write(source, key, ext, payload)
        return payload

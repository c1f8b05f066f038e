"""
Full-text acquisition for the Top-1 paper.

Three ways in: a local text file (`provided`), a downloaded text payload
(`plain`), or a PDF run through an external extractor (`pdftotext`).
"""

import asyncio
import logging
import subprocess
import tempfile
from pathlib import Path
from typing import Optional, Union

from config.settings import RetrievalSettings
from src.errors import DocumentError, RetrievalError
from src.models import DocumentText, ExtractionMethod, RerankDecision
from .http import PayloadFetcher

logger = logging.getLogger(__name__)

PDF_MAGIC = b"%PDF"
EXTRACT_TIMEOUT = 120


def run_pdftotext(pdf_path: Path, command: str = "pdftotext") -> str:
    """
    Extract text from a PDF with the external extractor.

    Raises:
        DocumentError: extractor missing, failing or timing out
    """
    try:
        result = subprocess.run(
            [command, "-layout", "-enc", "UTF-8", str(pdf_path), "-"],
            capture_output = True,
            text = True,
            timeout = EXTRACT_TIMEOUT,
        )
    except FileNotFoundError as e:
        raise DocumentError(
            f"'{command}' not found; install poppler-utils or pass the text with --from-text"
        ) from e
    except subprocess.TimeoutExpired as e:
        raise DocumentError(f"'{command}' timed out on {pdf_path}") from e

    if result.returncode != 0:
        raise DocumentError(
            f"'{command}' failed on {pdf_path} (exit {result.returncode}): {result.stderr.strip()}"
        )
    return result.stdout


def first_line(text: str) -> str:
    for line in text.splitlines():
        if line.strip():
            return " ".join(line.split())
    return "unknown"


def check_length(text: str, locator: str, min_chars: int) -> None:
    if len(text.strip()) < min_chars:
        raise DocumentError(
            f"Extracted text from {locator} has {len(text.strip())} characters, "
            f"below the floor of {min_chars}"
        )


class FulltextAcquirer:
    """
    Resolves a rerank decision (or a local file) into DocumentText.

    Args:
        cfg: retrieval settings (extractor command, fixture/record dirs)
        min_chars: extracted text shorter than this is rejected
    """

    def __init__(
        self,
        cfg: RetrievalSettings,
        min_chars: int,
        fetcher: Optional[PayloadFetcher] = None,
    ):
        self.cfg = cfg
        self.min_chars = min_chars
        self.fetcher = fetcher or PayloadFetcher(cfg)

    async def _extract_pdf_bytes(self, payload: bytes) -> str:
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "paper.pdf"
            path.write_bytes(payload)
            return await asyncio.to_thread(run_pdftotext, path, self.cfg.pdftotext)

    async def read_local(self, path: Union[str, Path]) -> tuple[str, ExtractionMethod]:
        path = Path(path)
        if not path.is_file():
            raise DocumentError(f"Document file not found: {path}")
        if path.suffix.lower() == ".pdf":
            text = await asyncio.to_thread(run_pdftotext, path, self.cfg.pdftotext)
            return text, ExtractionMethod.PDFTOTEXT
        return path.read_text(encoding = "utf-8", errors = "replace"), ExtractionMethod.PROVIDED

    async def download(self, url: str) -> tuple[str, ExtractionMethod]:
        try:
            payload = await self.fetcher.get("fulltext", url, "", url)
        except RetrievalError as e:
            raise DocumentError(f"Download of {url} failed: {e}") from e

        if payload.lstrip()[:4] == PDF_MAGIC:
            return await self._extract_pdf_bytes(payload), ExtractionMethod.PDFTOTEXT
        return payload.decode("utf-8", errors = "replace"), ExtractionMethod.PLAIN

    async def acquire(
        self,
        decision: RerankDecision,
        local_path: Optional[Union[str, Path]] = None,
    ) -> DocumentText:
        """
        Fetch and extract the Top-1 paper.

        Raises:
            DocumentError: no locator, download/extraction failure, or text too short
        """
        if local_path is not None:
            text, method = await self.read_local(local_path)
            locator = str(local_path)
        else:
            locator = decision.record.fulltext_url
            if not locator:
                raise DocumentError(
                    f"No full-text locator for '{decision.paper_title}'; "
                    "download the paper and pass it with --from-text"
                )
            text, method = await self.download(locator)

        check_length(text, locator, self.min_chars)
        logger.info(
            f"Full text acquired: {len(text)} characters via {method.value}",
            extra = {"locator": locator, "method": method.value},
        )
        return DocumentText(
            text = text,
            locator = locator,
            method = method,
            paper_title = decision.paper_title,
            venue = decision.venue or "unknown",
            year = str(decision.year) if decision.year else "unknown",
            algorithm_name = decision.algorithm_name,
        )

    async def from_text(self, path: Union[str, Path]) -> DocumentText:
        """
        Build DocumentText from a user-supplied file, bypassing retrieval.

        The paper title falls back to the first non-empty line.
        """
        text, method = await self.read_local(path)
        check_length(text, str(path), self.min_chars)
        return DocumentText(
            text = text,
            locator = str(path),
            method = method,
            paper_title = first_line(text),
        )

    async def aclose(self) -> None:
        await self.fetcher.aclose()

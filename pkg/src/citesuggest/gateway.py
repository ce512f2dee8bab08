"""Orchestration of the metadata and citation sources.

Single place that merges, repairs, caches, and rations upstream access:
request coalescing (concurrent fetches of one DOI share one upstream
call), a global parallelism bound, windowed metadata loading with
background prefetch, and the large-publication skip for citation links.
"""

from __future__ import annotations

import datetime
import logging
import threading
import time
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass

from .cache import DEFAULT_TTL_SECONDS, RecordCache
from .doi import normalize_doi
from .errors import (
    CiteSuggestError,
    InvalidQuery,
    NotFound,
    PartialData,
    SourceUnavailable,
)
from .model import Publication
from .records import SourceRecord
from .repair import repair_fields
from .sources import CitationSource, MetadataSource, normalize_link

log = logging.getLogger(__name__)

SKIP_CITATION_THRESHOLD = 1000
METADATA_WINDOW = 50
SEARCH_LIMIT = 20


@dataclass(frozen=True)
class GatewayConfig:
    parallelism: int = 4
    ttl_seconds: float = DEFAULT_TTL_SECONDS
    skip_citation_threshold: int = SKIP_CITATION_THRESHOLD
    window_size: int = METADATA_WINDOW
    search_limit: int = SEARCH_LIMIT
    current_year: int | None = None

    def effective_year(self) -> int:
        if self.current_year is not None:
            return self.current_year
        return datetime.date.today().year


@dataclass(frozen=True)
class LoadResult:
    """Outcome of one DOI in a metadata batch."""

    doi: str
    publication: Publication | None
    error: str | None = None  # "not_found" | "unavailable" | None
    partial: bool = False


class SourceGateway:
    """Thread-safe facade over both sources plus the cache."""

    def __init__(
        self,
        metadata_source: MetadataSource,
        citation_source: CitationSource,
        cache: RecordCache | None = None,
        config: GatewayConfig = GatewayConfig(),
        clock=time.time,
    ):
        self._metadata = metadata_source
        self._citations = citation_source
        self._cache = cache or RecordCache(ttl_seconds=config.ttl_seconds)
        self._config = config
        self._clock = clock
        self._inflight: dict[str, Future] = {}
        self._inflight_lock = threading.Lock()
        self._upstream_slots = threading.BoundedSemaphore(config.parallelism)
        self._executor = ThreadPoolExecutor(
            max_workers=config.parallelism, thread_name_prefix="gateway"
        )

    @property
    def cache(self) -> RecordCache:
        return self._cache

    @property
    def config(self) -> GatewayConfig:
        return self._config

    def close(self) -> None:
        self._executor.shutdown(wait=False)

    # -- single publication ------------------------------------------------

    def fetch_publication(self, doi: str) -> Publication:
        return self.fetch_record(doi).to_publication()

    def fetch_record(self, doi: str) -> SourceRecord:
        """Merged, repaired record; coalesces concurrent fetches per DOI."""
        doi = normalize_doi(doi)
        cached = self._cache.get(doi)
        if cached is not None and cached.fresh:
            return cached.record

        with self._inflight_lock:
            future = self._inflight.get(doi)
            owner = future is None
            if owner:
                future = Future()
                self._inflight[doi] = future
        if not owner:
            return future.result()
        try:
            record = self._fetch_remote(
                doi, stale=cached.record if cached is not None else None
            )
            future.set_result(record)
            return record
        except BaseException as exc:
            future.set_exception(exc)
            raise
        finally:
            with self._inflight_lock:
                self._inflight.pop(doi, None)

    def _fetch_remote(self, doi: str, stale: SourceRecord | None) -> SourceRecord:
        metadata = None
        metadata_failed = False
        try:
            with self._upstream_slots:
                metadata = self._metadata.fetch_metadata(doi)
        except SourceUnavailable as exc:
            metadata_failed = True
            log.debug("metadata source failed for %s: %s", doi, exc)

        citing: list[str] = []
        cited_by: list[str] = []
        count = 0
        skipped = False
        citations_failed = False
        try:
            with self._upstream_slots:
                count = self._citations.count_cited_by(doi)
            if count >= self._config.skip_citation_threshold:
                skipped = True
            else:
                with self._upstream_slots:
                    citing, cited_by = self._citations.fetch_links(doi)
        except SourceUnavailable as exc:
            citations_failed = True
            log.debug("citation source failed for %s: %s", doi, exc)

        if metadata_failed and citations_failed:
            if stale is not None:
                return stale.as_stale()
            raise SourceUnavailable(f"both sources unavailable for {doi}")

        record = self._build_record(
            doi,
            metadata,
            citing,
            cited_by,
            count,
            metadata_ok=metadata is not None,
            citations_ok=not citations_failed,
            skipped=skipped,
        )
        if metadata_failed or citations_failed:
            raise PartialData(
                f"one source unavailable for {doi}", record=record
            )
        if (
            metadata is None
            and count == 0
            and not record.citing
            and not record.cited_by
        ):
            raise NotFound(f"no source knows {doi}")
        self._cache.put(record)
        return record

    def _build_record(
        self,
        doi: str,
        metadata: dict | None,
        citing: list[str],
        cited_by: list[str],
        count: int,
        metadata_ok: bool,
        citations_ok: bool,
        skipped: bool,
    ) -> SourceRecord:
        repaired = repair_fields(metadata or {}, doi, self._config.effective_year())
        citing_links = [
            link for link in (normalize_link(v) for v in citing) if link and link != doi
        ]
        cited_by_links = [
            link
            for link in (normalize_link(v) for v in cited_by)
            if link and link != doi
        ]
        citing_total = max(len(set(citing_links)), repaired.get("citing_count") or 0)
        cited_by_total = max(
            len(set(cited_by_links)), repaired.get("cited_by_count") or 0, count
        )
        return SourceRecord(
            doi=doi,
            metadata=repaired,
            citing=tuple(citing_links),
            cited_by=tuple(cited_by_links),
            citing_total=citing_total,
            cited_by_total=cited_by_total,
            fetched_at=self._clock(),
            metadata_ok=metadata_ok,
            citations_ok=citations_ok,
            citations_skipped_large=skipped,
        )

    # -- search --------------------------------------------------------------

    def search(self, query: str) -> list[Publication]:
        """Top metadata-source hits as link-free publications."""
        if not query or not query.strip():
            raise InvalidQuery("empty search query")
        with self._upstream_slots:
            results = self._metadata.search(query.strip(), self._config.search_limit)
        publications = []
        year = self._config.effective_year()
        for raw in results[: self._config.search_limit]:
            raw_doi = raw.get("doi") or ""
            link = normalize_link(raw_doi)
            if link is None:
                continue
            repaired = repair_fields(raw, link, year)
            publications.append(
                Publication(
                    doi=link,
                    title=repaired.get("title") or "",
                    authors=tuple(repaired.get("authors") or ()),
                    year=repaired.get("year"),
                    venue=repaired.get("venue"),
                    abstract=repaired.get("abstract"),
                    orcids=tuple(repaired.get("orcids") or ()),
                    n_citing=repaired.get("citing_count") or 0,
                    n_cited_by=repaired.get("cited_by_count") or 0,
                )
            )
        return publications

    # -- windowed loading ------------------------------------------------------

    def load_suggestion_metadata(
        self, dois: list[str], offset: int, limit: int | None = None
    ) -> list[LoadResult]:
        """Fetch the [offset, offset+limit) window; per-item failures
        become LoadResult errors instead of aborting the batch."""
        if offset < 0:
            raise ValueError("offset must be non-negative")
        window_size = self._config.window_size if limit is None else limit
        window = list(dois)[offset : offset + window_size]
        futures = [self._executor.submit(self._guarded_fetch, doi) for doi in window]
        return [future.result() for future in futures]

    def _guarded_fetch(self, doi: str) -> LoadResult:
        try:
            record = self.fetch_record(doi)
        except PartialData as exc:
            return LoadResult(
                doi=doi,
                publication=exc.record.to_publication() if exc.record else None,
                partial=True,
            )
        except NotFound:
            return LoadResult(doi=doi, publication=None, error="not_found")
        except SourceUnavailable:
            return LoadResult(doi=doi, publication=None, error="unavailable")
        return LoadResult(doi=doi, publication=record.to_publication())

    def prefetch_next(
        self, dois: list[str], offset: int, limit: int | None = None
    ) -> threading.Thread:
        """Warm the next window in the background; returns immediately.

        The returned thread is a daemon; callers may join it in tests.
        """
        window_size = self._config.window_size if limit is None else limit
        window = list(dois)[max(offset, 0) : max(offset, 0) + window_size]

        def warm():
            for doi in window:
                try:
                    self.fetch_record(doi)
                except CiteSuggestError as exc:
                    log.debug("prefetch skip %s: %s", doi, exc)

        thread = threading.Thread(target=warm, name="gateway-prefetch", daemon=True)
        thread.start()
        return thread

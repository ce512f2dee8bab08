"""Upstream data sources: metadata search/lookup and citation links.

Two HTTP implementations ship by default (a Crossref-style works API and
an OpenCitations-style citation index) plus a file-based fixture source
implementing both interfaces for offline and deterministic use.
"""

from __future__ import annotations

import json
import logging
import threading
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Protocol
from urllib.parse import quote

import requests

from .doi import normalize_doi
from .errors import MalformedDoi, SourceUnavailable

log = logging.getLogger(__name__)

RETRYABLE_STATUS = {429, 500, 502, 503, 504}


class MetadataSource(Protocol):
    def fetch_metadata(self, doi: str) -> dict | None:
        """Canonical metadata dict, or None when the DOI is unknown."""

    def search(self, query: str, limit: int) -> list[dict]:
        """Up to ``limit`` metadata dicts in source relevance order."""


class CitationSource(Protocol):
    def count_cited_by(self, doi: str) -> int:
        """Number of incoming citations known to the source."""

    def fetch_links(self, doi: str) -> tuple[list[str], list[str]]:
        """(outgoing citing list, incoming cited_by list) of DOIs."""


class _HttpBase:
    """Shared GET-with-retry plumbing for the HTTP sources."""

    def __init__(
        self,
        base_url: str,
        session: requests.Session | None = None,
        timeout: float = 15.0,
        retries: int = 3,
        backoff: float = 0.5,
    ):
        self._base_url = base_url.rstrip("/")
        self._session = session or requests.Session()
        self._timeout = timeout
        self._retries = retries
        self._backoff = backoff

    def _get_json(self, path: str, params: dict | None = None):
        """JSON body, None on 404, SourceUnavailable after retries."""
        url = f"{self._base_url}/{path}"
        last_error: Exception | None = None
        for attempt in range(self._retries + 1):
            if attempt:
                time.sleep(self._backoff * 2 ** (attempt - 1))
            try:
                response = self._session.get(url, params=params, timeout=self._timeout)
            except requests.RequestException as exc:
                last_error = exc
                continue
            if response.status_code == 404:
                return None
            if response.status_code in RETRYABLE_STATUS:
                last_error = SourceUnavailable(
                    f"{url} returned {response.status_code}"
                )
                continue
            try:
                response.raise_for_status()
                return response.json()
            except (requests.RequestException, ValueError) as exc:
                last_error = exc
                break
        raise SourceUnavailable(f"request to {url} failed: {last_error}")


class CrossrefStyleMetadataSource(_HttpBase):
    """Works-API metadata source (lookup by DOI, bibliographic search)."""

    def __init__(
        self,
        base_url: str = "https://api.crossref.org",
        mailto: str | None = None,
        **kwargs,
    ):
        super().__init__(base_url, **kwargs)
        self._mailto = mailto

    def _params(self, extra: dict | None = None) -> dict:
        params = dict(extra or {})
        if self._mailto:
            params["mailto"] = self._mailto
        return params

    def fetch_metadata(self, doi: str) -> dict | None:
        body = self._get_json(f"works/{quote(doi, safe='')}", self._params())
        if body is None:
            return None
        return map_work_message(body.get("message") or {})

    def search(self, query: str, limit: int) -> list[dict]:
        body = self._get_json(
            "works",
            self._params({"query.bibliographic": query, "rows": limit}),
        )
        if body is None:
            return []
        items = (body.get("message") or {}).get("items") or []
        return [map_work_message(item) for item in items[:limit]]


def map_work_message(message: dict) -> dict:
    """Canonical metadata dict from a works-API message object."""
    titles = message.get("title") or []
    venues = message.get("container-title") or []
    year = None
    for key in ("issued", "published-print", "published-online", "created"):
        parts = (message.get(key) or {}).get("date-parts") or []
        if parts and parts[0] and parts[0][0]:
            year = int(parts[0][0])
            break
    authors = []
    orcids = []
    for author in message.get("author") or []:
        name = " ".join(
            part for part in (author.get("given"), author.get("family")) if part
        ) or (author.get("name") or "")
        if not name:
            continue
        authors.append(name)
        orcid = author.get("ORCID")
        if orcid:
            orcid = orcid.rsplit("/", 1)[-1]
        orcids.append(orcid)
    counts = message.get("is-referenced-by-count")
    references = message.get("references-count", message.get("reference-count"))
    return {
        "doi": str(message.get("DOI") or "").lower(),
        "title": titles[0] if titles else "",
        "venue": venues[0] if venues else None,
        "year": year,
        "authors": authors,
        "orcids": orcids,
        "abstract": message.get("abstract"),
        "cited_by_count": int(counts) if counts is not None else None,
        "citing_count": int(references) if references is not None else None,
    }


class OpenCitationsStyleSource(_HttpBase):
    """Citation-index source: incoming/outgoing links and counts per DOI."""

    def __init__(
        self, base_url: str = "https://opencitations.net/index/api/v1", **kwargs
    ):
        super().__init__(base_url, **kwargs)

    def count_cited_by(self, doi: str) -> int:
        body = self._get_json(f"citation-count/{quote(doi, safe='/')}")
        if not body:
            return 0
        try:
            return int(body[0].get("count", 0))
        except (ValueError, TypeError, AttributeError, IndexError):
            return 0

    def fetch_links(self, doi: str) -> tuple[list[str], list[str]]:
        encoded = quote(doi, safe="/")
        references = self._get_json(f"references/{encoded}") or []
        citations = self._get_json(f"citations/{encoded}") or []
        citing = [row.get("cited", "") for row in references]
        cited_by = [row.get("citing", "") for row in citations]
        return (
            [value for value in citing if value],
            [value for value in cited_by if value],
        )


class FixtureSource:
    """Both source interfaces backed by one JSON document.

    Shape: {doi: {"metadata": {...} | null, "citing": [...],
    "cited_by": [...], "cited_by_count": int}}. The reserved top-level
    key "__searches__" may map query strings to DOI lists for recorded
    searches; other queries fall back to a deterministic title scan.
    Entries may set "fail_metadata"/"fail_citations" to simulate a source
    outage for that DOI.

    Instances count calls and track concurrency, so tests can assert
    coalescing and the parallelism bound.
    """

    def __init__(self, data: dict | str | Path, latency: float = 0.0):
        if not isinstance(data, dict):
            data = json.loads(Path(data).read_text(encoding="utf-8"))
        self._searches: dict[str, list[str]] = data.get("__searches__", {})
        self._pubs: dict[str, dict] = {}
        for raw_doi, entry in data.items():
            if raw_doi.startswith("__"):
                continue
            self._pubs[normalize_doi(raw_doi)] = entry
        self._latency = latency
        self._lock = threading.Lock()
        self.calls: list[tuple[str, str]] = []
        self._in_flight = 0
        self.max_concurrent = 0

    @contextmanager
    def _tracked(self, kind: str, doi: str):
        with self._lock:
            self.calls.append((kind, doi))
            self._in_flight += 1
            self.max_concurrent = max(self.max_concurrent, self._in_flight)
        try:
            if self._latency:
                time.sleep(self._latency)
            yield
        finally:
            with self._lock:
                self._in_flight -= 1

    def call_count(self, kind: str, doi: str | None = None) -> int:
        with self._lock:
            return sum(
                1
                for recorded_kind, recorded_doi in self.calls
                if recorded_kind == kind and (doi is None or recorded_doi == doi)
            )

    def fetch_metadata(self, doi: str) -> dict | None:
        with self._tracked("metadata", doi):
            entry = self._pubs.get(doi)
            if entry is None:
                return None
            if entry.get("fail_metadata"):
                raise SourceUnavailable(f"fixture metadata outage for {doi}")
            metadata = entry.get("metadata")
            if metadata is None:
                return None
            canonical = {
                "doi": doi,
                "title": "",
                "venue": None,
                "year": None,
                "authors": [],
                "orcids": [],
                "abstract": None,
                "cited_by_count": entry.get("cited_by_count"),
                "citing_count": entry.get("citing_count"),
            }
            canonical.update(metadata)
            return canonical

    def search(self, query: str, limit: int) -> list[dict]:
        with self._tracked("search", query):
            recorded = self._searches.get(query)
            if recorded is not None:
                dois = [normalize_doi(d) for d in recorded]
            else:
                tokens = [t for t in query.lower().split() if t]
                scored = []
                for doi, entry in self._pubs.items():
                    title = str((entry.get("metadata") or {}).get("title", "")).lower()
                    hits = sum(1 for token in tokens if token in title)
                    if hits:
                        scored.append((-hits, doi))
                dois = [doi for _, doi in sorted(scored)]
        return [
            metadata
            for doi in dois[:limit]
            if (metadata := self.fetch_metadata(doi)) is not None
        ]

    def count_cited_by(self, doi: str) -> int:
        with self._tracked("count", doi):
            entry = self._pubs.get(doi)
            if entry is None:
                return 0
            if entry.get("fail_citations"):
                raise SourceUnavailable(f"fixture citation outage for {doi}")
            return max(len(entry.get("cited_by", [])), entry.get("cited_by_count", 0))

    def fetch_links(self, doi: str) -> tuple[list[str], list[str]]:
        with self._tracked("links", doi):
            entry = self._pubs.get(doi)
            if entry is None:
                return [], []
            if entry.get("fail_citations"):
                raise SourceUnavailable(f"fixture citation outage for {doi}")
            return list(entry.get("citing", [])), list(entry.get("cited_by", []))


def normalize_link(value: str) -> str | None:
    """Normalized DOI or None for garbage link values from sources."""
    try:
        return normalize_doi(value)
    except MalformedDoi:
        return None

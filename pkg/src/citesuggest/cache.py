"""Two-layer record cache: process memory in front of JSON files on disk.

Disk entries are one file per DOI (percent-encoded file names) so the
store needs no index and survives process restarts. Freshness is judged
from the record's fetch timestamp against a TTL; stale records are still
returned, marked stale, so callers can fall back to them on outages.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path
from urllib.parse import quote, unquote

from .records import SourceRecord

log = logging.getLogger(__name__)

DEFAULT_TTL_SECONDS = 30 * 24 * 3600.0


@dataclass(frozen=True)
class CachedRecord:
    record: SourceRecord
    fresh: bool


class RecordCache:
    """Thread-safe DOI-keyed cache; the disk layer is optional."""

    def __init__(
        self,
        directory: str | Path | None = None,
        ttl_seconds: float = DEFAULT_TTL_SECONDS,
        clock=time.time,
    ):
        self._directory = Path(directory) if directory is not None else None
        self._ttl = ttl_seconds
        self._clock = clock
        self._memory: dict[str, SourceRecord] = {}
        self._lock = threading.Lock()
        if self._directory is not None:
            self._directory.mkdir(parents=True, exist_ok=True)

    def _path(self, doi: str) -> Path:
        assert self._directory is not None
        return self._directory / (quote(doi, safe="") + ".json")

    def _is_fresh(self, record: SourceRecord) -> bool:
        return self._clock() - record.fetched_at < self._ttl

    def get(self, doi: str) -> CachedRecord | None:
        with self._lock:
            record = self._memory.get(doi)
        if record is None and self._directory is not None:
            record = self._load(doi)
            if record is not None:
                with self._lock:
                    self._memory.setdefault(doi, record)
        if record is None:
            return None
        return CachedRecord(record=record, fresh=self._is_fresh(record))

    def put(self, record: SourceRecord) -> None:
        with self._lock:
            self._memory[record.doi] = record
        if self._directory is not None:
            self._store(record)

    def _load(self, doi: str) -> SourceRecord | None:
        path = self._path(doi)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
            return SourceRecord.from_dict(data)
        except FileNotFoundError:
            return None
        except (OSError, ValueError, KeyError) as exc:
            log.warning("discarding unreadable cache file %s: %s", path, exc)
            return None

    def _store(self, record: SourceRecord) -> None:
        path = self._path(record.doi)
        payload = json.dumps(
            record.to_dict(), sort_keys=True, ensure_ascii=False, separators=(",", ":")
        )
        temp = path.with_name(path.name + ".tmp")
        try:
            temp.write_text(payload, encoding="utf-8")
            os.replace(temp, path)
        except OSError as exc:
            log.warning("cache write failed for %s: %s", record.doi, exc)

    def clear(self) -> int:
        """Drop both layers; returns the number of disk entries removed."""
        with self._lock:
            self._memory.clear()
        removed = 0
        if self._directory is not None:
            for path in self._directory.glob("*.json"):
                try:
                    path.unlink()
                    removed += 1
                except OSError:
                    pass
        return removed

    def stats(self) -> dict:
        with self._lock:
            memory_entries = len(self._memory)
        disk_entries = 0
        dois: list[str] = []
        if self._directory is not None:
            for path in self._directory.glob("*.json"):
                disk_entries += 1
                dois.append(unquote(path.name[: -len(".json")]))
        return {
            "memory_entries": memory_entries,
            "disk_entries": disk_entries,
            "directory": str(self._directory) if self._directory else None,
            "ttl_seconds": self._ttl,
            "disk_dois": sorted(dois),
        }
